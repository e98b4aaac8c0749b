#pragma once

// Switched-stub tuner: topology, switch-state encoding, per-state networks,
// power gain, Smith-chart coverage and band extent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plasmatune/elements.hpp"
#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"
#include "plasmatune/plasma.hpp"

namespace plasmatune {

enum class Termination { short_circuit, open_circuit };

/// One switched branch: cell -> (choke to RF ground) -> DC block -> stub.
/// A branch without a cell is hard-wired to the line in every state.
struct StubBranch {
    MicrostripSpec stub_line;
    std::optional<PlasmaCellModel> cell;
    Termination termination = Termination::short_circuit;
    std::optional<LumpedCapSpec> dc_block;
    std::optional<LumpedIndSpec> bias_choke;
    double position = 0.0; // along the main line from port 1, m
};

/// Main line split into stubs.size() + 1 sections; stub i sits between
/// section i and section i + 1. Optional DC blocks sit in series at both ports.
struct TunerConfig {
    std::vector<MicrostripSpec> main_sections;
    std::vector<StubBranch> stubs;
    double z0 = kDefaultZ0;
    std::optional<LumpedCapSpec> port_block;

    std::size_t stub_count() const { return stubs.size(); }

    double main_line_length() const {
        double total = 0.0;
        for (const auto& s : main_sections) total += s.length;
        return total;
    }

    /// Main line plus all stub lengths.
    double total_line_length() const {
        double total = main_line_length();
        for (const auto& s : stubs) total += s.stub_line.length;
        return total;
    }

    /// Recompute stub positions from the section lengths.
    void assign_positions() {
        double pos = 0.0;
        for (std::size_t i = 0; i < stubs.size() && i < main_sections.size(); ++i) {
            pos += main_sections[i].length;
            stubs[i].position = pos;
        }
    }

    void validate() const {
        if (!(z0 > 0.0)) throw InvalidArgument("tuner reference impedance must be positive");
        if (stubs.empty()) throw InvalidArgument("tuner needs at least one stub");
        if (main_sections.size() != stubs.size() + 1)
            throw InvalidArgument("tuner needs stub count + 1 main-line sections");
        double pos = 0.0;
        for (std::size_t i = 0; i < stubs.size(); ++i) {
            pos += main_sections[i].length;
            if (!near(stubs[i].position, pos, 1e-9))
                throw InvalidArgument("stub positions must coincide with section boundaries");
            if (i > 0 && stubs[i].position < stubs[i - 1].position)
                throw InvalidArgument("stubs must be ordered by increasing position");
        }
        for (const auto& s : main_sections) s.validate();
        for (const auto& b : stubs) {
            b.stub_line.validate();
            if (b.cell) b.cell->validate();
            if (b.dc_block) b.dc_block->validate();
            if (b.bias_choke) b.bias_choke->validate();
        }
        if (port_block) port_block->validate();
    }
};

/// n-bit switch word. The most significant bit is the stub closest to port 1;
/// 1 means the switch is closed (plasma on).
class SwitchState {
public:
    static constexpr std::size_t kMaxWidth = 30;

    SwitchState() = default;
    SwitchState(std::uint32_t bits, std::size_t width) : bits_(bits), width_(width) {
        if (width == 0 || width > kMaxWidth) throw StateWidthError("switch state width must be 1..30");
        if (bits >> width) throw StateWidthError("switch state has bits beyond its width");
    }

    /// Parse a word such as "01"; the first character is the stub nearest port 1.
    static SwitchState parse(std::string_view text) {
        if (text.empty() || text.size() > kMaxWidth) throw StateWidthError("switch state must have 1..30 bits");
        std::uint32_t bits = 0;
        for (char ch : text) {
            if (ch != '0' && ch != '1') throw InvalidArgument("switch state must contain only 0 and 1");
            bits = (bits << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        return {bits, text.size()};
    }

    static SwitchState all_open(std::size_t width) { return {0u, width}; }

    std::uint32_t bits() const { return bits_; }
    std::size_t width() const { return width_; }

    /// Whether the switch of stub `index` (0 = closest to port 1) is closed.
    bool closed(std::size_t index) const {
        if (index >= width_) throw StateWidthError("stub index outside switch state");
        return (bits_ >> (width_ - 1 - index)) & 1u;
    }

    std::string to_string() const {
        std::string s(width_, '0');
        for (std::size_t i = 0; i < width_; ++i)
            if (closed(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const SwitchState&, const SwitchState&) = default;

private:
    std::uint32_t bits_ = 0;
    std::size_t width_ = 0;
};

/// All 2^n states in ascending binary order.
inline std::vector<SwitchState> enumerate_states(std::size_t stub_count) {
    if (stub_count == 0 || stub_count > 20) throw StateWidthError("state enumeration supports 1..20 stubs");
    std::vector<SwitchState> out;
    out.reserve(std::size_t{1} << stub_count);
    for (std::uint32_t b = 0; b < (1u << stub_count); ++b) out.emplace_back(b, stub_count);
    return out;
}

inline Complex stub_termination_impedance(const StubBranch& stub, double f) {
    return stub.termination == Termination::short_circuit ? shorted_stub_impedance(stub.stub_line, f)
                                                          : open_stub_impedance(stub.stub_line, f);
}

/// Branch impedance seen from the main line for a given switch impedance.
inline Complex branch_impedance_with_switch(const StubBranch& stub, Complex z_switch, double f) {
    Complex tail = stub_termination_impedance(stub, f);
    if (stub.dc_block && !is_infinite(tail)) tail += stub.dc_block->impedance(f);
    Complex node = tail;
    if (stub.bias_choke) node = parallel(stub.bias_choke->impedance(f), tail);
    if (is_infinite(z_switch) || is_infinite(node)) return {std::numeric_limits<double>::infinity(), 0.0};
    return z_switch + node;
}

inline Complex branch_input_impedance(const StubBranch& stub, bool closed, double f) {
    if (!(f > 0.0)) throw InvalidArgument("frequency must be positive");
    const Complex z_switch =
        stub.cell ? switch_impedance(*stub.cell, closed ? CellState::on : CellState::off, f) : Complex(0.0);
    return branch_impedance_with_switch(stub, z_switch, f);
}

namespace detail {

inline AbcdMatrix shunt_of(Complex z) {
    if (z == Complex(0.0)) throw DegenerateNetworkError("stub branch is an ideal short on the main line");
    return shunt_branch(z);
}

} // namespace detail

/// ABCD of the tuner given each branch's impedance.
inline AbcdMatrix tuner_abcd(const TunerConfig& cfg, std::span<const Complex> branch_z, double f) {
    if (branch_z.size() != cfg.stubs.size()) throw StateWidthError("one branch impedance per stub required");
    AbcdMatrix m;
    if (cfg.port_block) m *= series_impedance(cfg.port_block->impedance(f));
    m *= line_abcd(cfg.main_sections[0], f);
    for (std::size_t i = 0; i < cfg.stubs.size(); ++i) {
        m *= detail::shunt_of(branch_z[i]);
        m *= line_abcd(cfg.main_sections[i + 1], f);
    }
    if (cfg.port_block) m *= series_impedance(cfg.port_block->impedance(f));
    return m;
}

inline SMatrix2 state_network(const TunerConfig& cfg, const SwitchState& state, double f) {
    if (state.width() != cfg.stubs.size())
        throw StateWidthError("switch state has " + std::to_string(state.width()) + " bits but tuner has " +
                              std::to_string(cfg.stubs.size()) + " stubs");
    std::vector<Complex> z(cfg.stubs.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = branch_input_impedance(cfg.stubs[i], state.closed(i), f);
    return abcd_to_s(tuner_abcd(cfg, z, f), cfg.z0);
}

/// The main line alone (all stubs removed), including port blocks.
inline SMatrix2 bare_line_network(const TunerConfig& cfg, double f) {
    AbcdMatrix m;
    if (cfg.port_block) m *= series_impedance(cfg.port_block->impedance(f));
    for (const auto& s : cfg.main_sections) m *= line_abcd(s, f);
    if (cfg.port_block) m *= series_impedance(cfg.port_block->impedance(f));
    return abcd_to_s(m, cfg.z0);
}

/// Power delivered to a matched load over power delivered into port 1.
inline double power_gain(const SMatrix2& s) {
    const double r = std::norm(s.s11);
    if (r >= 1.0) throw TotalReflectionError("power gain undefined for |s11| >= 1");
    return std::norm(s.s21) / (1.0 - r);
}

inline double to_db(double power_ratio) { return 10.0 * std::log10(power_ratio); }

struct StatePoint {
    SwitchState state;
    Complex gamma;     // input reflection with matched termination
    double gain = 0.0; // linear power gain
};

struct CoverageMetrics {
    double min_pairwise_distance = 0.0;
    double max_pairwise_distance = 0.0;
    double hull_area = 0.0;
};

struct FrequencyCoverage {
    double frequency = 0.0;
    std::vector<StatePoint> points;
    CoverageMetrics metrics;
};

struct CoverageReport {
    std::vector<FrequencyCoverage> slices;
};

/// Area of the convex hull of points in the complex plane (monotone chain).
inline double convex_hull_area(std::span<const Complex> pts) {
    if (pts.size() < 3) return 0.0;
    std::vector<Complex> p(pts.begin(), pts.end());
    std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    auto cross = [](Complex o, Complex a, Complex b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<Complex> hull(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i];
        const Complex b = hull[(i + 1) % hull.size()];
        area += a.real() * b.imag() - b.real() * a.imag();
    }
    return std::abs(area) / 2.0;
}

inline CoverageMetrics coverage_metrics(std::span<const Complex> pts) {
    CoverageMetrics m;
    if (pts.size() < 2) return m;
    m.min_pairwise_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = std::abs(pts[i] - pts[j]);
            m.min_pairwise_distance = std::min(m.min_pairwise_distance, d);
            m.max_pairwise_distance = std::max(m.max_pairwise_distance, d);
        }
    }
    m.hull_area = convex_hull_area(pts);
    return m;
}

/// Every state at one frequency, in ascending state order.
inline FrequencyCoverage evaluate_states(const TunerConfig& cfg, double f) {
    FrequencyCoverage slice;
    slice.frequency = f;
    std::vector<Complex> gammas;
    for (const auto& st : enumerate_states(cfg.stubs.size())) {
        const SMatrix2 s = state_network(cfg, st, f);
        slice.points.push_back({st, s.s11, power_gain(s)});
        gammas.push_back(s.s11);
    }
    slice.metrics = coverage_metrics(gammas);
    return slice;
}

inline CoverageReport coverage(const TunerConfig& cfg, const FrequencyGrid& grid) {
    CoverageReport report;
    report.slices.reserve(grid.size());
    for (double f : grid) report.slices.push_back(evaluate_states(cfg, f));
    return report;
}

inline double worst_state_gain(const FrequencyCoverage& slice) {
    double g = std::numeric_limits<double>::infinity();
    for (const auto& p : slice.points) g = std::min(g, p.gain);
    return g;
}

struct BandExtent {
    bool empty = true;
    double f_lo = 0.0;
    double f_hi = 0.0;
    double fractional_bw = 0.0;
};

/// Widest contiguous run of grid points whose worst-state gain meets the floor.
inline BandExtent band_extent_from_gains(const FrequencyGrid& grid, std::span<const double> worst_gain_db,
                                         double gain_floor_db) {
    BandExtent best;
    std::size_t i = 0;
    while (i < grid.size()) {
        if (worst_gain_db[i] < gain_floor_db) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < grid.size() && worst_gain_db[j + 1] >= gain_floor_db) ++j;
        const double span_hz = grid[j] - grid[i];
        if (best.empty || span_hz > best.f_hi - best.f_lo) {
            best.empty = false;
            best.f_lo = grid[i];
            best.f_hi = grid[j];
        }
        i = j + 1;
    }
    if (!best.empty) best.fractional_bw = (best.f_hi - best.f_lo) / ((best.f_hi + best.f_lo) / 2.0);
    return best;
}

inline BandExtent band_extent(const TunerConfig& cfg, const FrequencyGrid& grid, double gain_floor_db) {
    if (!(gain_floor_db < 0.0)) throw InvalidArgument("gain floor must be negative dB");
    std::vector<double> worst(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) worst[i] = to_db(worst_state_gain(evaluate_states(cfg, grid[i])));
    return band_extent_from_gains(grid, worst, gain_floor_db);
}

} // namespace plasmatune
