#pragma once

// Geometry synthesis for switched-stub tuners: stub lengths, lead-in/out and
// inter-stub main-line lengths are searched with seeded differential
// evolution against band, gain-floor and state-separation targets.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "plasmatune/differential_evolution.hpp"
#include "plasmatune/elements.hpp"
#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"
#include "plasmatune/plasma.hpp"
#include "plasmatune/tuner.hpp"

namespace plasmatune {

struct SynthTargets {
    double f_lo = 3.0e9;
    double f_hi = 3.93e9;
    double gain_floor_db = -2.5;
    double min_state_separation = 0.1; // Gamma-plane distance
    std::size_t stub_count = 2;
    /// Required share of (state, frequency) samples with gain >= -1 dB; 0 disables.
    double min_high_gain_fraction = 0.0;

    void validate() const {
        if (!(f_lo > 0.0) || !(f_hi > f_lo)) throw InvalidArgument("synthesis band needs 0 < f_lo < f_hi");
        if (!(gain_floor_db < 0.0)) throw InvalidArgument("gain floor must be negative dB");
        if (!(min_state_separation >= 0.0 && min_state_separation < 2.0))
            throw InvalidArgument("min_state_separation must lie in [0, 2)");
        if (stub_count < 1) throw InvalidArgument("stub_count must be at least 1");
        if (!(min_high_gain_fraction >= 0.0 && min_high_gain_fraction <= 1.0))
            throw InvalidArgument("min_high_gain_fraction must lie in [0, 1]");
    }
};

/// Search box for the geometry parameters (all lengths in metres).
struct SynthBounds {
    ParameterRange lead_in{1e-3, 30e-3};
    ParameterRange spacing{1e-3, 40e-3};
    ParameterRange lead_out{1e-3, 30e-3};
    ParameterRange stub_length{1e-3, 40e-3};

    void validate() const {
        for (const auto* r : {&lead_in, &spacing, &lead_out, &stub_length}) {
            if (!std::isfinite(r->lo) || !std::isfinite(r->hi) || !(r->lo >= 0.0) || !(r->hi >= r->lo))
                throw InvalidArgument("synthesis bounds must be finite non-negative lengths with lo <= hi");
        }
        if (!(stub_length.hi > 0.0)) throw InvalidArgument("stub length range must allow positive lengths");
    }

    /// Flattened box in the order used by TunerTemplate::build.
    std::vector<ParameterRange> box(std::size_t stub_count) const {
        std::vector<ParameterRange> b;
        b.push_back(lead_in);
        for (std::size_t i = 1; i < stub_count; ++i) b.push_back(spacing);
        b.push_back(lead_out);
        for (std::size_t i = 0; i < stub_count; ++i) b.push_back(stub_length);
        return b;
    }
};

/// Parts of the tuner that synthesis holds fixed.
struct TunerTemplate {
    SubstrateSpec substrate;
    double main_width = 1.6764e-3; // ~50 ohm on 30 mil TMM3
    double stub_width = 1.6764e-3;
    PlasmaCellModel cell;
    std::optional<LumpedCapSpec> dc_block = LumpedCapSpec{};
    std::optional<LumpedIndSpec> bias_choke = LumpedIndSpec{};
    std::optional<LumpedCapSpec> port_block;
    Termination termination = Termination::short_circuit;
    double z0 = kDefaultZ0;

    /// params = [lead_in, spacing_1 .. spacing_{n-1}, lead_out, stub_1 .. stub_n]
    TunerConfig build(std::span<const double> params, std::size_t stub_count) const {
        if (params.size() != 2 * stub_count + 1) throw InvalidArgument("parameter vector has the wrong length");
        TunerConfig cfg;
        cfg.z0 = z0;
        cfg.port_block = port_block;
        for (std::size_t i = 0; i <= stub_count; ++i) cfg.main_sections.push_back({main_width, params[i], substrate});
        for (std::size_t i = 0; i < stub_count; ++i) {
            StubBranch b;
            b.stub_line = {stub_width, params[stub_count + 1 + i], substrate};
            b.cell = cell;
            b.termination = termination;
            b.dc_block = dc_block;
            b.bias_choke = bias_choke;
            cfg.stubs.push_back(b);
        }
        cfg.assign_positions();
        return cfg;
    }
};

inline constexpr double kSeparationWeight = 10.0;
inline constexpr double kHighGainWeight = 10.0;
inline constexpr double kHighGainLevelDb = -1.0;
inline constexpr double kInfeasiblePenalty = 1e6;

/// Sum over the grid of hinge penalties: worst-state gain below the floor (dB)
/// plus weighted shortfall of the minimum pairwise Gamma distance, plus a
/// weighted shortfall of the share of samples at or above -1 dB when that
/// target is enabled. Zero iff every target is met at every grid point.
inline double objective(const TunerConfig& cfg, const SynthTargets& targets, const FrequencyGrid& grid) {
    if (grid.empty()) throw InvalidArgument("objective needs a non-empty grid");
    const double slack = 1e-9 * targets.f_hi;
    if (grid.front() > targets.f_lo + slack || grid.back() < targets.f_hi - slack)
        throw InvalidArgument("objective grid must span [f_lo, f_hi]");
    double total = 0.0;
    std::size_t samples = 0, high = 0;
    for (double f : grid) {
        try {
            const auto slice = evaluate_states(cfg, f);
            const double worst_db = to_db(worst_state_gain(slice));
            total += std::max(0.0, targets.gain_floor_db - worst_db);
            total += kSeparationWeight *
                     std::max(0.0, targets.min_state_separation - slice.metrics.min_pairwise_distance);
            for (const auto& p : slice.points) {
                ++samples;
                if (to_db(p.gain) >= kHighGainLevelDb) ++high;
            }
        } catch (const Error&) {
            total += kInfeasiblePenalty;
            samples += std::size_t{1} << cfg.stubs.size();
        }
    }
    if (targets.min_high_gain_fraction > 0.0) {
        const double share = static_cast<double>(high) / static_cast<double>(samples);
        total += kHighGainWeight * std::max(0.0, targets.min_high_gain_fraction - share);
    }
    return total;
}

struct SynthOptions {
    std::size_t max_evaluations = 20000;
    std::size_t population_factor = 15;
    double weight = 0.7;
    double crossover = 0.9;
    std::size_t grid_points = 21;
    double tolerance = 0.0; // objective at or below this counts as converged
    unsigned threads = 1;
};

struct SynthResult {
    TunerConfig config;
    std::vector<double> parameters;
    double objective_value = 0.0;
    bool converged = false;
    BandExtent band;
    double worst_gain_db = 0.0;
    double min_state_separation = 0.0; // min over grid of min pairwise distance
    double fraction_above_1db = 0.0;   // share of (state, frequency) samples with gain >= -1 dB
    std::size_t evaluations = 0;
    std::uint64_t seed = 0;
    std::vector<double> history;
};

inline FrequencyGrid synthesis_grid(const SynthTargets& t, std::size_t points) {
    return FrequencyGrid::linear(t.f_lo, t.f_hi, std::max<std::size_t>(points, 2));
}

/// Band, gain and spread figures for a finished design.
inline void summarize(SynthResult& r, const SynthTargets& targets, const FrequencyGrid& grid) {
    const auto report = coverage(r.config, grid);
    std::vector<double> worst;
    std::size_t above = 0, total = 0;
    r.worst_gain_db = std::numeric_limits<double>::infinity();
    r.min_state_separation = std::numeric_limits<double>::infinity();
    for (const auto& slice : report.slices) {
        const double w = to_db(worst_state_gain(slice));
        worst.push_back(w);
        r.worst_gain_db = std::min(r.worst_gain_db, w);
        r.min_state_separation = std::min(r.min_state_separation, slice.metrics.min_pairwise_distance);
        for (const auto& p : slice.points) {
            ++total;
            if (to_db(p.gain) >= kHighGainLevelDb) ++above;
        }
    }
    r.band = band_extent_from_gains(grid, worst, targets.gain_floor_db);
    r.fraction_above_1db = total ? static_cast<double>(above) / static_cast<double>(total) : 0.0;
}

inline SynthResult synthesize(const SynthTargets& targets, const SynthBounds& bounds, const TunerTemplate& tmpl,
                              std::uint64_t seed, const SynthOptions& options = {}) {
    targets.validate();
    bounds.validate();
    const std::size_t n = targets.stub_count;
    const auto box = bounds.box(n);
    const auto grid = synthesis_grid(targets, options.grid_points);

    auto f = [&](std::span<const double> x) { return objective(tmpl.build(x, n), targets, grid); };
    auto length = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    };
    DeOptions de;
    de.population_factor = options.population_factor;
    de.weight = options.weight;
    de.crossover = options.crossover;
    de.max_evaluations = options.max_evaluations;
    de.threads = options.threads;
    const auto best = differential_evolution(f, box, seed, de, length);

    SynthResult r;
    r.parameters = best.best;
    r.config = tmpl.build(best.best, n);
    r.objective_value = best.best_value;
    r.converged = best.best_value <= options.tolerance;
    r.evaluations = best.evaluations;
    r.seed = seed;
    r.history = best.history;
    summarize(r, targets, grid);
    return r;
}

struct StubMatch {
    TunerConfig config;       // stub at port 1 side, load line of length `distance` toward port 2
    double distance = 0.0;    // stub to load, m
    double stub_length = 0.0; // m
    double wavelength = 0.0;  // guided wavelength at f, m
    Complex gamma_in;
    std::size_t evaluations = 0;
};

/// Single shorted-stub match of `z_load` at one frequency. Both the load line
/// and the stub use `line`'s cross-section; the system reference is the line
/// impedance so the match is to the line itself.
inline StubMatch match_single_stub(Complex z_load, double f, const MicrostripSpec& line, std::uint64_t seed,
                                   DeOptions options = {}) {
    const auto mp = microstrip_params(line, f);
    const double lambda = mp.wavelength();
    const Complex gamma_load = reflection_from_impedance(z_load, mp.z0);

    auto build = [&](std::span<const double> x) {
        TunerConfig cfg;
        cfg.z0 = mp.z0;
        cfg.main_sections = {{line.width, 0.0, line.substrate}, {line.width, x[0], line.substrate}};
        StubBranch b;
        b.stub_line = {line.width, x[1], line.substrate};
        cfg.stubs.push_back(b);
        cfg.assign_positions();
        return cfg;
    };
    const SwitchState state = SwitchState::all_open(1);
    auto gamma_in = [&](std::span<const double> x) {
        return input_reflection(state_network(build(x), state, f), gamma_load);
    };
    auto obj = [&](std::span<const double> x) {
        try {
            return std::abs(gamma_in(x));
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const std::vector<ParameterRange> box{{0.0, lambda / 2.0}, {0.0, lambda / 2.0}};
    if (options.population == 0) options.population = 20;
    const auto best = differential_evolution(obj, box, seed, options);

    StubMatch m;
    m.config = build(best.best);
    m.distance = best.best[0];
    m.stub_length = best.best[1];
    m.wavelength = lambda;
    m.gamma_in = gamma_in(best.best);
    m.evaluations = best.evaluations;
    return m;
}

} // namespace plasmatune
