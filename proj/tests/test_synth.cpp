#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "plasmatune/synth.hpp"

namespace pt = plasmatune;
using pt::Complex;

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += (v - 0.3) * (v - 0.3);
    return s;
}

// Geometry found by `plasmatune synth --config configs/synth_2stub.yaml` (seed 1).
const std::vector<double> kReferenceDesign{0.0010058776117299576, 0.0010039281979914729, 0.0010016940098128298,
                                           0.0063814573943959813, 0.0060979988196315938};

pt::SynthTargets design_targets() {
    pt::SynthTargets t;
    t.min_high_gain_fraction = 0.65;
    return t;
}

struct StubSolution {
    double d, l; // fractions of a wavelength
};

// Shunt shorted-stub match of z_load on a line of impedance z0, both solutions.
std::vector<StubSolution> analytic_single_stub(Complex z_load, double z0) {
    const double rl = z_load.real(), xl = z_load.imag();
    std::vector<StubSolution> out;
    const double root = std::sqrt(rl * ((z0 - rl) * (z0 - rl) + xl * xl) / z0);
    for (double sign : {1.0, -1.0}) {
        const double t = (xl + sign * root) / (rl - z0);
        double d = std::atan(t) / (2.0 * pt::kPi);
        if (d < 0.0) d += 0.5;
        const double b = (rl * rl * t - (z0 - xl * t) * (xl + z0 * t)) / (z0 * (rl * rl + std::pow(xl + z0 * t, 2)));
        // shorted stub must supply -jB: -j Y0 cot(beta l) = -j B
        double l = std::atan(1.0 / (z0 * b)) / (2.0 * pt::kPi);
        if (l < 0.0) l += 0.5;
        out.push_back({d, l});
    }
    return out;
}

} // namespace

TEST(DifferentialEvolution, FindsSphereMinimum) {
    const std::vector<pt::ParameterRange> box(3, {-1.0, 1.0});
    const auto r = pt::differential_evolution(sphere, box, 42);
    EXPECT_LT(r.best_value, 1e-10);
    for (double v : r.best) EXPECT_NEAR(v, 0.3, 1e-5);
    EXPECT_LE(r.evaluations, 20000u);
    EXPECT_EQ(r.history.size(), r.generations);
    EXPECT_TRUE(std::is_sorted(r.history.rbegin(), r.history.rend()));
}

TEST(DifferentialEvolution, DeterministicPerSeedAndThreadCount) {
    const std::vector<pt::ParameterRange> box(4, {-2.0, 2.0});
    pt::DeOptions o;
    o.max_evaluations = 3000;
    const auto a = pt::differential_evolution(sphere, box, 7, o);
    const auto b = pt::differential_evolution(sphere, box, 7, o);
    o.threads = 3;
    const auto c = pt::differential_evolution(sphere, box, 7, o);
    EXPECT_EQ(a.best, b.best);
    EXPECT_EQ(a.best, c.best);
    EXPECT_EQ(a.history, c.history);
    const auto d = pt::differential_evolution(sphere, box, 8, {.max_evaluations = 3000});
    EXPECT_NE(a.best, d.best);
}

TEST(DifferentialEvolution, StaysInsideBounds) {
    const std::vector<pt::ParameterRange> box{{0.5, 0.6}, {-3.0, -2.0}};
    std::size_t outside = 0;
    auto f = [&](std::span<const double> x) {
        if (!box[0].contains(x[0]) || !box[1].contains(x[1])) ++outside;
        return sphere(x);
    };
    const auto r = pt::differential_evolution(f, box, 3, {.max_evaluations = 2000});
    EXPECT_EQ(outside, 0u);
    EXPECT_NEAR(r.best[0], 0.5, 1e-4);
    EXPECT_NEAR(r.best[1], -2.0, 1e-4);
}

TEST(DifferentialEvolution, TiesPreferSmallerKey) {
    const std::vector<pt::ParameterRange> box{{0.0, 1.0}};
    auto flat = [](std::span<const double> x) { return std::max(0.0, x[0] - 0.5); };
    auto key = [](std::span<const double> x) { return x[0]; };
    const auto r = pt::differential_evolution(flat, box, 1, {.max_evaluations = 3000}, key);
    EXPECT_EQ(r.best_value, 0.0);
    EXPECT_LT(r.best[0], 0.01);
}

TEST(DifferentialEvolution, RejectsBadBounds) {
    EXPECT_THROW(pt::differential_evolution(sphere, std::vector<pt::ParameterRange>{}, 1), pt::InvalidArgument);
    EXPECT_THROW(pt::differential_evolution(sphere, std::vector<pt::ParameterRange>{{1.0, 0.0}}, 1),
                 pt::InvalidArgument);
}

TEST(Objective, ReferenceDesignMeetsTargets) {
    const auto t = design_targets();
    const auto cfg = pt::TunerTemplate{}.build(kReferenceDesign, 2);
    EXPECT_EQ(pt::objective(cfg, t, pt::synthesis_grid(t, 21)), 0.0);
}

TEST(Objective, NonNegativeAndMonotoneInTargets) {
    auto t = design_targets();
    t.gain_floor_db = -1.0;
    t.min_state_separation = 0.5;
    const auto grid = pt::synthesis_grid(t, 11);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1e-3, 30e-3);
    for (int i = 0; i < 30; ++i) {
        std::vector<double> x(5);
        for (auto& v : x) v = u(rng);
        const auto cfg = pt::TunerTemplate{}.build(x, 2);
        const double full = pt::objective(cfg, t, grid);
        EXPECT_GE(full, 0.0);
        auto relaxed = t;
        relaxed.min_state_separation = 0.0;
        EXPECT_LE(pt::objective(cfg, relaxed, grid), full);
        relaxed.min_high_gain_fraction = 0.0;
        EXPECT_LE(pt::objective(cfg, relaxed, grid), full);
    }
}

TEST(Objective, GridMustSpanBand) {
    const auto t = design_targets();
    const auto cfg = pt::TunerTemplate{}.build(kReferenceDesign, 2);
    EXPECT_THROW(pt::objective(cfg, t, pt::FrequencyGrid::linear(3.1e9, 3.93e9, 5)), pt::InvalidArgument);
}

TEST(SynthTargets, Validation) {
    pt::SynthTargets t;
    t.f_hi = t.f_lo;
    EXPECT_THROW(t.validate(), pt::InvalidArgument);
    t = {};
    t.gain_floor_db = 0.5;
    EXPECT_THROW(t.validate(), pt::InvalidArgument);
    t = {};
    t.min_state_separation = 2.0;
    EXPECT_THROW(t.validate(), pt::InvalidArgument);
    t = {};
    t.stub_count = 0;
    EXPECT_THROW(t.validate(), pt::InvalidArgument);
    pt::SynthBounds b;
    b.lead_in = {-1e-3, 1e-3};
    EXPECT_THROW(b.validate(), pt::InvalidArgument);
}

TEST(Synthesize, DeterministicAndSelfConsistent) {
    auto t = design_targets();
    pt::SynthOptions o;
    o.max_evaluations = 1500;
    o.grid_points = 11;
    const auto a = pt::synthesize(t, {}, {}, 5, o);
    const auto b = pt::synthesize(t, {}, {}, 5, o);
    EXPECT_EQ(a.parameters, b.parameters);
    EXPECT_EQ(a.objective_value, b.objective_value);
    EXPECT_EQ(a.history, b.history);
    EXPECT_EQ(a.seed, 5u);
    EXPECT_LE(a.evaluations, 1500u);
    // recompute from the returned configuration
    EXPECT_NEAR(pt::objective(a.config, t, pt::synthesis_grid(t, 11)), a.objective_value, 1e-9);
    EXPECT_EQ(a.converged, a.objective_value <= o.tolerance);
}

TEST(Synthesize, UnreachableTargetsFlaggedUnconverged) {
    pt::SynthTargets t;
    t.gain_floor_db = -0.01;
    t.min_state_separation = 1.5;
    pt::SynthOptions o;
    o.max_evaluations = 500;
    o.grid_points = 5;
    const auto r = pt::synthesize(t, {}, {}, 1, o);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.objective_value, 0.0);
}

// At the design budget a superset box should do at least as well on most seeds.
TEST(Synthesize, WiderBoundsDoNotHurtStatistically) {
    pt::SynthTargets t;
    t.f_hi = 4.3e9;
    t.gain_floor_db = -1.5;
    t.min_state_separation = 0.3;
    pt::SynthOptions o;
    o.grid_points = 5;
    pt::SynthBounds narrow;
    narrow.lead_in = narrow.spacing = narrow.lead_out = narrow.stub_length = {2e-3, 10e-3};
    const pt::SynthBounds wide;
    std::vector<double> vn, vw;
    int not_worse = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        vn.push_back(pt::synthesize(t, narrow, {}, seed, o).objective_value);
        vw.push_back(pt::synthesize(t, wide, {}, seed, o).objective_value);
        if (vw.back() <= vn.back() + 1e-9) ++not_worse;
    }
    std::sort(vn.begin(), vn.end());
    std::sort(vw.begin(), vw.end());
    EXPECT_GE(not_worse, 8);
    EXPECT_LE(vw[5], vn[5]);
}

TEST(SingleStub, MatchesAnalyticSolution) {
    const auto sub = fixtures::lossless_substrate();
    const pt::MicrostripSpec line{fixtures::kWidth50, 0.0, sub};
    const double f = 3e9;
    const Complex z_load(100.0, 0.0);
    const auto m = pt::match_single_stub(z_load, f, line, 11);
    EXPECT_LT(std::abs(m.gamma_in), 0.01);

    const double z0 = pt::microstrip_params(line, f).z0;
    const auto sols = analytic_single_stub(z_load, z0);
    double best = 1.0;
    for (const auto& s : sols)
        best = std::min(best, std::hypot(m.distance / m.wavelength - s.d, m.stub_length / m.wavelength - s.l));
    EXPECT_LT(best, 2e-3) << "d/lambda " << m.distance / m.wavelength << " l/lambda " << m.stub_length / m.wavelength;

    // the analytic geometry itself is a perfect match in this model
    for (const auto& s : sols) {
        pt::TunerConfig cfg = m.config;
        cfg.main_sections[1].length = s.d * m.wavelength;
        cfg.stubs[0].stub_line.length = s.l * m.wavelength;
        cfg.assign_positions();
        const auto sm = pt::state_network(cfg, pt::SwitchState::all_open(1), f);
        EXPECT_LT(std::abs(pt::input_reflection(sm, pt::reflection_from_impedance(z_load, z0))), 1e-9);
    }
}

TEST(SingleStub, ComplexLoad) {
    const auto sub = fixtures::lossless_substrate();
    const pt::MicrostripSpec line{fixtures::kWidth50, 0.0, sub};
    const auto m = pt::match_single_stub({30.0, -40.0}, 3.5e9, line, 2);
    EXPECT_LT(std::abs(m.gamma_in), 0.01);
}
