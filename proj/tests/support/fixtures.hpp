#pragma once

#include <complex>
#include <random>

#include "plasmatune/plasmatune.hpp"

namespace fixtures {

namespace pt = plasmatune;

inline pt::SubstrateSpec lossless_substrate() {
    pt::SubstrateSpec s;
    s.tan_delta = 0.0;
    s.conductivity = std::numeric_limits<double>::infinity();
    return s;
}

/// Width giving ~50 ohm on 30 mil TMM3 (w/h = 2.2).
inline constexpr double kWidth50 = 2.2 * 30.0 * pt::kMil;

inline pt::MicrostripSpec line(double length, pt::SubstrateSpec sub = pt::SubstrateSpec::rogers_tmm3(),
                               double width = kWidth50) {
    return {width, length, sub};
}

/// Line length giving `fraction` of a guided wavelength at f.
inline double guided_length(double fraction, double f, const pt::SubstrateSpec& sub, double width = kWidth50) {
    return fraction * pt::microstrip_params({width, 1.0, sub}, f).wavelength();
}

/// Asymmetric two-stub tuner: distinct lead-in/lead-out and stub lengths.
inline pt::TunerConfig two_stub_tuner(pt::SubstrateSpec sub = pt::SubstrateSpec::rogers_tmm3()) {
    pt::TunerConfig cfg;
    cfg.main_sections = {line(4e-3, sub), line(9e-3, sub), line(15e-3, sub)};
    for (double len : {6.5e-3, 11e-3}) {
        pt::StubBranch b;
        b.stub_line = line(len, sub);
        b.cell = pt::PlasmaCellModel{};
        b.dc_block = pt::LumpedCapSpec{};
        b.bias_choke = pt::LumpedIndSpec{};
        cfg.stubs.push_back(b);
    }
    cfg.assign_positions();
    return cfg;
}

/// Random passive S-matrix built from a lossy reciprocal cascade.
inline pt::SMatrix2 random_passive(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const pt::Complex zs(100.0 * u(rng), 200.0 * (u(rng) - 0.5));
    const pt::Complex zp(10.0 + 200.0 * u(rng), 200.0 * (u(rng) - 0.5));
    const pt::Complex gamma(0.5 * u(rng), 20.0 + 100.0 * u(rng));
    const auto m = pt::series_impedance(zs) * pt::tline_abcd(20.0 + 80.0 * u(rng), gamma, 0.05 * u(rng) + 1e-3) *
                   pt::shunt_branch(zp);
    return pt::abcd_to_s(m);
}

} // namespace fixtures
