#pragma once

// Frequency-dependent models of the board-level primitives: microstrip lines,
// terminated stubs, chip capacitors and RF chokes.

#include <cmath>
#include <limits>

#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"

namespace plasmatune {

inline constexpr double kMil = 25.4e-6;
inline constexpr double kMu0 = 1.25663706212e-6;
inline constexpr double kEta0 = 376.730313668;
inline constexpr double kCopperConductivity = 5.8e7;

struct SubstrateSpec {
    double eps_r = 3.45;
    double tan_delta = 0.0020;
    double height = 30.0 * kMil;
    double copper_thickness = 17.5e-6;
    double conductivity = kCopperConductivity; // S/m, +inf for a perfect conductor

    /// Rogers TMM3, 30 mil, half-ounce copper.
    static SubstrateSpec rogers_tmm3() { return {}; }

    void validate() const {
        if (!(eps_r > 1.0)) throw InvalidArgument("substrate eps_r must exceed 1");
        if (!(tan_delta >= 0.0)) throw InvalidArgument("substrate tan_delta must be non-negative");
        if (!(height > 0.0)) throw InvalidArgument("substrate height must be positive");
        if (!(copper_thickness >= 0.0)) throw InvalidArgument("copper thickness must be non-negative");
        if (!(conductivity > 0.0)) throw InvalidArgument("conductor conductivity must be positive");
    }
};

struct MicrostripSpec {
    double width = 0.0;
    double length = 0.0;
    SubstrateSpec substrate;

    void validate() const {
        substrate.validate();
        if (!(width > 0.0)) throw InvalidArgument("microstrip width must be positive");
        if (!(length >= 0.0)) throw InvalidArgument("microstrip length must be non-negative");
    }
};

struct MicrostripParams {
    double z0;      // ohms
    double eps_eff; // dimensionless
    double alpha;   // Np/m, dielectric + conductor
    double beta;    // rad/m

    Complex gamma() const { return {alpha, beta}; }
    double wavelength() const { return 2.0 * kPi / beta; }
};

namespace detail {

// Hammerstad-Jensen zero-thickness impedance in air.
inline double hj_z01(double u) {
    const double f = 6.0 + (2.0 * kPi - 6.0) * std::exp(-std::pow(30.666 / u, 0.7528));
    return kEta0 / (2.0 * kPi) * std::log(f / u + std::sqrt(1.0 + 4.0 / (u * u)));
}

inline double hj_eps_eff(double u, double er) {
    const double u4 = u * u * u * u;
    const double a = 1.0 + std::log((u4 + std::pow(u / 52.0, 2)) / (u4 + 0.432)) / 49.0 +
                     std::log(1.0 + std::pow(u / 18.1, 3)) / 18.7;
    const double b = 0.564 * std::pow((er - 0.9) / (er + 3.0), 0.053);
    return (er + 1.0) / 2.0 + (er - 1.0) / 2.0 * std::pow(1.0 + 10.0 / u, -a * b);
}

} // namespace detail

/// Quasi-static Hammerstad-Jensen analysis with strip-thickness correction.
/// Loss: dielectric term from tan_delta plus skin-effect conductor loss Rs/(Z0*w).
inline MicrostripParams microstrip_params(const MicrostripSpec& spec, double f) {
    if (!(f > 0.0)) throw InvalidArgument("frequency must be positive");
    spec.validate();
    const auto& sub = spec.substrate;
    const double er = sub.eps_r;
    const double u = spec.width / sub.height;

    double du1 = 0.0;
    double dur = 0.0;
    if (sub.copper_thickness > 0.0) {
        const double tn = sub.copper_thickness / sub.height;
        const double coth = 1.0 / std::tanh(std::sqrt(6.517 * u));
        du1 = tn / kPi * std::log(1.0 + 4.0 * std::exp(1.0) / (tn * coth * coth));
        dur = 0.5 * (1.0 + 1.0 / std::cosh(std::sqrt(er - 1.0))) * du1;
    }
    const double u1 = u + du1;
    const double ur = u + dur;

    MicrostripParams p{};
    const double eer = detail::hj_eps_eff(ur, er);
    p.z0 = detail::hj_z01(ur) / std::sqrt(eer);
    p.eps_eff = eer * std::pow(detail::hj_z01(u1) / detail::hj_z01(ur), 2);

    const double k0 = 2.0 * kPi * f / kSpeedOfLight;
    p.beta = k0 * std::sqrt(p.eps_eff);
    const double alpha_d =
        k0 * er * (p.eps_eff - 1.0) * sub.tan_delta / (2.0 * std::sqrt(p.eps_eff) * (er - 1.0));
    double alpha_c = 0.0;
    if (std::isfinite(sub.conductivity)) {
        const double rs = std::sqrt(kPi * f * kMu0 / sub.conductivity);
        alpha_c = rs / (p.z0 * spec.width);
    }
    p.alpha = alpha_d + alpha_c;
    return p;
}

inline AbcdMatrix line_abcd(const MicrostripSpec& spec, double f) {
    const auto p = microstrip_params(spec, f);
    return tline_abcd(p.z0, p.gamma(), spec.length);
}

/// Input impedance of a line shorted at its far end: Z0 tanh(gamma l).
inline Complex shorted_stub_impedance(const MicrostripSpec& spec, double f) {
    const auto p = microstrip_params(spec, f);
    return p.z0 * std::tanh(p.gamma() * spec.length);
}

/// Input impedance of an open-ended line: Z0 coth(gamma l). Infinite at zero length.
inline Complex open_stub_impedance(const MicrostripSpec& spec, double f) {
    const auto p = microstrip_params(spec, f);
    const Complex t = std::tanh(p.gamma() * spec.length);
    if (t == Complex(0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
    return p.z0 / t;
}

enum class Orientation { series, shunt };

inline AbcdMatrix place(Complex z, Orientation orientation) {
    return orientation == Orientation::series ? series_impedance(z) : shunt_branch(z);
}

/// Chip capacitor with series parasitic inductance and resistance.
struct LumpedCapSpec {
    double capacitance = 7.5e-12;
    double esl = 0.07e-9; // SRF ~ 6.95 GHz with 7.5 pF
    double esr = 0.1;

    void validate() const {
        if (!(capacitance > 0.0)) throw InvalidArgument("capacitance must be positive");
        if (!(esl >= 0.0) || !(esr >= 0.0)) throw InvalidArgument("capacitor parasitics must be non-negative");
    }

    /// Self-resonant frequency; +inf without parasitic inductance.
    double srf() const {
        if (esl == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (2.0 * kPi * std::sqrt(esl * capacitance));
    }

    Complex impedance(double f) const {
        if (!(f > 0.0)) throw InvalidArgument("frequency must be positive");
        const double w = 2.0 * kPi * f;
        return {esr, w * esl - 1.0 / (w * capacitance)};
    }
};

/// Inductor with series loss resistance and parallel winding capacitance.
struct LumpedIndSpec {
    double inductance = 15e-9;
    double c_par = 0.05e-12; // SRF ~ 5.8 GHz with 15 nH
    double r_series = 0.2;

    void validate() const {
        if (!(inductance > 0.0)) throw InvalidArgument("inductance must be positive");
        if (!(c_par >= 0.0) || !(r_series >= 0.0)) throw InvalidArgument("inductor parasitics must be non-negative");
    }

    double srf() const {
        if (c_par == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (2.0 * kPi * std::sqrt(inductance * c_par));
    }

    Complex impedance(double f) const {
        if (!(f > 0.0)) throw InvalidArgument("frequency must be positive");
        const double w = 2.0 * kPi * f;
        const Complex zl(r_series, w * inductance);
        if (c_par == 0.0) return zl;
        const Complex zc(0.0, -1.0 / (w * c_par));
        return parallel(zl, zc);
    }
};

inline AbcdMatrix capacitor_abcd(const LumpedCapSpec& spec, double f, Orientation orientation) {
    spec.validate();
    return place(spec.impedance(f), orientation);
}

inline AbcdMatrix inductor_abcd(const LumpedIndSpec& spec, double f, Orientation orientation) {
    spec.validate();
    return place(spec.impedance(f), orientation);
}

} // namespace plasmatune
