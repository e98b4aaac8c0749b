#pragma once

// Cold-plasma (Drude) material response and the lumped on/off equivalent
// circuits of a gas-discharge-tube switch.

#include <cmath>
#include <limits>
#include <optional>

#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"

namespace plasmatune {

/// CODATA 2018 exact/recommended values.
struct PhysicalConstants {
    static constexpr double e = 1.602176634e-19;      // C
    static constexpr double m = 9.1093837015e-31;     // kg
    static constexpr double eps0 = 8.8541878128e-12;  // F/m
};

struct DrudeParams {
    double n_e = 0.0;  // electron number density, 1/m^3
    double nu_m = 0.0; // electron-neutral collision frequency, 1/s

    /// Placeholder on-state plasma (uncalibrated). Gas species, pressure and
    /// density of the commercial tubes are unknown; override with fitted data.
    static DrudeParams uncalibrated_on_state() { return {1e20, 1e10}; }

    void validate() const {
        if (!(n_e >= 0.0)) throw InvalidArgument("electron density must be non-negative");
        if (!(nu_m >= 0.0)) throw InvalidArgument("collision frequency must be non-negative");
    }
};

/// Relative permittivity 1 - e^2 n_e / (eps0 m (w^2 + nu^2)).
inline double drude_permittivity(const DrudeParams& p, double omega) {
    if (!(omega > 0.0)) throw InvalidArgument("angular frequency must be positive");
    using K = PhysicalConstants;
    return 1.0 - K::e * K::e * p.n_e / (K::eps0 * K::m * (omega * omega + p.nu_m * p.nu_m));
}

/// Conductivity e^2 n_e nu / (m (w^2 + nu^2)) in S/m.
inline double drude_conductivity(const DrudeParams& p, double omega) {
    if (!(omega > 0.0)) throw InvalidArgument("angular frequency must be positive");
    using K = PhysicalConstants;
    return K::e * K::e * p.n_e * p.nu_m / (K::m * (omega * omega + p.nu_m * p.nu_m));
}

/// Density at which the collisionless permittivity crosses zero.
inline double critical_density(double omega) {
    using K = PhysicalConstants;
    return K::eps0 * K::m * omega * omega / (K::e * K::e);
}

enum class CellState { off, on };

struct CellGeometry {
    double gap = 1.0e-3;  // electrode spacing, m
    double area = 1.0e-5; // electrode area, m^2
};

/// Bulk resistance of a plasma column: gap / (sigma * area). +inf for sigma = 0.
inline double column_resistance(const CellGeometry& g, double sigma) {
    if (sigma == 0.0) return std::numeric_limits<double>::infinity();
    return g.gap / (sigma * g.area);
}

struct PlasmaCellModel {
    double c_off = 0.5e-12;    // electrode capacitance with the gas dark
    double r_on = 2.0;         // bulk plasma resistance when conducting
    double c_sheath = 10e-12;  // each of the two electrode sheaths
    CellGeometry geometry;
    double breakdown_voltage = 200.0;
    double bias_fraction = 1.10;
    double bias_current_limit = 100e-6;
    /// When set, the on-state resistance is derived from the Drude conductivity
    /// and the geometry instead of `r_on`.
    std::optional<DrudeParams> plasma;

    void validate() const {
        if (!(c_off > 0.0)) throw InvalidArgument("c_off must be positive");
        if (!(r_on > 0.0)) throw InvalidArgument("r_on must be positive");
        if (!(c_sheath > 0.0)) throw InvalidArgument("c_sheath must be positive");
        if (!(geometry.gap > 0.0) || !(geometry.area > 0.0))
            throw InvalidArgument("cell gap and area must be positive");
        if (plasma) plasma->validate();
    }

    double bias_voltage() const { return breakdown_voltage * bias_fraction; }

    double on_resistance(double f) const {
        if (!plasma) return r_on;
        return column_resistance(geometry, drude_conductivity(*plasma, 2.0 * kPi * f));
    }
};

/// On-state arm: bulk resistance in series with the two sheath capacitances.
inline Complex on_state_impedance(double r_bulk, double c_sheath, double f) {
    const double w = 2.0 * kPi * f;
    return {r_bulk, -2.0 / (w * c_sheath)};
}

inline Complex off_state_impedance(double c_off, double f) {
    const double w = 2.0 * kPi * f;
    return {0.0, -1.0 / (w * c_off)};
}

inline Complex switch_impedance(const PlasmaCellModel& cell, CellState state, double f) {
    if (!(f > 0.0)) throw InvalidArgument("frequency must be positive");
    if (state == CellState::off) return off_state_impedance(cell.c_off, f);
    return on_state_impedance(cell.on_resistance(f), cell.c_sheath, f);
}

/// Switch while the discharge builds up or decays. `fraction` is the plasma
/// conductivity relative to the steady on state (n_e(t) / n_e_on, since the
/// Drude conductivity is linear in n_e). The bulk resistance scales as
/// r_on / fraction and the electrode capacitance fades as (1 - fraction), so
/// the circuit is the off state at 0 and the on state at 1.
inline Complex transitional_switch_impedance(const PlasmaCellModel& cell, double fraction, double f) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("conductivity fraction must lie in [0, 1]");
    if (fraction == 0.0) return switch_impedance(cell, CellState::off, f);
    if (fraction == 1.0) return switch_impedance(cell, CellState::on, f);
    const double w = 2.0 * kPi * f;
    const Complex y_on = 1.0 / on_state_impedance(cell.on_resistance(f) / fraction, cell.c_sheath, f);
    const Complex y_off(0.0, (1.0 - fraction) * w * cell.c_off);
    return 1.0 / (y_on + y_off);
}

} // namespace plasmatune
