#pragma once

// Quasi-static state-change transients. The discharge density relaxes
// exponentially; at each time step the tuner is solved in the frequency
// domain at the CW frequency (the RF period is orders of magnitude shorter
// than the density time constants).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"
#include "plasmatune/plasma.hpp"
#include "plasmatune/tuner.hpp"

namespace plasmatune {

struct TransientSpec {
    double tau_on = 183e-9;  // density rise time constant, s
    double tau_off = 183e-9; // density decay time constant, s
    double n_e_on = 1e20;    // steady on-state density, 1/m^3
    double f_cw = 3e9;       // CW stimulus, Hz
    double t_end = 2e-6;
    double dt = 1e-9;
    double settle_fraction = 0.05;

    void validate() const {
        if (!(tau_on > 0.0) || !(tau_off > 0.0)) throw InvalidArgument("time constants must be positive");
        if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
        if (!(t_end >= dt)) throw InvalidArgument("t_end must cover at least one step");
        if (!(n_e_on >= 0.0)) throw InvalidArgument("on-state density must be non-negative");
        if (!(f_cw > 0.0)) throw InvalidArgument("CW frequency must be positive");
        if (!(settle_fraction > 0.0 && settle_fraction < 1.0))
            throw InvalidArgument("settle_fraction must lie in (0, 1)");
        const double tau_min = std::min(tau_on, tau_off);
        if (dt > tau_min / 10.0 * (1.0 + 1e-12))
            throw StepSizeError("time step exceeds tau_min / 10");
    }

    /// Sample times 0, dt, ..., up to t_end.
    std::vector<double> sample_times() const {
        const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
        std::vector<double> t(n + 1);
        for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) * dt;
        return t;
    }
};

/// Direction of a switch transition.
enum class Transition { on, off };

inline double density_trajectory(const TransientSpec& spec, Transition transition, double t) {
    if (!(t >= 0.0)) throw InvalidArgument("time must be non-negative");
    if (transition == Transition::on) return spec.n_e_on * -std::expm1(-t / spec.tau_on);
    return spec.n_e_on * std::exp(-t / spec.tau_off);
}

struct Trace {
    std::vector<double> time;
    std::vector<double> value;

    std::size_t size() const { return time.size(); }
};

/// Density samples over the configured time axis.
inline Trace density_trace(const TransientSpec& spec, Transition transition) {
    spec.validate();
    Trace tr;
    tr.time = spec.sample_times();
    tr.value.reserve(tr.time.size());
    for (double t : tr.time) tr.value.push_back(density_trajectory(spec, transition, t));
    return tr;
}

/// |s21| at f_cw while the switches that differ between `from` and `to` change
/// state. Each transitioning cell follows its density trajectory through
/// transitional_switch_impedance; the others stay at their steady state.
inline Trace envelope_trace(const TunerConfig& cfg, const SwitchState& from, const SwitchState& to,
                            const TransientSpec& spec) {
    spec.validate();
    if (from.width() != cfg.stubs.size() || to.width() != cfg.stubs.size())
        throw StateWidthError("transition states must match the stub count");
    const double f = spec.f_cw;
    const std::size_t n = cfg.stubs.size();

    std::vector<Complex> z_steady(n);
    for (std::size_t i = 0; i < n; ++i) z_steady[i] = branch_input_impedance(cfg.stubs[i], from.closed(i), f);

    Trace tr;
    tr.time = spec.sample_times();
    tr.value.reserve(tr.time.size());
    std::vector<Complex> z(n);
    for (double t : tr.time) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& stub = cfg.stubs[i];
            if (from.closed(i) == to.closed(i) || !stub.cell) {
                z[i] = z_steady[i];
                continue;
            }
            const Transition dir = to.closed(i) ? Transition::on : Transition::off;
            const double fraction =
                spec.n_e_on > 0.0 ? std::clamp(density_trajectory(spec, dir, t) / spec.n_e_on, 0.0, 1.0) : 0.0;
            z[i] = branch_impedance_with_switch(stub, transitional_switch_impedance(*stub.cell, fraction, f), f);
        }
        tr.value.push_back(std::abs(abcd_to_s(tuner_abcd(cfg, z, f), cfg.z0).s21));
    }
    return tr;
}

struct TuningTime {
    double seconds = 0.0;
    bool settled = true;
};

/// First sample time after which the trace stays within settle_fraction of
/// its total excursion |final - initial| around the final value. Settling in
/// the second half of the record is reported as non-settling, since the last
/// sample is then not a trustworthy steady value.
inline TuningTime tuning_time(const Trace& trace, const TransientSpec& spec) {
    if (trace.size() == 0 || trace.time.size() != trace.value.size())
        throw InvalidArgument("tuning_time needs a non-empty trace");
    const double initial = trace.value.front();
    const double final_value = trace.value.back();
    const double band = spec.settle_fraction * std::abs(final_value - initial);

    std::size_t settle_index = 0;
    for (std::size_t k = trace.size(); k-- > 0;) {
        if (std::abs(trace.value[k] - final_value) > band) {
            settle_index = k + 1;
            break;
        }
    }
    TuningTime out;
    out.seconds = trace.time[std::min(settle_index, trace.size() - 1)] - trace.time.front();
    const double record = trace.time.back() - trace.time.front();
    if (settle_index > 0 && out.seconds > 0.5 * record) out.settled = false;
    return out;
}

} // namespace plasmatune
