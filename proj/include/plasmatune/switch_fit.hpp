#pragma once

// Extraction of plasma-cell equivalent-circuit values from measured two-port
// data. The cell is treated as a series element between the two ports.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "plasmatune/elements.hpp"
#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"
#include "plasmatune/plasma.hpp"

namespace plasmatune {

struct FitOptions {
    int max_iterations = 200;
    /// RMS residual per S-parameter sample above which the fit is flagged poor.
    double poor_fit_rms = 0.02;
};

struct SwitchFit {
    CellState state = CellState::off;
    double c_off = 0.0;    // off-state fit
    double r_on = 0.0;     // on-state fit
    double c_sheath = 0.0; // on-state fit
    double residual_norm = 0.0; // sqrt of summed squared S residuals
    double rms_residual = 0.0;
    int iterations = 0;
    bool poor_fit = false;
    std::string warning;

    /// Copy of `base` with the fitted fields replaced.
    PlasmaCellModel apply_to(PlasmaCellModel base) const {
        if (state == CellState::off) {
            base.c_off = c_off;
        } else {
            base.r_on = r_on;
            base.c_sheath = c_sheath;
            base.plasma.reset();
        }
        return base;
    }
};

/// Strip a symmetric line fixture from both sides of each measured point.
inline NetworkSweep deembed(const NetworkSweep& measured, const MicrostripSpec& fixture) {
    std::vector<SMatrix2> out;
    out.reserve(measured.size());
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const auto& s = measured.params[i];
        const AbcdMatrix f_inv = line_abcd(fixture, measured.grid[i]).inverse();
        out.push_back(abcd_to_s(f_inv * s_to_abcd(s) * f_inv, s.z0));
    }
    return {measured.grid, std::move(out)};
}

namespace detail {

inline Complex fit_model_impedance(CellState state, const std::array<double, 2>& x, double f) {
    if (state == CellState::off) return off_state_impedance(x[0], f);
    return on_state_impedance(x[0], x[1], f);
}

// dZ/d(log x_k)
inline std::array<Complex, 2> fit_model_gradient(CellState state, const std::array<double, 2>& x, double f) {
    if (state == CellState::off) return {-off_state_impedance(x[0], f), Complex(0.0)};
    const Complex sheath = on_state_impedance(0.0, x[1], f);
    return {Complex(x[0]), -sheath};
}

struct FitEval {
    std::vector<double> r;
    std::vector<std::array<double, 2>> jac;
    double cost = 0.0;
};

inline FitEval fit_evaluate(const NetworkSweep& data, CellState state, const std::array<double, 2>& logx,
                            bool with_jacobian) {
    const std::array<double, 2> x{std::exp(logx[0]), std::exp(logx[1])};
    FitEval ev;
    ev.r.reserve(8 * data.size());
    if (with_jacobian) ev.jac.reserve(8 * data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double f = data.grid[i];
        const auto& m = data.params[i];
        const double z0 = m.z0;
        const Complex z = fit_model_impedance(state, x, f);
        const Complex den = z + 2.0 * z0;
        const Complex s11 = z / den;
        const Complex s21 = 2.0 * z0 / den;
        const std::array<Complex, 4> model{s11, s21, s21, s11};
        const std::array<Complex, 4> meas{m.s11, m.s21, m.s12, m.s22};
        const Complex ds11 = 2.0 * z0 / (den * den);
        const std::array<Complex, 4> dsdz{ds11, -ds11, -ds11, ds11};
        const auto dz = fit_model_gradient(state, x, f);
        for (std::size_t k = 0; k < 4; ++k) {
            const Complex res = model[k] - meas[k];
            ev.r.push_back(res.real());
            ev.r.push_back(res.imag());
            if (with_jacobian) {
                const Complex d0 = dsdz[k] * dz[0];
                const Complex d1 = dsdz[k] * dz[1];
                ev.jac.push_back({d0.real(), d1.real()});
                ev.jac.push_back({d0.imag(), d1.imag()});
            }
        }
    }
    for (double v : ev.r) ev.cost += v * v;
    return ev;
}

// Closed-form single-frequency estimate from s21 of a series element.
inline std::array<double, 2> fit_initial_guess(const NetworkSweep& data, CellState state) {
    const std::size_t mid = data.size() / 2;
    const auto& s = data.params[mid];
    const double w = 2.0 * kPi * data.grid[mid];
    Complex z(0.0, -100.0);
    if (s.s21 != Complex(0.0)) z = 2.0 * s.z0 * (1.0 - s.s21) / s.s21;
    if (state == CellState::off) {
        const double c = z.imag() < 0.0 ? -1.0 / (w * z.imag()) : 1e-12;
        return {c, 1.0};
    }
    const double r = std::max(z.real(), 1e-3);
    const double cs = z.imag() < 0.0 ? -2.0 / (w * z.imag()) : 1e-10;
    return {r, cs};
}

} // namespace detail

/// Damped least squares (Levenberg-Marquardt) over log-scaled parameters.
/// Off state fits c_off; on state fits r_on and c_sheath.
inline SwitchFit fit_switch_model(const NetworkSweep& measured, CellState state,
                                  const std::optional<MicrostripSpec>& fixture = std::nullopt,
                                  const FitOptions& options = {}) {
    if (measured.size() < 3) throw InvalidArgument("switch fit needs at least 3 frequency points");
    const NetworkSweep data = fixture ? deembed(measured, *fixture) : measured;
    const std::size_t k = state == CellState::off ? 1 : 2;

    const auto guess = detail::fit_initial_guess(data, state);
    std::array<double, 2> p{std::log(guess[0]), std::log(guess[1])};
    auto ev = detail::fit_evaluate(data, state, p, true);
    double lambda = 1e-3;
    int iter = 0;
    bool converged = false;

    while (iter < options.max_iterations) {
        ++iter;
        std::array<std::array<double, 2>, 2> a{};
        std::array<double, 2> g{};
        for (std::size_t i = 0; i < ev.r.size(); ++i) {
            for (std::size_t u = 0; u < k; ++u) {
                g[u] += ev.jac[i][u] * ev.r[i];
                for (std::size_t v = 0; v < k; ++v) a[u][v] += ev.jac[i][u] * ev.jac[i][v];
            }
        }
        if (ev.cost < 1e-30) {
            converged = true;
            break;
        }

        bool accepted = false;
        while (!accepted && lambda < 1e16) {
            std::array<double, 2> step{};
            if (k == 1) {
                step[0] = -g[0] / (a[0][0] * (1.0 + lambda));
            } else {
                const double m00 = a[0][0] * (1.0 + lambda), m11 = a[1][1] * (1.0 + lambda);
                const double det = m00 * m11 - a[0][1] * a[1][0];
                step[0] = -(m11 * g[0] - a[0][1] * g[1]) / det;
                step[1] = -(m00 * g[1] - a[1][0] * g[0]) / det;
            }
            std::array<double, 2> trial{p[0] + step[0], p[1] + step[1]};
            auto tev = detail::fit_evaluate(data, state, trial, true);
            if (std::isfinite(tev.cost) && tev.cost <= ev.cost) {
                const double improvement = ev.cost - tev.cost;
                const double step_size = std::max(std::abs(step[0]), std::abs(step[1]));
                p = trial;
                ev = std::move(tev);
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                if (step_size < 1e-13 || improvement <= 1e-16 * ev.cost) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        // No descent direction left: already at the minimum to machine precision.
        if (!accepted) converged = true;
        if (converged) break;
    }

    const double norm = std::sqrt(ev.cost);
    if (!converged)
        throw FitFailure("switch fit did not converge in " + std::to_string(options.max_iterations) +
                             " iterations (residual norm " + std::to_string(norm) + ")",
                         norm);

    SwitchFit fit;
    fit.state = state;
    if (state == CellState::off) {
        fit.c_off = std::exp(p[0]);
    } else {
        fit.r_on = std::exp(p[0]);
        fit.c_sheath = std::exp(p[1]);
    }
    fit.residual_norm = norm;
    fit.rms_residual = std::sqrt(ev.cost / static_cast<double>(4 * data.size()));
    fit.iterations = iter;
    if (fit.rms_residual > options.poor_fit_rms) {
        fit.poor_fit = true;
        fit.warning = "poor fit: rms S residual " + std::to_string(fit.rms_residual) + " exceeds " +
                      std::to_string(options.poor_fit_rms);
    }
    return fit;
}

} // namespace plasmatune
