#pragma once

// Seeded DE/rand/1/bin minimizer. Trial vectors for a generation are drawn
// first, evaluated (optionally on several threads), then selected in index
// order, so results depend only on the seed and never on thread timing.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "plasmatune/errors.hpp"

namespace plasmatune {

struct ParameterRange {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

struct DeOptions {
    std::size_t population = 0; // 0 selects population_factor * dimension
    std::size_t population_factor = 15;
    double weight = 0.7;    // differential weight F
    double crossover = 0.9; // CR
    std::size_t max_evaluations = 20000;
    unsigned threads = 1;
};

struct DeResult {
    std::vector<double> best;
    double best_value = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    std::size_t generations = 0;
    std::vector<double> history; // best value after each generation
};

namespace detail {

// Portable draws: std distributions are implementation-defined.
class DeRng {
public:
    explicit DeRng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

template <class F>
void evaluate_all(F& f, const std::vector<std::vector<double>>& xs, std::vector<double>& out, unsigned threads) {
    out.resize(xs.size());
    if (threads <= 1 || xs.size() < 2) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(std::span<const double>(xs[i]));
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (xs.size() + threads - 1) / threads;
    for (std::size_t start = 0; start < xs.size(); start += chunk) {
        const std::size_t stop = std::min(xs.size(), start + chunk);
        pool.emplace_back([&, start, stop] {
            for (std::size_t i = start; i < stop; ++i) out[i] = f(std::span<const double>(xs[i]));
        });
    }
}

} // namespace detail

/// Minimize `f` over the box `bounds`. Ties on the objective are broken by the
/// smaller `tie_key(x)`. Out-of-box mutant coordinates are redrawn uniformly.
template <class Objective, class TieKey>
DeResult differential_evolution(Objective&& f, std::span<const ParameterRange> bounds, std::uint64_t seed,
                                const DeOptions& options, TieKey&& tie_key) {
    const std::size_t dim = bounds.size();
    if (dim == 0) throw InvalidArgument("differential evolution needs at least one parameter");
    for (const auto& b : bounds)
        if (!(b.hi >= b.lo)) throw InvalidArgument("parameter range has hi < lo");
    const std::size_t np = std::max<std::size_t>(
        4, options.population ? options.population : options.population_factor * dim);

    detail::DeRng rng(seed);
    auto draw = [&](std::size_t j) { return bounds[j].lo + rng.uniform() * bounds[j].width(); };

    std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
    for (auto& x : pop)
        for (std::size_t j = 0; j < dim; ++j) x[j] = draw(j);

    std::vector<double> fit;
    detail::evaluate_all(f, pop, fit, options.threads);
    std::vector<double> key(np);
    for (std::size_t i = 0; i < np; ++i) key[i] = tie_key(std::span<const double>(pop[i]));

    DeResult res;
    res.evaluations = np;
    auto better = [](double fa, double ka, double fb, double kb) { return fa < fb || (fa == fb && ka < kb); };
    auto best_index = [&] {
        std::size_t b = 0;
        for (std::size_t i = 1; i < np; ++i)
            if (better(fit[i], key[i], fit[b], key[b])) b = i;
        return b;
    };

    std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
    std::vector<double> trial_fit;
    while (res.evaluations + np <= options.max_evaluations) {
        for (std::size_t i = 0; i < np; ++i) {
            std::size_t r1, r2, r3;
            do { r1 = rng.index(np); } while (r1 == i);
            do { r2 = rng.index(np); } while (r2 == i || r2 == r1);
            do { r3 = rng.index(np); } while (r3 == i || r3 == r1 || r3 == r2);
            const std::size_t jrand = rng.index(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                if (j == jrand || rng.uniform() < options.crossover) {
                    double v = pop[r1][j] + options.weight * (pop[r2][j] - pop[r3][j]);
                    if (!bounds[j].contains(v)) v = draw(j);
                    trials[i][j] = v;
                } else {
                    trials[i][j] = pop[i][j];
                }
            }
        }
        detail::evaluate_all(f, trials, trial_fit, options.threads);
        res.evaluations += np;
        for (std::size_t i = 0; i < np; ++i) {
            const double k = tie_key(std::span<const double>(trials[i]));
            if (better(trial_fit[i], k, fit[i], key[i]) || (trial_fit[i] == fit[i] && k == key[i])) {
                pop[i] = trials[i];
                fit[i] = trial_fit[i];
                key[i] = k;
            }
        }
        ++res.generations;
        res.history.push_back(fit[best_index()]);
    }

    const std::size_t b = best_index();
    res.best = pop[b];
    res.best_value = fit[b];
    return res;
}

template <class Objective>
DeResult differential_evolution(Objective&& f, std::span<const ParameterRange> bounds, std::uint64_t seed,
                                const DeOptions& options = {}) {
    return differential_evolution(std::forward<Objective>(f), bounds, seed, options,
                                  [](std::span<const double>) { return 0.0; });
}

} // namespace plasmatune
