#include "mfo/search.hpp"

#include <algorithm>

namespace mfo {

std::vector<Vec> poll_points(const SearchState& state, const Vec& lower, const Vec& upper,
                             SplitMix64& rng) {
    const int n = static_cast<int>(state.incumbent.size());
    std::vector<Vec> points;
    for (int k = 0; k < n; ++k) {
        for (double sign : {+1.0, -1.0}) {
            Vec x = state.incumbent;
            x[k] = std::clamp(x[k] + sign * state.delta, lower[k], upper[k]);
            if (x[k] != state.incumbent[k]) points.push_back(std::move(x));
        }
    }
    deterministic_shuffle(points, rng);
    return points;
}

SearchResult run_search(const EvalFn& evaluate, const Vec& x0, double budget,
                        const Vec& lower, const Vec& upper, std::uint64_t seed,
                        const SearchHooks& hooks, SearchOptions options) {
    if (options.initial_delta <= 0.0) {
        double smallest = kInf;
        for (std::size_t k = 0; k < lower.size(); ++k)
            smallest = std::min(smallest, upper[k] - lower[k]);
        options.initial_delta = 0.1 * smallest;
    }
    const double delta0 = options.initial_delta;
    const double cap = options.cap_factor * delta0;

    SearchState state;
    state.incumbent = x0;
    state.delta = delta0;
    state.seed = seed;
    SplitMix64 rng(seed);

    SearchResult result;
    result.best = x0;

    auto try_point = [&](const Vec& x) -> std::optional<double> {
        std::optional<TrialResult> trial = evaluate(x, state.fstar);
        if (!trial) return std::nullopt;  // rejected before any blackbox call
        state.spent += trial->record.total_cost;
        ++result.evaluations;
        HistoryEntry entry;
        entry.ordinal = result.evaluations;
        entry.barrier = trial->barrier;
        entry.delta = state.delta;
        entry.cumulative_cost = state.spent;
        entry.record = std::move(trial->record);
        const double barrier = trial->barrier;
        entry.fstar_after = std::min(state.fstar, barrier);
        result.history.push_back(std::move(entry));
        return barrier;
    };

    bool x0_infeasible = true;
    if (budget > 0.0) {
        if (std::optional<double> b = try_point(x0)) {
            state.fstar = *b;
            x0_infeasible = std::isinf(*b);
        }
    }

    while (state.spent < budget && state.delta >= options.delta_stop * delta0) {
        bool success = false;
        for (const Vec& x : poll_points(state, lower, upper, rng)) {
            if (state.spent >= budget) break;
            std::optional<double> barrier = try_point(x);
            if (barrier && *barrier < state.fstar) {
                state.incumbent = x;
                state.fstar = *barrier;
                state.delta = std::min(state.delta * options.grow, cap);
                success = true;
                break;  // opportunistic: end the poll on first improvement
            }
        }
        if (!success) state.delta *= options.shrink;
        ++state.iteration;
        if (hooks.after_iteration) hooks.after_iteration(state);
    }

    result.best = state.incumbent;
    result.best_value = state.fstar;
    result.infeasible_start = x0_infeasible && std::isinf(state.fstar);
    result.total_cost = state.spent;
    result.iterations = state.iteration;
    return result;
}

}  // namespace mfo
