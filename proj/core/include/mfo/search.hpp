#pragma once

#include <functional>
#include <optional>

#include "mfo/core.hpp"
#include "mfo/rng.hpp"

namespace mfo {

struct SearchState {
    Vec incumbent;
    double fstar = kInf;
    double delta = 0.0;
    int iteration = 0;
    std::uint64_t seed = 0;
    double spent = 0.0;
};

struct TrialResult {
    EvaluationRecord record;
    double barrier = kInf;
};

/// Evaluates a trial point given the current incumbent value. Returns nothing
/// when the point is rejected before any blackbox call (a-priori constraints).
using EvalFn = std::function<std::optional<TrialResult>(const Vec&, double)>;

struct SearchHooks {
    std::function<void(const SearchState&)> after_iteration;
};

struct SearchOptions {
    double initial_delta = 0.0;  // 0: 10% of the smallest bound range
    double grow = 2.0;
    double shrink = 0.5;
    double cap_factor = 4.0;     // delta never exceeds cap_factor * initial
    double delta_stop = 1e-9;    // stop when delta < delta_stop * initial
};

struct HistoryEntry {
    int ordinal = 0;
    double barrier = kInf;
    double fstar_after = kInf;
    double delta = 0.0;
    double cumulative_cost = 0.0;
    EvaluationRecord record;
};

struct SearchResult {
    Vec best;
    double best_value = kInf;
    bool infeasible_start = false;
    std::vector<HistoryEntry> history;
    double total_cost = 0.0;
    int evaluations = 0;
    int iterations = 0;
};

/// Coordinate poll directions x +- delta e_k, snapped to bounds, in
/// seed-shuffled order; steps that do not move the point are dropped.
std::vector<Vec> poll_points(const SearchState& state, const Vec& lower, const Vec& upper,
                             SplitMix64& rng);

/// Opportunistic coordinate pattern search under an evaluation-cost budget.
SearchResult run_search(const EvalFn& evaluate, const Vec& x0, double budget,
                        const Vec& lower, const Vec& upper, std::uint64_t seed,
                        const SearchHooks& hooks = {}, SearchOptions options = {});

}  // namespace mfo
