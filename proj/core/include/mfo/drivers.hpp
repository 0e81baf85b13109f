#pragma once

#include <cstdint>
#include <string>

#include "mfo/assignment.hpp"
#include "mfo/controller.hpp"
#include "mfo/search.hpp"

namespace mfo {

enum class Algorithm { Base, Ids, IdsTruth, Dids };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct RequiresIntermediaryError : std::runtime_error {
    RequiresIntermediaryError()
        : std::runtime_error("dynamic assignment needs intermediary outputs (resume support)") {}
};

struct RunSpec {
    Algorithm algorithm = Algorithm::Base;
    std::string problem_id;
    std::uint64_t seed = 0;
    double budget = 0.0;
    Vec x0;                           // Base and dynamic runs
    std::vector<SamplePoint> sample;  // fixed-assignment runs
    SearchOptions search;
};

struct AssignmentChange {
    int iteration = 0;
    AssignmentVector assignment;
};

struct RunResult {
    SearchResult search;
    Vec start;
    AssignmentVector initial_assignment;
    std::vector<AssignmentChange> assignment_trace;  // dynamic runs only
    bool fallback_assignment = false;                // sample had no feasible point
};

/// Seeded Latin Hypercube sample, each point evaluated at every fidelity with
/// full per-call costs. Points failing the a-priori check are kept in the set
/// with apriori_ok = false and no outputs.
std::vector<SamplePoint> lhs_sample(const MultiFidelityProblem& problem, int count,
                                    std::uint64_t seed, const Vec& lower, const Vec& upper);
std::vector<SamplePoint> lhs_sample(const MultiFidelityProblem& problem, int count,
                                    std::uint64_t seed);

/// Bounds shrunk around a center by the given factor in (0, 1], clipped to the
/// problem box.
std::pair<Vec, Vec> narrow_bounds(const MultiFidelityProblem& problem, const Vec& center,
                                  double factor);

/// Feasibility-first best of a sample: truth-feasible with the lowest truth
/// objective, else lowest violation, ties by objective.
Vec best_point_of(const std::vector<SamplePoint>& H);

/// Smallest ball around x_k holding at least n+1 truly feasible fully
/// laddered cache entries; returns the indices of every entry inside it
/// (feasible or not), or nothing when no such ball exists.
std::optional<std::vector<std::size_t>> select_dynamic_H(const Cache& cache, const Vec& x_k,
                                                         int n);

/// Lowest locally representative fidelity per constraint over the selected
/// entries (maximum of the per-record lowest representative indices).
AssignmentVector local_assignment(const Cache& cache, const std::vector<std::size_t>& selection,
                                  int L, int m);

RunResult run_base(const MultiFidelityProblem& problem, const RunSpec& spec);
RunResult run_ids(const MultiFidelityProblem& problem, const RunSpec& spec);
RunResult run_dids(const MultiFidelityProblem& problem, const RunSpec& spec);

/// Dispatch on spec.algorithm.
RunResult run(const MultiFidelityProblem& problem, const RunSpec& spec);

}  // namespace mfo
