#pragma once

#include <map>
#include <string>

#include "mfo/search.hpp"

namespace mfo {

/// Best truth-feasible objective reached by cumulative cost T.
struct TracePoint {
    double T = 0.0;
    double f = kInf;
};

/// All traces of one problem instance (one problem and seed), keyed by
/// algorithm name.
struct InstanceTraces {
    std::string instance;
    double f_x0 = kInf;
    std::map<std::string, std::vector<TracePoint>> by_algorithm;
};

/// Nonincreasing trace of the best truth-feasible objective over cumulative
/// cost, from a run history.
std::vector<TracePoint> truth_trace(const SearchResult& result, int L);

std::vector<int> last_indices(const SearchResult& result);
std::vector<Vec> trial_points(const SearchResult& result);

/// Best value at cost <= T, kInf when the trace has no point that early.
double best_value_at(const std::vector<TracePoint>& trace, double T);

/// Relative-decrease criterion: (f_x0 - f^T) / (f_x0 - f_star) >= 1 - tau.
/// A degenerate instance (f_x0 == f_star) counts as solved once f^T reaches
/// f_star.
bool tau_solved(const std::vector<TracePoint>& trace, double f_x0, double f_star, double tau,
                double T);

struct ProfileCurve {
    std::string algorithm;
    std::vector<double> fractions;  // aligned with the grid
};

struct DataProfile {
    std::vector<double> grid;
    std::vector<ProfileCurve> curves;
    int degenerate_instances = 0;  // no algorithm ever found a feasible point
};

/// Fraction of instances tau-solved per algorithm at each grid time. f_star
/// per instance is the best feasible value across all algorithms.
DataProfile data_profile(const std::vector<InstanceTraces>& instances, double tau,
                         std::vector<double> grid);

/// Evenly spaced grid over [0, max cost seen], with `points` entries.
std::vector<double> default_grid(const std::vector<InstanceTraces>& instances, int points);

/// Occurrence (%) of the last used fidelity index, over all evaluations.
std::vector<double> fidelity_histogram(const std::vector<int>& indices, int L);

struct SequenceComparison {
    double factor = 1.0;                     // variant evals / base evals
    bool differs = false;
    double percent_before_difference = 100;  // of the base count
};

/// Coordinate-exact comparison of two trial-point sequences.
SequenceComparison sequence_compare(const std::vector<Vec>& base, const std::vector<Vec>& variant);

}  // namespace mfo
