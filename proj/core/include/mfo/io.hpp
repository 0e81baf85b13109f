#pragma once

#include <cstdint>
#include <string>

#include "mfo/assignment.hpp"
#include "mfo/bench.hpp"
#include "mfo/drivers.hpp"

namespace mfo {

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest round-trippable decimal representation (%.17g).
std::string format_double(double v);
double parse_double(const std::string& s);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe partial content.
void atomic_write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// One evaluation row of a run log.
struct RunLogRow {
    int ordinal = 0;
    Vec x;
    int last_index = 0;
    bool interrupted = false;
    int trigger = 0;  // 1-based violated constraint, 0 = none
    double cost = 0.0;
    double cum_cost = 0.0;
    bool deemed_feasible = false;
    double barrier = kInf;
    double fstar = kInf;
    double delta = 0.0;
    bool has_truth = false;
    double truth_f = kInf;
    bool truth_feasible = false;
};

struct RunLog {
    std::string problem;
    std::string algorithm;
    std::uint64_t seed = 0;
    double budget = 0.0;
    double f_x0 = kInf;  // truth objective of the starting point
    std::vector<RunLogRow> rows;
};

RunLog make_run_log(const std::string& problem, Algorithm algorithm, std::uint64_t seed,
                    double budget, double f_x0, const RunResult& result, int L);

std::string render_run_log(const RunLog& log);
RunLog parse_run_log(const std::string& content);

std::vector<TracePoint> trace_of(const RunLog& log);
std::vector<int> last_indices_of(const RunLog& log);
std::vector<Vec> points_of(const RunLog& log);

std::string render_sample(const std::vector<SamplePoint>& H);
std::vector<SamplePoint> parse_sample(const std::string& content);

std::string render_profile_csv(const DataProfile& profile, double tau);

/// Histogram CSV over per-algorithm percentages aligned with the phi values.
std::string render_histogram_csv(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows,
    const std::vector<double>& phi);

struct ComparisonRow {
    std::string instance;
    std::string algorithm;
    SequenceComparison cmp;
};

std::string render_comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace mfo
