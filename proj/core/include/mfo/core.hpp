#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mfo {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Cost semantics of a ladder step: a fresh call priced at the full cost of
/// the requested fidelity, or a continuation priced at the increment from the
/// previous fidelity.
enum class CostMode { FullPerCall, IncrementalStep };

/// The ordered fidelity values phi_1 < phi_2 < ... < phi_L = 1.
/// Indices are 1-based throughout the public interfaces.
class FidelityLadder {
public:
    FidelityLadder(std::vector<double> values, CostMode mode);

    int size() const { return static_cast<int>(values_.size()); }
    double phi(int i) const { return values_.at(i - 1); }
    CostMode cost_mode() const { return mode_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
    CostMode mode_;
};

/// One blackbox call: objective, the m constraint values and the charged cost.
struct EvalOutput {
    double f = kInf;
    Vec c;
    double cost = 0.0;
};

/// Blackbox interface. Outputs live in R union {inf}; a failed evaluation is
/// reported through infinite values, never through exceptions. Evaluations are
/// deterministic in (x, i).
class MultiFidelityProblem {
public:
    virtual ~MultiFidelityProblem() = default;

    virtual int dimension() const = 0;
    virtual const Vec& lower() const = 0;
    virtual const Vec& upper() const = 0;
    virtual int num_constraints() const = 0;
    virtual const FidelityLadder& ladder() const = 0;

    virtual bool apriori_check(const Vec&) const { return true; }

    /// Fresh evaluation at fidelity index i, charged at the full cost.
    virtual EvalOutput eval(const Vec& x, int i) const = 0;

    virtual bool supports_intermediary() const { return false; }

    /// Continue an evaluation from fidelity index `from` (0 = not started) to
    /// index `to`; cost is the increment only. Requires supports_intermediary.
    virtual EvalOutput resume(const Vec& x, int from, int to) const;

    virtual std::unique_ptr<MultiFidelityProblem> clone() const = 0;

    bool in_bounds(const Vec& x) const;
};

/// a_j = i: constraint j is trusted from fidelity index i upward.
struct AssignmentVector {
    std::vector<int> entries;  // entries[j-1] in 1..L

    int size() const { return static_cast<int>(entries.size()); }
    int at(int j) const { return entries.at(j - 1); }
    void validate(int L) const;

    bool operator==(const AssignmentVector&) const = default;
};

/// Trace of one wrapper-problem evaluation.
struct EvaluationRecord {
    Vec x;
    std::map<int, std::pair<double, Vec>> outputs;  // fidelity index -> (f, c)
    int last_index = 0;
    bool interrupted = false;
    std::optional<int> triggering_constraint;  // 1-based
    double total_cost = 0.0;
    bool deemed_feasible = false;
    bool truth_evaluated = false;

    const std::pair<double, Vec>& last_output() const { return outputs.at(last_index); }
    bool has_full_ladder(int L) const;
};

/// Append-only store of evaluation records for one optimization run. Records
/// evaluated up to phi_L additionally carry the lowest representative fidelity
/// per constraint (0 = unknown).
class Cache {
public:
    struct Entry {
        EvaluationRecord record;
        std::vector<int> lowest_rep;  // per constraint, 0 when unknown
        bool truth_feasible = false;
    };

    void append(EvaluationRecord record, int L, int m);
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Entry> entries_;
};

/// Sum of squared positive parts; inf if any component is inf.
double constraint_violation(const Vec& c);

/// f if in bounds and all c_j <= 0, inf otherwise.
double extreme_barrier(double f, const Vec& c, bool in_bounds);

/// True iff the violation indicator at every fidelity index >= at_index
/// agrees with the indicator at the truth. Infinite values count as violated.
bool is_representative(const std::vector<double>& values_over_i, int at_index);

}  // namespace mfo
