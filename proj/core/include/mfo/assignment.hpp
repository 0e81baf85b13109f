#pragma once

#include <string>
#include <vector>

#include "mfo/core.hpp"

namespace mfo {

struct EmptyFeasibleError : std::runtime_error {
    EmptyFeasibleError() : std::runtime_error("sample contains no truth-feasible point") {}
};
struct EmptyAprioriError : std::runtime_error {
    EmptyAprioriError() : std::runtime_error("sample contains no a-priori-feasible point") {}
};
struct EnumerationTooLarge : std::runtime_error {
    explicit EnumerationTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// One fully-laddered sample point: outputs and full-call costs at every
/// fidelity index.
struct SamplePoint {
    Vec x;
    std::vector<double> f;       // size L
    std::vector<Vec> c;          // L rows of m values
    std::vector<double> cost;    // size L, full-call cost at each fidelity
    bool apriori_ok = true;
};

/// Estimators over a sample set. Satisfaction and representativity counts are
/// kept as exact integers over common denominators (n_ap resp. n_feas) so
/// fidelity-invariance can be tested with exact equality; probabilities are
/// derived on demand.
struct SampleStats {
    int L = 0;
    int m = 0;
    std::vector<double> lambda;               // size L, mean cost per fidelity
    std::vector<std::vector<long>> p_count;   // L x m satisfaction counts over H^ap
    std::vector<std::vector<long>> r_count;   // L x m representativity counts over H cap Omega
    long n_ap = 0;
    long n_feas = 0;
    std::vector<int> i_of_j;                  // size m, minimal representative index
    std::vector<int> j_nu;                    // 1-based indices, sorted

    double lam(int i) const { return lambda[i - 1]; }
    double p(int i, int j) const { return double(p_count[i - 1][j - 1]) / double(n_ap); }
    double r(int i, int j) const { return double(r_count[i - 1][j - 1]) / double(n_feas); }
    bool p_equal(int i1, int i2, int j) const {
        return p_count[i1 - 1][j - 1] == p_count[i2 - 1][j - 1];
    }
    bool in_j_nu(int j) const;
};

SampleStats compute_stats(const std::vector<SamplePoint>& H);

enum class PhiPolicy { Ids, Dids };

/// The assignment subproblem: minimize the expected evaluation cost of the
/// wrapper subject to a_j >= i(j), possibly augmented with cuts.
struct SubproblemQ {
    SampleStats stats;
    PhiPolicy policy = PhiPolicy::Ids;
    bool include_truth = false;

    // Cuts. fixed[j-1] != 0 pins a_j; deferred[j-1] removes a_j from the
    // enumeration (post-assigned afterwards); forbidden[i-1] bans index i;
    // order_cuts are pairs (jhat, j) meaning a_jhat <= a_j.
    std::vector<int> fixed;
    std::vector<char> deferred;
    std::vector<char> forbidden;
    std::vector<std::pair<int, int>> order_cuts;

    bool cuts_applied = false;
};

SubproblemQ make_subproblem(SampleStats stats, PhiPolicy policy, bool include_truth = false);

/// Expected evaluation cost of the controller under assignment a.
double f_q(const AssignmentVector& a, const SubproblemQ& q);

/// Constraint- and fidelity-related cuts. Ids policy only.
SubproblemQ apply_cuts(SubproblemQ q);

/// Exhaustive search over the (cut) feasible set, lexicographically smallest
/// minimizer; deferred constraints are post-assigned to the lowest index used
/// by the remaining ones.
AssignmentVector solve_ids(const SubproblemQ& q);

/// Closed-form optimum when every fidelity step is paid incrementally.
AssignmentVector solve_dids(const SampleStats& stats);

/// Debug dump of the subproblem and its solution as a JSON document.
std::string dump_subproblem_json(const SubproblemQ& q, const AssignmentVector& a);

}  // namespace mfo
