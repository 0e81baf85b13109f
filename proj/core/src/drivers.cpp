#include "mfo/drivers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfo/rng.hpp"

namespace mfo {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Base: return "base";
        case Algorithm::Ids: return "ids";
        case Algorithm::IdsTruth: return "ids-truth";
        case Algorithm::Dids: return "dids";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "base") return Algorithm::Base;
    if (name == "ids") return Algorithm::Ids;
    if (name == "ids-truth") return Algorithm::IdsTruth;
    if (name == "dids") return Algorithm::Dids;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<SamplePoint> lhs_sample(const MultiFidelityProblem& problem, int count,
                                    std::uint64_t seed, const Vec& lower, const Vec& upper) {
    const int n = problem.dimension();
    const int L = problem.ladder().size();
    SplitMix64 rng(seed);
    // One stratum per point and coordinate, in a seeded permutation.
    std::vector<Vec> coords(n, Vec(count));
    for (int k = 0; k < n; ++k) {
        std::vector<int> strata(count);
        std::iota(strata.begin(), strata.end(), 0);
        deterministic_shuffle(strata, rng);
        for (int s = 0; s < count; ++s) {
            const double u = rng.uniform();
            coords[k][s] = lower[k] + (double(strata[s]) + u) / double(count) *
                                          (upper[k] - lower[k]);
        }
    }

    std::vector<SamplePoint> H(count);
    for (int s = 0; s < count; ++s) {
        SamplePoint& pt = H[s];
        pt.x.resize(n);
        for (int k = 0; k < n; ++k) pt.x[k] = coords[k][s];
        pt.apriori_ok = problem.apriori_check(pt.x);
        if (!pt.apriori_ok) continue;
        pt.f.resize(L);
        pt.c.resize(L);
        pt.cost.resize(L);
        for (int i = 1; i <= L; ++i) {
            EvalOutput out = problem.eval(pt.x, i);
            pt.f[i - 1] = out.f;
            pt.c[i - 1] = std::move(out.c);
            pt.cost[i - 1] = out.cost;
        }
    }
    return H;
}

std::vector<SamplePoint> lhs_sample(const MultiFidelityProblem& problem, int count,
                                    std::uint64_t seed) {
    return lhs_sample(problem, count, seed, problem.lower(), problem.upper());
}

std::pair<Vec, Vec> narrow_bounds(const MultiFidelityProblem& problem, const Vec& center,
                                  double factor) {
    Vec lo = problem.lower(), up = problem.upper();
    for (std::size_t k = 0; k < lo.size(); ++k) {
        const double half = 0.5 * factor * (up[k] - lo[k]);
        const double a = std::max(lo[k], center[k] - half);
        const double b = std::min(up[k], center[k] + half);
        lo[k] = a;
        up[k] = b;
    }
    return {std::move(lo), std::move(up)};
}

Vec best_point_of(const std::vector<SamplePoint>& H) {
    const SamplePoint* best = nullptr;
    bool best_feasible = false;
    double best_h = kInf, best_f = kInf;
    for (const SamplePoint& pt : H) {
        if (!pt.apriori_ok) continue;
        const Vec& truth = pt.c.back();
        const double h = constraint_violation(truth);
        const bool feasible = h == 0.0;
        const double f = pt.f.back();
        bool better;
        if (feasible != best_feasible)
            better = feasible;
        else if (feasible)
            better = f < best_f;
        else
            better = h < best_h || (h == best_h && f < best_f);
        if (!best || better) {
            best = &pt;
            best_feasible = feasible;
            best_h = h;
            best_f = f;
        }
    }
    if (!best) throw EmptyAprioriError();
    return best->x;
}

namespace {

double distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

AssignmentVector all_truth(int L, int m) {
    AssignmentVector a;
    a.entries.assign(m, L);
    return a;
}

/// Wraps the controller as a search evaluation callable. The incumbent value
/// fed to the controller guard tracks the solver's f*.
struct ControllerEval {
    const MultiFidelityProblem& problem;
    ControllerConfig config;
    double current_fstar = kInf;
    std::function<void(const EvaluationRecord&)> on_record;

    ControllerEval(const MultiFidelityProblem& p, AssignmentVector a, ControllerPolicy policy)
        : problem(p) {
        config.assignment = std::move(a);
        config.policy = policy;
        config.incumbent_value = [this] { return current_fstar; };
    }

    std::optional<TrialResult> operator()(const Vec& x, double fstar) {
        if (!problem.in_bounds(x) || !problem.apriori_check(x)) return std::nullopt;
        current_fstar = fstar;
        EvaluationRecord record = evaluate(x, problem, config);
        TrialResult trial;
        trial.barrier = record.deemed_feasible ? record.last_output().first : kInf;
        if (on_record) on_record(record);
        trial.record = std::move(record);
        return trial;
    }
};

}  // namespace

std::optional<std::vector<std::size_t>> select_dynamic_H(const Cache& cache, const Vec& x_k,
                                                         int n) {
    std::vector<double> feasible_d;
    for (const Cache::Entry& e : cache.entries())
        if (e.truth_feasible) feasible_d.push_back(distance(e.record.x, x_k));
    if (static_cast<int>(feasible_d.size()) < n + 1) return std::nullopt;
    std::nth_element(feasible_d.begin(), feasible_d.begin() + n, feasible_d.end());
    const double delta = feasible_d[n];

    std::vector<std::size_t> selection;
    for (std::size_t idx = 0; idx < cache.size(); ++idx)
        if (distance(cache.entries()[idx].record.x, x_k) <= delta) selection.push_back(idx);
    return selection;
}

AssignmentVector local_assignment(const Cache& cache, const std::vector<std::size_t>& selection,
                                  int L, int m) {
    AssignmentVector a;
    a.entries.assign(m, 1);
    bool any = false;
    for (std::size_t idx : selection) {
        const Cache::Entry& e = cache.entries()[idx];
        if (!e.truth_feasible) continue;
        any = true;
        for (int j = 1; j <= m; ++j)
            a.entries[j - 1] = std::max(a.entries[j - 1], e.lowest_rep[j - 1]);
    }
    if (!any) return all_truth(L, m);
    return a;
}

RunResult run_base(const MultiFidelityProblem& problem, const RunSpec& spec) {
    RunResult result;
    result.start = spec.x0;
    result.initial_assignment = all_truth(problem.ladder().size(), problem.num_constraints());
    ControllerEval eval(problem, result.initial_assignment, ControllerPolicy::Ids);
    result.search = run_search(std::ref(eval), spec.x0, spec.budget, problem.lower(),
                               problem.upper(), spec.seed, {}, spec.search);
    return result;
}

RunResult run_ids(const MultiFidelityProblem& problem, const RunSpec& spec) {
    const int L = problem.ladder().size();
    const int m = problem.num_constraints();
    const bool truth_variant = spec.algorithm == Algorithm::IdsTruth;

    RunResult result;
    result.start = best_point_of(spec.sample);
    try {
        SampleStats stats = compute_stats(spec.sample);
        SubproblemQ q =
            apply_cuts(make_subproblem(std::move(stats), PhiPolicy::Ids, truth_variant));
        result.initial_assignment = solve_ids(q);
    } catch (const EmptyFeasibleError&) {
        // No feasible sample point: every constraint stays at the truth and
        // the run degenerates to the base case.
        result.initial_assignment = all_truth(L, m);
        result.fallback_assignment = true;
    }

    ControllerEval eval(problem, result.initial_assignment,
                        truth_variant ? ControllerPolicy::IdsTruth : ControllerPolicy::Ids);
    result.search = run_search(std::ref(eval), result.start, spec.budget, problem.lower(),
                               problem.upper(), spec.seed, {}, spec.search);
    return result;
}

RunResult run_dids(const MultiFidelityProblem& problem, const RunSpec& spec) {
    if (!problem.supports_intermediary()) throw RequiresIntermediaryError();
    const int L = problem.ladder().size();
    const int m = problem.num_constraints();
    const int n = problem.dimension();

    RunResult result;
    result.start = spec.x0;
    result.initial_assignment = all_truth(L, m);

    Cache cache;
    ControllerEval eval(problem, result.initial_assignment, ControllerPolicy::Dids);
    eval.on_record = [&](const EvaluationRecord& record) { cache.append(record, L, m); };

    SearchHooks hooks;
    hooks.after_iteration = [&](const SearchState& state) {
        AssignmentVector next = all_truth(L, m);
        if (auto selection = select_dynamic_H(cache, state.incumbent, n))
            next = local_assignment(cache, *selection, L, m);
        if (!(next == eval.config.assignment)) {
            result.assignment_trace.push_back({state.iteration, next});
            eval.config.assignment = std::move(next);
        }
    };

    result.search = run_search(std::ref(eval), spec.x0, spec.budget, problem.lower(),
                               problem.upper(), spec.seed, hooks, spec.search);
    return result;
}

RunResult run(const MultiFidelityProblem& problem, const RunSpec& spec) {
    switch (spec.algorithm) {
        case Algorithm::Base: return run_base(problem, spec);
        case Algorithm::Ids:
        case Algorithm::IdsTruth: return run_ids(problem, spec);
        case Algorithm::Dids: return run_dids(problem, spec);
    }
    throw std::logic_error("run: bad algorithm");
}

}  // namespace mfo
