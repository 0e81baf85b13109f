#include "mfo/controller.hpp"

#include <algorithm>

namespace mfo {

std::vector<int> schedule(const ControllerConfig& config, int L) {
    std::vector<int> out;
    if (config.policy == ControllerPolicy::Dids) {
        for (int i = 1; i <= L; ++i) out.push_back(i);
        return out;
    }
    out = config.assignment.entries;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (config.policy == ControllerPolicy::IdsTruth && out.back() != L)
        out.push_back(L);
    return out;
}

EvaluationRecord evaluate(const Vec& x, const MultiFidelityProblem& problem,
                          const ControllerConfig& config) {
    const FidelityLadder& ladder = problem.ladder();
    const int L = ladder.size();
    const int m = problem.num_constraints();
    config.assignment.validate(L);

    const bool incremental =
        config.policy == ControllerPolicy::Dids && problem.supports_intermediary();

    EvaluationRecord rec;
    rec.x = x;
    int prev = 0;
    for (int i : schedule(config, L)) {
        EvalOutput out = (incremental && prev > 0) ? problem.resume(x, prev, i)
                                                   : problem.eval(x, i);
        rec.outputs[i] = {out.f, out.c};
        rec.last_index = i;
        rec.total_cost += out.cost;
        prev = i;

        for (int j = 1; j <= m; ++j) {
            if (config.assignment.at(j) > i) continue;
            if (!(out.c[j - 1] <= 0.0)) {  // inf and NaN count as violated
                rec.interrupted = true;
                rec.triggering_constraint = j;
                rec.truth_evaluated = rec.outputs.count(L) > 0;
                return rec;
            }
        }
    }

    // Incumbent guard: a low-fidelity value that would improve the incumbent
    // must be confirmed at the truth before the solver sees it.
    if (ladder.phi(rec.last_index) < 1.0 &&
        rec.outputs.at(rec.last_index).first < config.incumbent_value()) {
        EvalOutput out = problem.eval(x, L);
        rec.outputs[L] = {out.f, out.c};
        rec.last_index = L;
        rec.total_cost += out.cost;
    }
    rec.deemed_feasible = true;
    rec.truth_evaluated = rec.outputs.count(L) > 0;
    return rec;
}

}  // namespace mfo
