#pragma once

#include <functional>

#include "mfo/core.hpp"

namespace mfo {

enum class ControllerPolicy { Ids, IdsTruth, Dids };

/// Parameters of the blackbox wrapper: which constraint is trusted from which
/// fidelity, which fidelities are visited, and the incumbent value guarding
/// the final truth evaluation.
struct ControllerConfig {
    AssignmentVector assignment;
    ControllerPolicy policy = ControllerPolicy::Ids;
    std::function<double()> incumbent_value = [] { return kInf; };
};

/// The ordered fidelity indices the controller visits for this assignment.
std::vector<int> schedule(const ControllerConfig& config, int L);

/// Sequential evaluation with interruption on the first violated assigned
/// constraint, plus the incumbent-guarded truth evaluation. The caller must
/// have checked bounds and a-priori constraints beforehand.
EvaluationRecord evaluate(const Vec& x, const MultiFidelityProblem& problem,
                          const ControllerConfig& config);

}  // namespace mfo
