#pragma once

#include <string>

#include "mfo/core.hpp"

namespace mfo {

struct UnknownProblemError : std::runtime_error {
    explicit UnknownProblemError(const std::string& id)
        : std::runtime_error("unknown problem id: " + id) {}
};

/// Draw counts of an averaged stochastic ladder; phi_i = eta_i / eta_L.
struct SaaLadder {
    std::vector<long> draw_counts;
    double cost_per_draw = 0.0009765625;  // 2^-10, so per-draw costs sum exactly

    FidelityLadder to_fidelity_ladder() const;
};

/// Canonical problem parameters as a JSON document (the same content as the
/// repository catalog file).
std::string default_catalog_json();

/// Instantiate a catalog problem. `catalog_json` defaults to the built-in
/// catalog when empty. Throws UnknownProblemError for ids not in the catalog.
std::unique_ptr<MultiFidelityProblem> make_problem(const std::string& id,
                                                   const std::string& catalog_json = "");

/// Ids available in the given catalog (built-in when empty).
std::vector<std::string> catalog_ids(const std::string& catalog_json = "");

}  // namespace mfo
