#include "mfo/problems.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "mfo/rng.hpp"

namespace mfo {

namespace {

std::vector<double> default_phi_values() {
    std::vector<double> phi{1e-10};
    for (int k = 1; k <= 9; ++k) phi.push_back(0.1 * k);
    phi.push_back(1.0);
    return phi;
}

/// Deterministic analytic problem: exact truth functions plus per-constraint
/// fidelity distortions that vanish at phi = 1. Cost model
/// lambda(phi) = floor + (1 - floor) * phi, charged in full per call; the
/// incremental continuation charges the difference between two levels.
class AnalyticProblem : public MultiFidelityProblem {
public:
    AnalyticProblem(int n, int m, double cost_floor, bool intermediary)
        : ladder_(default_phi_values(),
                  intermediary ? CostMode::IncrementalStep : CostMode::FullPerCall),
          n_(n),
          m_(m),
          cost_floor_(cost_floor),
          intermediary_(intermediary),
          lower_(n, -5.0),
          upper_(n, 5.0) {}

    int dimension() const override { return n_; }
    const Vec& lower() const override { return lower_; }
    const Vec& upper() const override { return upper_; }
    int num_constraints() const override { return m_; }
    const FidelityLadder& ladder() const override { return ladder_; }
    bool supports_intermediary() const override { return intermediary_; }

    virtual double truth_objective(const Vec& x) const = 0;
    virtual Vec truth_constraints(const Vec& x) const = 0;
    virtual double distortion(const Vec& x, int j, double phi) const = 0;

    double full_cost(double phi) const { return cost_floor_ + (1.0 - cost_floor_) * phi; }

    EvalOutput eval(const Vec& x, int i) const override {
        const double phi = ladder_.phi(i);
        EvalOutput out;
        out.f = truth_objective(x);
        out.c = truth_constraints(x);
        for (int j = 1; j <= m_; ++j) out.c[j - 1] += distortion(x, j, phi);
        out.cost = full_cost(phi);
        return out;
    }

    EvalOutput resume(const Vec& x, int from, int to) const override {
        if (!intermediary_) return MultiFidelityProblem::resume(x, from, to);
        EvalOutput out = eval(x, to);
        out.cost = full_cost(ladder_.phi(to)) - (from > 0 ? full_cost(ladder_.phi(from)) : 0.0);
        return out;
    }

protected:
    FidelityLadder ladder_;
    int n_;
    int m_;
    double cost_floor_;
    bool intermediary_;
    Vec lower_, upper_;
};

/// Convex quadratic objective with its unconstrained minimum outside the
/// feasible set, four constraints with distinct fidelity behaviours:
/// c1 boundary-active with a mild (or, in the location-dependent variant,
/// region-gated) pessimistic bias, c2 fidelity-invariant, c3 mildly biased,
/// c4 biased so strongly that its sign settles only at the truth.
class BiasedQuadProblem : public AnalyticProblem {
public:
    BiasedQuadProblem(bool location_dependent, double cost_floor, bool intermediary)
        : AnalyticProblem(5, 4, cost_floor, intermediary),
          location_dependent_(location_dependent) {}

    double truth_objective(const Vec& x) const override {
        static const Vec target{2.0, 2.0, 0.0, 0.0, 0.0};
        double f = 0.0;
        for (int k = 0; k < 5; ++k) f += (x[k] - target[k]) * (x[k] - target[k]);
        return f;
    }

    Vec truth_constraints(const Vec& x) const override {
        return {x[0] + x[1] - 3.0,
                x[2] - 4.0,
                x[3] * x[3] + x[4] * x[4] - 16.0,
                x[3] - 1.0};
    }

    double distortion(const Vec& x, int j, double phi) const override {
        const double u = 1.0 - phi;
        if (location_dependent_) {
            // Bias is confined to the x3 > 2 region, far uphill of the
            // optimum, so low-fidelity signs are exact where the search
            // actually improves.
            switch (j) {
                case 1: return x[2] > 2.0 ? 40.0 * u : 0.0;
                case 2: return 0.0;
                case 3: return x[2] > 2.0 ? 30.0 * u : 0.0;
                case 4: return 60.0 * u;
            }
        } else {
            switch (j) {
                case 1: return 0.5 * u * (std::cos(x[0]) + 1.5);
                case 2: return 0.0;
                case 3: return 0.3 * u;
                case 4: return 60.0 * u;
            }
        }
        return 0.0;
    }

    bool apriori_check(const Vec& x) const override { return x[0] >= -4.5; }

    std::unique_ptr<MultiFidelityProblem> clone() const override {
        return std::make_unique<BiasedQuadProblem>(*this);
    }

private:
    bool location_dependent_;
};

/// One exact gate constraint decidable at the bottom of the ladder for a cost
/// near zero; the remaining constraints are biased hard enough that only the
/// truth settles them. The objective pushes into the gate boundary.
class CheapGateProblem : public AnalyticProblem {
public:
    CheapGateProblem(double cost_floor, bool intermediary)
        : AnalyticProblem(3, 3, cost_floor, intermediary) {}

    double truth_objective(const Vec& x) const override {
        return (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 2.0) * (x[1] - 2.0) + x[2] * x[2];
    }

    Vec truth_constraints(const Vec& x) const override {
        return {x[0] + x[1] - 2.0, x[2] - 3.0, -x[0] - 4.0};
    }

    double distortion(const Vec&, int j, double phi) const override {
        const double u = 1.0 - phi;
        return j == 1 ? 0.0 : 50.0 * u;
    }

    std::unique_ptr<MultiFidelityProblem> clone() const override {
        return std::make_unique<CheapGateProblem>(*this);
    }
};

/// Averaged noisy quadratic with a predefined per-point noise stream: the
/// value at level i is the mean of the first eta_i draws, so one evaluation
/// at the truth surfaces every lower level on the way.
class SaaQuadProblem : public MultiFidelityProblem {
public:
    SaaQuadProblem(SaaLadder saa, double sigma, std::uint64_t noise_seed)
        : saa_(std::move(saa)),
          ladder_(saa_.to_fidelity_ladder()),
          sigma_(sigma),
          noise_seed_(noise_seed),
          lower_(3, -5.0),
          upper_(3, 5.0) {}

    int dimension() const override { return 3; }
    const Vec& lower() const override { return lower_; }
    const Vec& upper() const override { return upper_; }
    int num_constraints() const override { return 2; }
    const FidelityLadder& ladder() const override { return ladder_; }
    bool supports_intermediary() const override { return true; }

    EvalOutput eval(const Vec& x, int i) const override {
        EvalOutput out;
        const long eta = saa_.draw_counts[i - 1];
        out.f = mean_output(x, 0, 0, eta);
        out.c = {mean_output(x, 1, 0, eta), mean_output(x, 2, 0, eta)};
        out.cost = double(eta) * saa_.cost_per_draw;
        return out;
    }

    EvalOutput resume(const Vec& x, int from, int to) const override {
        if (from <= 0) return eval(x, to);
        const long eta_from = saa_.draw_counts[from - 1];
        const long eta_to = saa_.draw_counts[to - 1];
        EvalOutput out;
        out.f = incremental_mean(x, 0, eta_from, eta_to);
        out.c = {incremental_mean(x, 1, eta_from, eta_to),
                 incremental_mean(x, 2, eta_from, eta_to)};
        out.cost = double(eta_to - eta_from) * saa_.cost_per_draw;
        return out;
    }

    std::unique_ptr<MultiFidelityProblem> clone() const override {
        return std::make_unique<SaaQuadProblem>(*this);
    }

    double draw(const Vec& x, int output, long omega) const {
        std::uint64_t h = noise_seed_;
        for (double v : x) h = hash_double(h, v);
        h = hash_mix(h, std::uint64_t(output));
        h = hash_mix(h, std::uint64_t(omega));
        SplitMix64 rng(h);
        double u1 = rng.uniform(), u2 = rng.uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        return base_value(x, output) + sigma_ * z;
    }

private:
    double base_value(const Vec& x, int output) const {
        switch (output) {
            case 0: {
                double f = 0.0;
                for (double v : x) f += (v - 0.3) * (v - 0.3);
                return f;
            }
            case 1: return x[0] - 1.0;
            default: return x[0] + x[1] + x[2] - 2.0;
        }
    }

    double mean_output(const Vec& x, int output, long omega_begin, long omega_end) const {
        double sum = 0.0;
        for (long w = omega_begin + 1; w <= omega_end; ++w) sum += draw(x, output, w);
        return sum / double(omega_end - omega_begin);
    }

    double incremental_mean(const Vec& x, int output, long eta_from, long eta_to) const {
        const double prev = mean_output(x, output, 0, eta_from);
        double sum = double(eta_from) * prev;
        for (long w = eta_from + 1; w <= eta_to; ++w) sum += draw(x, output, w);
        return sum / double(eta_to);
    }

    SaaLadder saa_;
    FidelityLadder ladder_;
    double sigma_;
    std::uint64_t noise_seed_;
    Vec lower_, upper_;
};

}  // namespace

FidelityLadder SaaLadder::to_fidelity_ladder() const {
    std::vector<double> phi;
    for (long eta : draw_counts) phi.push_back(double(eta) / double(draw_counts.back()));
    return FidelityLadder(std::move(phi), CostMode::IncrementalStep);
}

std::string default_catalog_json() {
    return R"({
  "version": 1,
  "problems": {
    "biased-quad":            {"type": "biased-quad", "location_dependent": false, "intermediary": true,  "cost_floor": 0.05},
    "biased-quad-loc":        {"type": "biased-quad", "location_dependent": true,  "intermediary": true,  "cost_floor": 0.05},
    "biased-quad-calls-only": {"type": "biased-quad", "location_dependent": false, "intermediary": false, "cost_floor": 0.05},
    "cheap-gate":             {"type": "cheap-gate", "intermediary": true, "cost_floor": 0.02},
    "saa-quad":               {"type": "saa-quad", "eta": [1, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000],
                               "sigma": 0.5, "noise_seed": 90210, "cost_per_draw": 0.0009765625}
  }
})";
}

std::unique_ptr<MultiFidelityProblem> make_problem(const std::string& id,
                                                   const std::string& catalog_json) {
    const nlohmann::json catalog =
        nlohmann::json::parse(catalog_json.empty() ? default_catalog_json() : catalog_json);
    const auto& problems = catalog.at("problems");
    if (!problems.contains(id)) throw UnknownProblemError(id);
    const auto& p = problems.at(id);
    const std::string type = p.at("type");
    if (type == "biased-quad")
        return std::make_unique<BiasedQuadProblem>(p.value("location_dependent", false),
                                                   p.value("cost_floor", 0.05),
                                                   p.value("intermediary", true));
    if (type == "cheap-gate")
        return std::make_unique<CheapGateProblem>(p.value("cost_floor", 0.02),
                                                  p.value("intermediary", true));
    if (type == "saa-quad") {
        SaaLadder saa;
        saa.draw_counts = p.at("eta").get<std::vector<long>>();
        saa.cost_per_draw = p.value("cost_per_draw", 0.0009765625);
        return std::make_unique<SaaQuadProblem>(std::move(saa), p.value("sigma", 0.5),
                                                p.value("noise_seed", 90210ULL));
    }
    throw UnknownProblemError(id + " (unsupported type " + type + ")");
}

std::vector<std::string> catalog_ids(const std::string& catalog_json) {
    const nlohmann::json catalog =
        nlohmann::json::parse(catalog_json.empty() ? default_catalog_json() : catalog_json);
    std::vector<std::string> ids;
    for (const auto& [key, value] : catalog.at("problems").items()) ids.push_back(key);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace mfo
