#pragma once

// Shared test utilities: a replay problem fed from tabulated ladders, a random
// sample-set generator, and slow reference implementations used as oracles.

#include <algorithm>
#include <vector>

#include "mfo/assignment.hpp"
#include "mfo/core.hpp"
#include "mfo/rng.hpp"

namespace mfotest {

/// Replays tabulated per-point ladders through the blackbox interface. Points
/// are addressed by index: x = {double(index)}.
class TableProblem : public mfo::MultiFidelityProblem {
public:
    TableProblem(std::vector<mfo::SamplePoint> table, mfo::FidelityLadder ladder)
        : table_(std::move(table)),
          ladder_(std::move(ladder)),
          lower_{0.0},
          upper_{double(table_.size() - 1)} {}

    int dimension() const override { return 1; }
    const mfo::Vec& lower() const override { return lower_; }
    const mfo::Vec& upper() const override { return upper_; }
    int num_constraints() const override {
        return static_cast<int>(table_.front().c.front().size());
    }
    const mfo::FidelityLadder& ladder() const override { return ladder_; }

    bool apriori_check(const mfo::Vec& x) const override { return row(x).apriori_ok; }

    mfo::EvalOutput eval(const mfo::Vec& x, int i) const override {
        const mfo::SamplePoint& pt = row(x);
        return {pt.f[i - 1], pt.c[i - 1], pt.cost[i - 1]};
    }

    std::unique_ptr<mfo::MultiFidelityProblem> clone() const override {
        return std::make_unique<TableProblem>(*this);
    }

private:
    const mfo::SamplePoint& row(const mfo::Vec& x) const {
        return table_.at(std::size_t(x.at(0) + 0.5));
    }

    std::vector<mfo::SamplePoint> table_;
    mfo::FidelityLadder ladder_;
    mfo::Vec lower_, upper_;
};

/// Evenly spread ladder values ending at 1, for arbitrary L.
inline mfo::FidelityLadder make_ladder(int L) {
    std::vector<double> phi;
    for (int i = 1; i <= L; ++i) phi.push_back(double(i) / double(L));
    return mfo::FidelityLadder(std::move(phi), mfo::CostMode::FullPerCall);
}

struct InstanceOptions {
    int max_L = 5;
    int max_m = 4;
    int max_points = 50;
    double inf_rate = 0.05;
    double apriori_fail_rate = 0.1;
};

/// Random fully-laddered sample with at least one a-priori-ok truth-feasible
/// point; costs are shared across points (monotone or not, half the time).
///
/// Constraint columns are suffix consistent: per point and constraint, the
/// violation indicator matches the truth indicator from a switch level on,
/// and every switch level is capped by a per-constraint bound that one
/// feasible anchor attains exactly. This makes p_ij = p_Lj for all i >= i(j)
/// hold by construction, the premise of the assignment optimality results.
inline std::vector<mfo::SamplePoint> random_sample(mfo::SplitMix64& rng,
                                                   const InstanceOptions& opt = {}) {
    const int L = 2 + int(rng.below(std::uint64_t(opt.max_L - 1)));
    const int m = 1 + int(rng.below(std::uint64_t(opt.max_m)));
    const int count = 1 + int(rng.below(std::uint64_t(opt.max_points)));
    const std::size_t anchor = std::size_t(rng.below(std::uint64_t(count)));

    std::vector<double> cost(L);
    const bool monotone = rng.uniform() < 0.5;
    double acc = 0.1 + rng.uniform();
    for (int i = 0; i < L; ++i) {
        cost[i] = monotone ? (acc += 0.1 + rng.uniform()) : 0.1 + 5.0 * rng.uniform();
    }

    std::vector<int> cap(m);
    for (int j = 0; j < m; ++j) cap[j] = 1 + int(rng.below(std::uint64_t(L)));

    std::vector<mfo::SamplePoint> H(count);
    for (int k = 0; k < count; ++k) {
        mfo::SamplePoint& pt = H[k];
        pt.x = {double(k)};
        pt.apriori_ok =
            std::size_t(k) == anchor || rng.uniform() >= opt.apriori_fail_rate;
        pt.cost = cost;
        pt.f.resize(L);
        pt.c.assign(L, mfo::Vec(m));
        for (int i = 0; i < L; ++i) pt.f[i] = -2.0 + 4.0 * rng.uniform();
        for (int j = 0; j < m; ++j) {
            const bool truth_violated =
                std::size_t(k) != anchor && rng.uniform() < 0.35;
            const int sw = std::size_t(k) == anchor
                               ? cap[j]
                               : 1 + int(rng.below(std::uint64_t(cap[j])));
            auto value = [&](bool violated) {
                if (!violated) return -2.0 * rng.uniform();
                return rng.uniform() < opt.inf_rate ? mfo::kInf : 0.01 + 2.0 * rng.uniform();
            };
            for (int i = L; i >= sw; --i) pt.c[i - 1][j] = value(truth_violated);
            // Mismatch right below the switch so representativity starts there.
            if (sw > 1) pt.c[sw - 2][j] = value(!truth_violated);
            for (int i = sw - 2; i >= 1; --i) pt.c[i - 1][j] = value(rng.uniform() < 0.5);
        }
    }
    return H;
}

/// Minimum of f_q over the whole uncut feasible set a_j in [i(j), L].
inline double brute_force_min(const mfo::SubproblemQ& q) {
    const mfo::SampleStats& s = q.stats;
    mfo::AssignmentVector a;
    a.entries.assign(s.m, 0);
    std::vector<int> pos(s.m, 0);
    double best = mfo::kInf;
    for (;;) {
        for (int j = 0; j < s.m; ++j) a.entries[j] = s.i_of_j[j] + pos[j];
        best = std::min(best, mfo::f_q(a, q));
        int k = s.m - 1;
        while (k >= 0 && s.i_of_j[k] + ++pos[k] > s.L) pos[k--] = 0;
        if (k < 0) break;
    }
    return best;
}

/// Expected controller cost under assignment a, by exhaustive enumeration of
/// the 2^m constraint outcomes with independent satisfaction probabilities
/// p(a_j, j). Mirrors the interruption walk instead of the product formula.
inline double expectation_oracle(const mfo::AssignmentVector& a, const mfo::SubproblemQ& q) {
    const mfo::SampleStats& s = q.stats;
    std::vector<int> indices;
    if (q.policy == mfo::PhiPolicy::Dids) {
        for (int i = 1; i <= s.L; ++i) indices.push_back(i);
    } else {
        indices = a.entries;
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    }

    double expected = 0.0;
    for (unsigned mask = 0; mask < (1u << s.m); ++mask) {
        double prob = 1.0;
        for (int j = 1; j <= s.m; ++j) {
            const double pj = s.p(a.at(j), j);
            prob *= (mask & (1u << (j - 1))) ? pj : 1.0 - pj;
        }
        double cost = 0.0;
        for (int i : indices) {
            cost += s.lam(i);
            bool interrupted = false;
            for (int j = 1; j <= s.m; ++j)
                if (a.at(j) <= i && !(mask & (1u << (j - 1)))) interrupted = true;
            if (interrupted) break;
        }
        expected += prob * cost;
    }
    return expected;
}

}  // namespace mfotest
