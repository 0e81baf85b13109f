#include "mfo/assignment.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace mfo {

bool SampleStats::in_j_nu(int j) const {
    return std::binary_search(j_nu.begin(), j_nu.end(), j);
}

SampleStats compute_stats(const std::vector<SamplePoint>& H) {
    const SamplePoint* first_ap = nullptr;
    for (const SamplePoint& pt : H)
        if (pt.apriori_ok) {
            first_ap = &pt;
            break;
        }
    if (!first_ap) throw EmptyAprioriError();
    SampleStats s;
    s.L = static_cast<int>(first_ap->c.size());
    s.m = static_cast<int>(first_ap->c.front().size());
    s.lambda.assign(s.L, 0.0);
    s.p_count.assign(s.L, std::vector<long>(s.m, 0));
    s.r_count.assign(s.L, std::vector<long>(s.m, 0));

    std::vector<double> col(s.L);
    for (const SamplePoint& pt : H) {
        if (!pt.apriori_ok) continue;
        ++s.n_ap;
        for (int i = 1; i <= s.L; ++i) {
            s.lambda[i - 1] += pt.cost[i - 1];
            for (int j = 1; j <= s.m; ++j)
                if (pt.c[i - 1][j - 1] <= 0.0) ++s.p_count[i - 1][j - 1];
        }
        const Vec& truth = pt.c[s.L - 1];
        const bool feasible = std::all_of(truth.begin(), truth.end(),
                                          [](double v) { return v <= 0.0; });
        if (!feasible) continue;
        ++s.n_feas;
        for (int j = 1; j <= s.m; ++j) {
            for (int i = 1; i <= s.L; ++i) col[i - 1] = pt.c[i - 1][j - 1];
            for (int i = 1; i <= s.L; ++i)
                if (is_representative(col, i)) ++s.r_count[i - 1][j - 1];
        }
    }
    if (s.n_ap == 0) throw EmptyAprioriError();
    for (double& l : s.lambda) l /= double(s.n_ap);
    if (s.n_feas == 0) throw EmptyFeasibleError();

    s.i_of_j.assign(s.m, s.L);
    for (int j = 1; j <= s.m; ++j)
        for (int i = 1; i <= s.L; ++i)
            if (s.r_count[i - 1][j - 1] == s.n_feas) {
                s.i_of_j[j - 1] = i;
                break;
            }
    for (int j = 1; j <= s.m; ++j) {
        bool invariant = true;
        for (int i = 1; i <= s.L && invariant; ++i)
            invariant = s.p_count[i - 1][j - 1] == s.p_count[s.L - 1][j - 1] &&
                        s.r_count[i - 1][j - 1] == s.n_feas;
        if (invariant) s.j_nu.push_back(j);
    }
    return s;
}

SubproblemQ make_subproblem(SampleStats stats, PhiPolicy policy, bool include_truth) {
    SubproblemQ q;
    q.policy = policy;
    q.include_truth = include_truth;
    q.fixed.assign(stats.m, 0);
    q.deferred.assign(stats.m, 0);
    q.forbidden.assign(stats.L, 0);
    q.stats = std::move(stats);
    return q;
}

double f_q(const AssignmentVector& a, const SubproblemQ& q) {
    const SampleStats& s = q.stats;
    std::vector<int> indices;
    if (q.policy == PhiPolicy::Dids) {
        indices.resize(s.L);
        std::iota(indices.begin(), indices.end(), 1);
    } else {
        indices = a.entries;
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    }

    const bool truth_variant = q.policy == PhiPolicy::Ids && q.include_truth;
    double total = truth_variant ? s.lam(s.L) : 0.0;
    for (int i : indices) {
        if (truth_variant && i == s.L) continue;
        double term = s.lam(i);
        for (int j = 1; j <= s.m; ++j)
            if (a.at(j) < i) term *= s.p(a.at(j), j);
        total += term;
    }
    return total;
}

SubproblemQ apply_cuts(SubproblemQ q) {
    if (q.policy != PhiPolicy::Ids)
        throw std::logic_error("apply_cuts: Ids policy only");
    const SampleStats& s = q.stats;

    // Constraint-related cuts.
    const bool all_nu = static_cast<int>(s.j_nu.size()) == s.m;
    if (all_nu) {
        // Every constraint is fidelity-invariant: pin them all to the cheapest
        // fidelity (index 1 when costs increase with fidelity).
        int cheapest = 1;
        for (int i = 2; i <= s.L; ++i)
            if (s.lam(i) < s.lam(cheapest)) cheapest = i;
        for (int j = 1; j <= s.m; ++j) q.fixed[j - 1] = cheapest;
        q.cuts_applied = true;
        return q;
    }
    bool some_nu_uncertain = false;
    for (int j : s.j_nu)
        if (s.p_count[s.L - 1][j - 1] < s.n_ap) some_nu_uncertain = true;
    if (some_nu_uncertain) {
        for (int jh : s.j_nu)
            for (int j = 1; j <= s.m; ++j)
                if (j != jh) q.order_cuts.emplace_back(jh, j);
    } else if (!s.j_nu.empty()) {
        for (int j : s.j_nu) q.deferred[j - 1] = 1;
    }

    // Fidelity-related cuts: drop cost-dominated indices, then restrict to the
    // minimal non-dominated index reachable from each i(j).
    std::vector<char> dominated(s.L, 0);
    for (int i = 1; i < s.L; ++i)
        for (int l = i + 1; l <= s.L; ++l)
            if (s.lam(l) <= s.lam(i)) {
                dominated[i - 1] = 1;
                break;
            }
    std::vector<char> allowed(s.L, 0);
    for (int j = 1; j <= s.m; ++j) {
        if (q.deferred[j - 1]) continue;
        for (int i = s.i_of_j[j - 1]; i <= s.L; ++i)
            if (!dominated[i - 1]) {
                allowed[i - 1] = 1;
                break;
            }
    }
    for (int i = 1; i <= s.L; ++i) q.forbidden[i - 1] = !allowed[i - 1];
    q.cuts_applied = true;
    return q;
}

namespace {

std::vector<int> allowed_indices(const SubproblemQ& q, int j) {
    const SampleStats& s = q.stats;
    std::vector<int> out;
    for (int i = s.i_of_j[j - 1]; i <= s.L; ++i)
        if (!q.forbidden[i - 1]) out.push_back(i);
    if (out.empty())
        for (int i = s.i_of_j[j - 1]; i <= s.L; ++i) out.push_back(i);
    return out;
}

}  // namespace

AssignmentVector solve_ids(const SubproblemQ& q) {
    const SampleStats& s = q.stats;
    if (s.n_feas == 0) throw EmptyFeasibleError();

    std::vector<int> free_js;
    std::vector<std::vector<int>> domains;
    double candidates = 1.0;
    for (int j = 1; j <= s.m; ++j) {
        if (q.fixed[j - 1] || q.deferred[j - 1]) continue;
        free_js.push_back(j);
        domains.push_back(allowed_indices(q, j));
        candidates *= double(domains.back().size());
    }
    if (candidates > 1e7)
        throw EnumerationTooLarge("solve_ids: cut feasible set exceeds 1e7 candidates");

    AssignmentVector a;
    a.entries.assign(s.m, 0);
    for (int j = 1; j <= s.m; ++j)
        if (q.fixed[j - 1]) a.entries[j - 1] = q.fixed[j - 1];

    auto fill_deferred = [&](AssignmentVector& v) {
        int lowest = s.L;
        for (int j = 1; j <= s.m; ++j)
            if (!q.deferred[j - 1]) lowest = std::min(lowest, v.at(j));
        for (int j = 1; j <= s.m; ++j)
            if (q.deferred[j - 1]) v.entries[j - 1] = lowest;
    };

    if (free_js.empty()) {
        fill_deferred(a);
        return a;
    }

    const int nfree = static_cast<int>(free_js.size());
    std::vector<int> pos(nfree, 0);
    AssignmentVector best;
    double best_value = kInf;
    for (;;) {
        for (int k = 0; k < nfree; ++k) a.entries[free_js[k] - 1] = domains[k][pos[k]];
        bool ok = true;
        for (auto [jh, j] : q.order_cuts)
            if (a.at(jh) > a.at(j)) {
                ok = false;
                break;
            }
        if (ok) {
            AssignmentVector full = a;
            fill_deferred(full);
            const double value = f_q(full, q);
            if (value < best_value ||
                (value == best_value && full.entries < best.entries)) {
                best_value = value;
                best = full;
            }
        }
        int k = nfree - 1;
        while (k >= 0 && ++pos[k] == static_cast<int>(domains[k].size())) pos[k--] = 0;
        if (k < 0) break;
    }
    if (best.entries.empty())
        throw std::logic_error("solve_ids: empty feasible set after cuts");
    return best;
}

AssignmentVector solve_dids(const SampleStats& stats) {
    if (stats.n_feas == 0) throw EmptyFeasibleError();
    AssignmentVector a;
    a.entries = stats.i_of_j;
    return a;
}

std::string dump_subproblem_json(const SubproblemQ& q, const AssignmentVector& a) {
    nlohmann::json doc;
    const SampleStats& s = q.stats;
    doc["L"] = s.L;
    doc["m"] = s.m;
    doc["n_ap"] = s.n_ap;
    doc["n_feas"] = s.n_feas;
    doc["lambda"] = s.lambda;
    nlohmann::json p = nlohmann::json::array(), r = nlohmann::json::array();
    for (int i = 1; i <= s.L; ++i) {
        nlohmann::json prow = nlohmann::json::array(), rrow = nlohmann::json::array();
        for (int j = 1; j <= s.m; ++j) {
            prow.push_back(s.p(i, j));
            rrow.push_back(s.r(i, j));
        }
        p.push_back(prow);
        r.push_back(rrow);
    }
    doc["p"] = p;
    doc["r"] = r;
    doc["i_of_j"] = s.i_of_j;
    doc["j_nu"] = s.j_nu;
    doc["policy"] = q.policy == PhiPolicy::Ids ? "ids" : "dids";
    doc["include_truth"] = q.include_truth;
    doc["cuts"] = {{"fixed", q.fixed},
                   {"deferred", std::vector<int>(q.deferred.begin(), q.deferred.end())},
                   {"forbidden", std::vector<int>(q.forbidden.begin(), q.forbidden.end())},
                   {"order_cuts", q.order_cuts}};
    doc["assignment"] = a.entries;
    doc["f_q"] = f_q(a, q);
    return doc.dump(2);
}

}  // namespace mfo
