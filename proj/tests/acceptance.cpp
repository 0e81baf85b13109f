// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mfo/bench.hpp"
#include "mfo/controller.hpp"
#include "mfo/drivers.hpp"
#include "mfo/io.hpp"
#include "mfo/problems.hpp"

using namespace mfo;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

bool close(double a, double b, double tol) {
    if (a == b) return true;
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

SampleStats next_stats(SplitMix64& rng, std::vector<SamplePoint>& H) {
    for (;;) {
        H = mfotest::random_sample(rng);
        try {
            return compute_stats(H);
        } catch (const EmptyFeasibleError&) {
        }
    }
}

// Criterion 1: randomized structural and optimality properties of the
// sample statistics and the assignment solvers.
void criterion_1() {
    SplitMix64 rng(0xACCE97);
    int bad_lemma1 = 0, bad_lemma2 = 0, bad_replay = 0, bad_cut = 0, bad_closed = 0;
    for (int instance = 0; instance < 1000; ++instance) {
        std::vector<SamplePoint> H;
        const SampleStats s = next_stats(rng, H);

        for (int j = 1; j <= s.m; ++j) {
            for (int i = 2; i <= s.L; ++i)
                if (s.r_count[i - 1][j - 1] < s.r_count[i - 2][j - 1]) ++bad_lemma1;
            if (s.r_count[s.L - 1][j - 1] != s.n_feas) ++bad_lemma1;
            for (int i = s.i_of_j[j - 1]; i <= s.L; ++i)
                if (s.p_count[i - 1][j - 1] != s.p_count[s.L - 1][j - 1]) ++bad_lemma2;
        }

        const SubproblemQ uncut = make_subproblem(s, PhiPolicy::Ids);
        const SubproblemQ cut = apply_cuts(uncut);
        const AssignmentVector a = solve_ids(cut);
        if (!close(f_q(a, cut), mfotest::brute_force_min(uncut), 1e-12)) ++bad_cut;

        const SubproblemQ dq = make_subproblem(s, PhiPolicy::Dids);
        const AssignmentVector da = solve_dids(s);
        if (!close(f_q(da, dq), mfotest::brute_force_min(dq), 1e-12)) ++bad_closed;

        // Replaying the feasible sample under the solved assignment must not
        // interrupt (the points satisfy every constraint at the truth, and
        // the assignment only trusts representative fidelities).
        mfotest::TableProblem problem(H, mfotest::make_ladder(s.L));
        ControllerConfig config;
        config.assignment = a;
        for (std::size_t k = 0; k < H.size(); ++k) {
            if (!H[k].apriori_ok) continue;
            if (constraint_violation(H[k].c[s.L - 1]) != 0.0) continue;
            if (evaluate({double(k)}, problem, config).interrupted) ++bad_replay;
        }
    }
    std::ostringstream detail;
    detail << "violations lemma1=" << bad_lemma1 << " lemma2=" << bad_lemma2
           << " replay=" << bad_replay << " cut-equality=" << bad_cut
           << " closed-form=" << bad_closed;
    report(1, "structural and optimality properties over 1000 random instances",
           bad_lemma1 + bad_lemma2 + bad_replay + bad_cut + bad_closed == 0, detail.str());
}

// Criterion 2: the expected-cost objective equals an independent
// enumeration of all constraint outcomes.
void criterion_2() {
    SplitMix64 rng(0xC0572);
    int bad = 0;
    for (int instance = 0; instance < 200; ++instance) {
        std::vector<SamplePoint> H;
        const SampleStats s = next_stats(rng, H);
        std::vector<AssignmentVector> candidates;
        candidates.emplace_back();
        candidates.back().entries = s.i_of_j;
        candidates.emplace_back();
        candidates.back().entries.assign(s.m, s.L);
        candidates.emplace_back();
        for (int j = 0; j < s.m; ++j)
            candidates.back().entries.push_back(
                s.i_of_j[j] + int(rng.below(std::uint64_t(s.L - s.i_of_j[j] + 1))));
        for (PhiPolicy policy : {PhiPolicy::Ids, PhiPolicy::Dids}) {
            const SubproblemQ q = make_subproblem(s, policy);
            for (const AssignmentVector& a : candidates)
                if (!close(f_q(a, q), mfotest::expectation_oracle(a, q), 1e-12)) ++bad;
        }
    }
    report(2, "expected cost matches the outcome-enumeration oracle (200 instances)",
           bad == 0, bad ? "mismatches=" + std::to_string(bad) : "");
}

// Criterion 3: four-constraint worked expansion, exact.
void criterion_3() {
    SplitMix64 rng(0x3334);
    mfotest::InstanceOptions opt;
    opt.max_L = 5;
    int bad = 0;
    for (int found = 0; found < 50;) {
        std::vector<SamplePoint> H;
        const SampleStats s = next_stats(rng, H);
        if (s.L != 4 || s.m != 4) continue;
        ++found;
        AssignmentVector a;
        a.entries = {1, 2, 2, 4};
        const SubproblemQ q = make_subproblem(s, PhiPolicy::Ids);
        const double by_hand =
            s.lam(1) + s.lam(2) * s.p(1, 1) + s.lam(4) * s.p(1, 1) * s.p(2, 2) * s.p(2, 3);
        if (f_q(a, q) != by_hand) ++bad;
    }
    report(3, "four-constraint expansion is reproduced exactly (50 instances)", bad == 0,
           bad ? "mismatches=" + std::to_string(bad) : "");
}

// Criterion 4: everything a dynamic run deems feasible is feasible at the
// truth, across seeds and problems.
void criterion_4() {
    int checked = 0, bad = 0;
    for (const std::string& id :
         {std::string("biased-quad"), std::string("biased-quad-loc"),
          std::string("cheap-gate"), std::string("saa-quad")}) {
        const auto problem = make_problem(id);
        const int L = problem->ladder().size();
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            RunSpec spec;
            spec.algorithm = Algorithm::Dids;
            spec.seed = seed;
            spec.budget = 40.0;
            spec.x0 = best_point_of(lhs_sample(*problem, 20, hash_mix(seed, 0x5a)));
            const RunResult result = run_dids(*problem, spec);
            for (const HistoryEntry& entry : result.search.history) {
                if (!entry.record.deemed_feasible) continue;
                ++checked;
                const auto it = entry.record.outputs.find(L);
                if (it == entry.record.outputs.end() ||
                    constraint_violation(it->second.second) != 0.0)
                    ++bad;
            }
        }
    }
    report(4, "deemed-feasible dynamic records are feasible at the truth (80 runs)",
           checked > 0 && bad == 0,
           "checked=" + std::to_string(checked) + " violations=" + std::to_string(bad));
}

// Criterion 5: without any feasible sample point the fixed-assignment run
// degenerates to the base case, bitwise.
void criterion_5() {
    const auto problem = make_problem("cheap-gate");
    const Vec lower{1.5, 1.5, -5.0}, upper{5.0, 5.0, 5.0};
    int bad = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto H = lhs_sample(*problem, 30, seed, lower, upper);
        RunSpec spec;
        spec.algorithm = Algorithm::Ids;
        spec.seed = seed;
        spec.budget = 40.0;
        spec.sample = H;
        const RunResult ids = run_ids(*problem, spec);
        if (!ids.fallback_assignment) {
            ++bad;
            continue;
        }
        spec.algorithm = Algorithm::Base;
        spec.x0 = ids.start;
        const RunResult base = run_base(*problem, spec);
        bool same = ids.search.history.size() == base.search.history.size();
        for (std::size_t k = 0; same && k < ids.search.history.size(); ++k) {
            const HistoryEntry& p = ids.search.history[k];
            const HistoryEntry& q = base.search.history[k];
            same = p.record.x == q.record.x && p.record.last_index == q.record.last_index &&
                   p.record.total_cost == q.record.total_cost && p.barrier == q.barrier &&
                   p.cumulative_cost == q.cumulative_cost;
        }
        if (!same) ++bad;
    }
    report(5, "degenerate-sample fallback is bitwise identical to the base case (10 seeds)",
           bad == 0, bad ? "divergent seeds=" + std::to_string(bad) : "");
}

double final_feasible(const RunResult& result, int L) {
    const auto trace = truth_trace(result.search, L);
    return trace.empty() ? kInf : trace.back().f;
}

// Criterion 6: scaled benchmark over 20 seeds on two problems.
void criterion_6() {
    const double budget = 500.0;
    const int seeds = 20;
    int bad_final = 0;
    double factor_sum = 0.0;
    int solved_ids = 0, solved_dids = 0;

    for (const std::string& id : {std::string("cheap-gate"), std::string("biased-quad-loc")}) {
        const auto problem = make_problem(id);
        const int L = problem->ladder().size();
        for (std::uint64_t seed = 1; seed <= std::uint64_t(seeds); ++seed) {
            const auto H = lhs_sample(*problem, 30, hash_mix(seed, 0x6c));
            const Vec x0 = best_point_of(H);
            std::map<Algorithm, RunResult> results;
            for (Algorithm algorithm :
                 {Algorithm::Base, Algorithm::Ids, Algorithm::IdsTruth, Algorithm::Dids}) {
                RunSpec spec;
                spec.algorithm = algorithm;
                spec.seed = seed;
                spec.budget = budget;
                spec.sample = H;
                spec.x0 = x0;
                // The cost budget must be the binding stop so the base case
                // spends it on ~500 truth evaluations.
                spec.search.delta_stop = 1e-30;
                results.emplace(algorithm, run(*problem, spec));
            }
            const double base_f = final_feasible(results.at(Algorithm::Base), L);
            if (final_feasible(results.at(Algorithm::IdsTruth), L) > base_f) ++bad_final;
            if (final_feasible(results.at(Algorithm::Dids), L) > base_f) ++bad_final;

            if (id == "cheap-gate")
                factor_sum += double(results.at(Algorithm::Dids).search.history.size()) /
                              double(results.at(Algorithm::Base).search.history.size());

            if (id == "biased-quad-loc") {
                const double f_x0 = problem->eval(x0, L).f;
                double f_star = kInf;
                std::map<Algorithm, std::vector<TracePoint>> traces;
                for (const auto& [algorithm, result] : results) {
                    traces[algorithm] = truth_trace(result.search, L);
                    if (!traces[algorithm].empty())
                        f_star = std::min(f_star, traces[algorithm].back().f);
                }
                if (f_star < kInf) {
                    if (tau_solved(traces[Algorithm::Ids], f_x0, f_star, 0.01, kInf))
                        ++solved_ids;
                    if (tau_solved(traces[Algorithm::Dids], f_x0, f_star, 0.01, kInf))
                        ++solved_dids;
                }
            }
        }
    }
    const double mean_factor = factor_sum / seeds;
    std::ostringstream detail;
    detail << "worse-than-base finals=" << bad_final << " mean eval factor=" << mean_factor
           << " tau-solved ids=" << solved_ids << " dids=" << solved_dids;
    report(6, "scaled benchmark: finals, evaluation factor, tau-solved counts",
           bad_final == 0 && mean_factor > 1.0 && solved_dids >= solved_ids, detail.str());
}

// Criterion 7: stepwise continuation of the averaged problem equals fresh
// evaluations, with exactly summing costs.
void criterion_7() {
    const auto problem = make_problem("saa-quad");
    const int L = problem->ladder().size();
    SplitMix64 rng(0x5AA);
    int bad_value = 0, bad_cost = 0;
    for (int point = 0; point < 100; ++point) {
        Vec x(problem->dimension());
        for (double& v : x)
            v = problem->lower()[0] + (problem->upper()[0] - problem->lower()[0]) * rng.uniform();
        double cost_sum = 0.0;
        for (int i = 1; i <= L; ++i) {
            const EvalOutput step = problem->resume(x, i - 1, i);
            cost_sum += step.cost;
            const EvalOutput fresh = problem->eval(x, i);
            if (!close(step.f, fresh.f, 1e-12)) ++bad_value;
            for (int j = 0; j < problem->num_constraints(); ++j)
                if (!close(step.c[j], fresh.c[j], 1e-12)) ++bad_value;
        }
        if (cost_sum != problem->eval(x, L).cost) ++bad_cost;
    }
    report(7, "stepwise continuation equals fresh evaluations with exact cost sums (100 points)",
           bad_value + bad_cost == 0,
           "value mismatches=" + std::to_string(bad_value) +
               " cost mismatches=" + std::to_string(bad_cost));
}

// Criterion 8: a batch rendered twice from the same configuration produces
// byte-identical logs, profiles and histograms.
std::map<std::string, std::string> render_batch() {
    std::map<std::string, std::string> files;
    std::vector<InstanceTraces> instances;
    std::vector<std::pair<std::string, std::vector<double>>> hist_rows;
    std::map<std::string, std::vector<int>> indices_by_algorithm;
    std::vector<double> phi;

    for (const std::string& id : {std::string("cheap-gate"), std::string("saa-quad")}) {
        const auto problem = make_problem(id);
        const int L = problem->ladder().size();
        phi = problem->ladder().values();
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto H = lhs_sample(*problem, 20, hash_mix(seed, 0x8b));
            const Vec x0 = best_point_of(H);
            InstanceTraces inst;
            inst.instance = id + "-s" + std::to_string(seed);
            inst.f_x0 = problem->eval(x0, L).f;
            for (Algorithm algorithm : {Algorithm::Base, Algorithm::Dids}) {
                RunSpec spec;
                spec.algorithm = algorithm;
                spec.seed = seed;
                spec.budget = 15.0;
                spec.sample = H;
                spec.x0 = x0;
                const RunResult result = run(*problem, spec);
                const RunLog log = make_run_log(id, algorithm, seed, spec.budget, inst.f_x0,
                                                result, L);
                files[inst.instance + "-" + algorithm_name(algorithm) + ".csv"] =
                    render_run_log(log);
                inst.by_algorithm[algorithm_name(algorithm)] =
                    truth_trace(result.search, L);
                auto& indices = indices_by_algorithm[algorithm_name(algorithm)];
                for (const HistoryEntry& entry : result.search.history)
                    indices.push_back(entry.record.last_index);
            }
            instances.push_back(std::move(inst));
        }
    }
    files["profile.csv"] =
        render_profile_csv(data_profile(instances, 0.01, default_grid(instances, 25)), 0.01);
    for (const auto& [name, indices] : indices_by_algorithm)
        hist_rows.emplace_back(name, fidelity_histogram(indices, int(phi.size())));
    files["histogram.csv"] = render_histogram_csv(hist_rows, phi);
    return files;
}

void criterion_8() {
    try {
        const auto first = render_batch();
        const auto second = render_batch();
        report(8, "rerunning a batch reproduces every artifact byte for byte",
               first == second && !first.empty(),
               "artifacts=" + std::to_string(first.size()));
    } catch (const std::exception& e) {
        report(8, "rerunning a batch reproduces every artifact byte for byte", false, e.what());
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    return failures == 0 ? 0 : 1;
}
