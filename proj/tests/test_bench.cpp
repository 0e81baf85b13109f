#include "doctest.h"

#include "mfo/bench.hpp"

using namespace mfo;

namespace {

InstanceTraces one_instance(std::vector<TracePoint> trace, double f_x0 = 10.0) {
    InstanceTraces inst;
    inst.instance = "p-s1";
    inst.f_x0 = f_x0;
    inst.by_algorithm["alg"] = std::move(trace);
    return inst;
}

}  // namespace

TEST_CASE("relative-decrease criterion") {
    const std::vector<TracePoint> trace{{1.0, 9.9}, {4.0, 0.05}, {8.0, 0.0}};
    const double f_x0 = 10.0, f_star = 0.0;

    CHECK_FALSE(tau_solved(trace, f_x0, f_star, 0.01, 1.0));  // 9.9: ratio 0.01 < 0.99
    CHECK(tau_solved(trace, f_x0, f_star, 0.01, 4.0));        // 0.05: ratio 0.995
    CHECK(tau_solved(trace, f_x0, f_star, 0.5, 8.0));         // reached f_star: any tau
    CHECK_FALSE(tau_solved(trace, f_x0, f_star, 0.99, 0.5));  // nothing feasible yet

    // f^T = f_x0 is never solved for tau < 1.
    CHECK_FALSE(tau_solved({{1.0, 10.0}}, f_x0, f_star, 0.999, 2.0));

    // Monotone in tau.
    for (double T : {1.0, 4.0, 8.0}) {
        bool prev = false;
        for (double tau : {0.001, 0.01, 0.1, 0.5, 0.9}) {
            const bool solved = tau_solved(trace, f_x0, f_star, tau, T);
            if (prev) CHECK(solved);
            prev = solved;
        }
    }

    // Degenerate instance: solved once the trace reaches f_star.
    CHECK(tau_solved({{2.0, 5.0}}, 5.0, 5.0, 0.01, 2.0));
    CHECK_FALSE(tau_solved({{2.0, 6.0}}, 5.0, 5.0, 0.01, 2.0));
}

TEST_CASE("best value at a time cut") {
    const std::vector<TracePoint> trace{{1.0, 5.0}, {3.0, 2.0}};
    CHECK(std::isinf(best_value_at(trace, 0.5)));
    CHECK(best_value_at(trace, 1.0) == 5.0);
    CHECK(best_value_at(trace, 2.9) == 5.0);
    CHECK(best_value_at(trace, 100.0) == 2.0);
}

TEST_CASE("single instance profile is a unit step") {
    auto inst = one_instance({{5.0, 0.0}});
    const DataProfile profile = data_profile({inst}, 0.01, {1.0, 4.9, 5.0, 9.0});
    REQUIRE(profile.curves.size() == 1);
    CHECK(profile.curves[0].fractions == std::vector<double>{0.0, 0.0, 1.0, 1.0});
    CHECK(profile.degenerate_instances == 0);
}

TEST_CASE("identical traces give identical curves and curves stay monotone in [0,1]") {
    std::vector<InstanceTraces> instances;
    for (int k = 0; k < 5; ++k) {
        InstanceTraces inst;
        inst.instance = "p-s" + std::to_string(k);
        inst.f_x0 = 10.0;
        std::vector<TracePoint> trace{{double(k + 1), 5.0}, {double(2 * k + 3), 0.1 * k}};
        inst.by_algorithm["a"] = trace;
        inst.by_algorithm["b"] = trace;
        instances.push_back(std::move(inst));
    }
    const auto grid = default_grid(instances, 50);
    const DataProfile profile = data_profile(instances, 0.1, grid);
    REQUIRE(profile.curves.size() == 2);
    CHECK(profile.curves[0].fractions == profile.curves[1].fractions);
    for (const auto& curve : profile.curves) {
        double prev = 0.0;
        for (double v : curve.fractions) {
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("instances no algorithm solved are excluded and counted") {
    auto good = one_instance({{2.0, 0.0}});
    InstanceTraces bad;
    bad.instance = "p-s2";
    bad.f_x0 = 10.0;
    bad.by_algorithm["alg"] = {};
    const DataProfile profile = data_profile({good, bad}, 0.01, {3.0});
    CHECK(profile.degenerate_instances == 1);
    CHECK(profile.curves[0].fractions == std::vector<double>{1.0});

    CHECK_THROWS_AS(data_profile({bad}, 0.01, {3.0}), std::invalid_argument);
    CHECK_THROWS_AS(data_profile({}, 0.01, {3.0}), std::invalid_argument);
}

TEST_CASE("reference value is the best across all algorithms") {
    InstanceTraces inst;
    inst.instance = "p-s1";
    inst.f_x0 = 10.0;
    inst.by_algorithm["a"] = {{1.0, 1.0}};
    inst.by_algorithm["b"] = {{1.0, 0.0}};  // defines f_star = 0
    const DataProfile profile = data_profile({inst}, 0.05, {2.0});
    for (const auto& curve : profile.curves) {
        // a stopped at ratio 0.9, not solved for tau = 0.05; b is.
        if (curve.algorithm == "a") CHECK(curve.fractions == std::vector<double>{0.0});
        if (curve.algorithm == "b") CHECK(curve.fractions == std::vector<double>{1.0});
    }
}

TEST_CASE("last-fidelity histogram") {
    const std::vector<int> indices{11, 11, 11, 11};
    const auto all_truth = fidelity_histogram(indices, 11);
    CHECK(all_truth[10] == 100.0);
    for (int i = 0; i < 10; ++i) CHECK(all_truth[i] == 0.0);

    const auto mixed = fidelity_histogram({1, 1, 2, 11, 11, 11}, 11);
    double sum = 0.0;
    for (double p : mixed) sum += p;
    CHECK(sum == doctest::Approx(100.0).epsilon(1e-11));
    CHECK(mixed[0] > 0.0);

    CHECK_THROWS_AS(fidelity_histogram({}, 11), std::invalid_argument);
    CHECK_THROWS_AS(fidelity_histogram({12}, 11), std::out_of_range);
}

TEST_CASE("sequence comparison") {
    const std::vector<Vec> base{{0.0}, {1.0}, {2.0}, {3.0}};

    auto cmp = sequence_compare(base, base);
    CHECK(cmp.factor == 1.0);
    CHECK_FALSE(cmp.differs);
    CHECK(cmp.percent_before_difference == 100.0);

    std::vector<Vec> variant{{0.0}, {1.0}, {9.0}, {3.0}, {4.0}, {5.0}};
    cmp = sequence_compare(base, variant);
    CHECK(cmp.factor == 1.5);
    CHECK(cmp.differs);
    CHECK(cmp.percent_before_difference == 50.0);

    // Longer run with an identical prefix still differs, after 100% of base.
    variant = base;
    variant.push_back({4.0});
    cmp = sequence_compare(base, variant);
    CHECK(cmp.differs);
    CHECK(cmp.percent_before_difference == 100.0);
}

TEST_CASE("feasible-truth trace extraction from run history") {
    SearchResult result;
    auto push = [&](double cum, bool has_truth, double f, bool feasible) {
        HistoryEntry entry;
        entry.cumulative_cost = cum;
        entry.record.x = {0.0};
        entry.record.last_index = has_truth ? 3 : 1;
        if (has_truth) entry.record.outputs[3] = {f, {feasible ? -1.0 : 1.0}};
        result.history.push_back(std::move(entry));
    };
    push(1.0, true, 7.0, true);
    push(2.0, false, 0.0, false);   // interrupted, no truth data
    push(3.0, true, 5.0, false);    // truth infeasible
    push(4.0, true, 4.0, true);
    push(5.0, true, 6.0, true);     // worse, not an improvement

    const auto trace = truth_trace(result, 3);
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].T == 1.0);
    CHECK(trace[0].f == 7.0);
    CHECK(trace[1].T == 4.0);
    CHECK(trace[1].f == 4.0);

    CHECK(last_indices(result) == std::vector<int>{3, 1, 3, 3, 3});
    CHECK(trial_points(result).size() == 5);
}
