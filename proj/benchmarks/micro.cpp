#include <benchmark/benchmark.h>

#include "mfo/assignment.hpp"
#include "mfo/drivers.hpp"
#include "mfo/problems.hpp"

namespace {

std::vector<mfo::SamplePoint> make_sample(int count) {
    auto problem = mfo::make_problem("biased-quad");
    return mfo::lhs_sample(*problem, count, 7);
}

void BM_ComputeStats(benchmark::State& state) {
    const auto H = make_sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mfo::compute_stats(H));
}
BENCHMARK(BM_ComputeStats)->Arg(64)->Arg(512);

void BM_SolveIds(benchmark::State& state) {
    const auto H = make_sample(128);
    const mfo::SampleStats stats = mfo::compute_stats(H);
    for (auto _ : state) {
        auto q = mfo::apply_cuts(mfo::make_subproblem(stats, mfo::PhiPolicy::Ids));
        benchmark::DoNotOptimize(mfo::solve_ids(q));
    }
}
BENCHMARK(BM_SolveIds);

void BM_FQ(benchmark::State& state) {
    const auto H = make_sample(128);
    auto q = mfo::make_subproblem(mfo::compute_stats(H), mfo::PhiPolicy::Ids);
    mfo::AssignmentVector a;
    a.entries = {1, 3, 5, 11};
    for (auto _ : state) benchmark::DoNotOptimize(mfo::f_q(a, q));
}
BENCHMARK(BM_FQ);

}  // namespace

BENCHMARK_MAIN();
