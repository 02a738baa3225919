#include "msd/evaluate.hpp"
#include "msd/invariants.hpp"
#include "msd/levelgraphs.hpp"

#include <benchmark/benchmark.h>

using namespace msd;

namespace {

StratumSpec genus0(int n) {
    std::vector<int> mu(n, 1);
    mu[0] = -n;
    mu[1] = 0;
    return connected_spec(0, mu);
}

void BM_LG1(benchmark::State& st) {
    auto spec = genus0(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_LG1(spec).size());
}
BENCHMARK(BM_LG1)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_Catalog(benchmark::State& st) {
    auto spec = connected_spec(1, {-static_cast<int>(st.range(0)) - 1, 1, static_cast<int>(st.range(0))});
    for (auto _ : st) {
        Boundary bd(spec);
        for (int L = 1; L <= bd.dims().d; ++L) benchmark::DoNotOptimize(bd.graphs(L).size());
    }
}
BENCHMARK(BM_Catalog)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_XiTop(benchmark::State& st) {
    auto spec = genus0(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        Evaluator ev;
        benchmark::DoNotOptimize(ev.xi_top(spec));
    }
}
BENCHMARK(BM_XiTop)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_EulerGraphSum(benchmark::State& st) {
    auto spec = genus0(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        Evaluator ev;
        benchmark::DoNotOptimize(euler_characteristic(ev, spec).chi);
    }
}
BENCHMARK(BM_EulerGraphSum)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_EulerLevelSums(benchmark::State& st) {
    auto spec = genus0(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        Evaluator ev;
        LevelSums ls(ev);
        benchmark::DoNotOptimize(ls.chi(spec));
    }
}
BENCHMARK(BM_EulerLevelSums)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
