#include "mmrclust/affinity.hpp"
#include "mmrclust/hier.hpp"
#include "mmrclust/kmeans.hpp"
#include "mmrclust/pairing.hpp"
#include "mmrclust/preprocess.hpp"
#include "mmrclust/projection.hpp"
#include "mmrclust/synthetic.hpp"

#include <benchmark/benchmark.h>

using namespace mmrclust;

namespace {

// roughly the size of the full country panel: 185 countries x 26 years
const DataMatrix& panel()
{
    static const DataMatrix scaled = [] {
        const auto data = synthetic::mmr_regimes(185, 1990, 2015, 1);
        return preprocess(to_matrix(data.dataset)).scaled;
    }();
    return scaled;
}

void BM_Preprocess(benchmark::State& state)
{
    const auto data = synthetic::mmr_regimes(185, 1990, 2015, 1);
    const DataMatrix raw = to_matrix(data.dataset);
    for (auto _ : state) {
        benchmark::DoNotOptimize(preprocess(raw));
    }
}
BENCHMARK(BM_Preprocess);

void BM_KMeans(benchmark::State& state)
{
    const Matrix& x = panel().cells;
    const auto k = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans::fit(x, k, seed++));
    }
}
BENCHMARK(BM_KMeans)->Arg(3)->Arg(8);

void BM_Silhouette(benchmark::State& state)
{
    const Matrix& x = panel().cells;
    const auto labels = kmeans::fit(x, 3, 1).labels;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans::silhouette(x, labels));
    }
}
BENCHMARK(BM_Silhouette);

void BM_Agglomerate(benchmark::State& state)
{
    const Matrix& x = panel().cells;
    const auto linkage = static_cast<hier::Linkage>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hier::agglomerate(x, linkage));
    }
    state.SetLabel(std::string(hier::to_string(linkage)));
}
BENCHMARK(BM_Agglomerate)->DenseRange(0, 3);

void BM_AffinityPropagation(benchmark::State& state)
{
    const Matrix& x = panel().cells;
    for (auto _ : state) {
        benchmark::DoNotOptimize(affinity::fit(x));
    }
}
BENCHMARK(BM_AffinityPropagation)->Unit(benchmark::kMillisecond);

void BM_FindPairs(benchmark::State& state)
{
    const DataMatrix& m = panel();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pairing::find_pairs(m));
    }
}
BENCHMARK(BM_FindPairs)->Unit(benchmark::kMillisecond);

void BM_Pca(benchmark::State& state)
{
    const DataMatrix& m = panel();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pca_2d(m));
    }
}
BENCHMARK(BM_Pca);

}  // namespace
BENCHMARK_MAIN();
