#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "loadclust/experiments.hpp"
#include "loadclust/features.hpp"
#include "loadclust/kmeans.hpp"
#include "loadclust/rng.hpp"
#include "loadclust/validity.hpp"

using namespace loadclust;

namespace {

FeatureMatrix random_matrix(std::size_t rows, std::size_t h, std::uint64_t seed) {
    auto rng = make_engine(seed, 0);
    FeatureMatrix m;
    for (std::size_t i = 0; i < h; ++i) m.attribute_names.push_back("a" + std::to_string(i));
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> row(h);
        for (auto& v : row) v = uniform01(rng);
        m.row_ids.push_back("H" + std::to_string(r));
        m.rows.push_back(std::move(row));
    }
    return m;
}

void BM_KMeans(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 1);
    const int k = static_cast<int>(state.range(2));
    KMeansConfig config;
    config.restarts = 10;
    config.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans(m, k, config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KMeans)
    ->Args({180, 3, 4})
    ->Args({180, 7, 4})
    ->Args({1000, 3, 4})
    ->Args({1000, 3, 10})
    ->Unit(benchmark::kMillisecond);

void BM_IndexReport(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 3, 2);
    KMeansConfig config;
    config.restarts = 5;
    config.seed = 2;
    const auto c = kmeans(m, 4, config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(index_report(c, m, SingletonPolicy::Suppress));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexReport)->Arg(180)->Arg(1000)->Arg(5000)->Unit(benchmark::kMicrosecond);

void BM_SweepClusters(benchmark::State& state) {
    const auto m = random_matrix(180, 3, 3);
    KMeansConfig config;
    config.restarts = 10;
    config.seed = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_clusters(m, 2, static_cast<int>(state.range(0)), config));
    }
}
BENCHMARK(BM_SweepClusters)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveOracle(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 2, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exhaustive_oracle(m, 3));
    }
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
