#include <benchmark/benchmark.h>

#include <random>

#include "talktopo/metric_space.hpp"
#include "talktopo/persistence.hpp"
#include "talktopo/rips_filtration.hpp"

using namespace talktopo;

namespace {

PointCloud gaussian_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<double> coords(n * dim);
  for (auto& x : coords) x = normal(gen);
  return PointCloud("bench", dim, std::move(coords));
}

void BM_PairwiseDistances(benchmark::State& state) {
  const auto cloud = gaussian_cloud(static_cast<std::size_t>(state.range(0)), 512, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(cloud, Metric::angular));
}
BENCHMARK(BM_PairwiseDistances)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_BuildFiltration(benchmark::State& state) {
  const auto dm = pairwise_distances(gaussian_cloud(static_cast<std::size_t>(state.range(0)), 16, 2), Metric::angular);
  for (auto _ : state) {
    auto f = build_filtration(dm, 1);
    benchmark::DoNotOptimize(f.size());
  }
}
BENCHMARK(BM_BuildFiltration)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Persistence(benchmark::State& state) {
  const auto dm = pairwise_distances(gaussian_cloud(static_cast<std::size_t>(state.range(0)), 16, 3), Metric::angular);
  const auto f = build_filtration(dm, 1);
  PersistenceOptions opts;
  opts.algorithm = state.range(1) ? ReductionAlgorithm::boundary : ReductionAlgorithm::coboundary;
  for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(f, opts).points.size());
  state.SetLabel(state.range(1) ? "boundary" : "coboundary");
}
BENCHMARK(BM_Persistence)->Args({60, 0})->Args({60, 1})->Args({150, 0})->Args({150, 1})->Unit(benchmark::kMillisecond);

void BM_UnionFindH0(benchmark::State& state) {
  const auto dm = pairwise_distances(gaussian_cloud(static_cast<std::size_t>(state.range(0)), 16, 4), Metric::angular);
  const auto f = build_filtration(dm, 0);
  for (auto _ : state) benchmark::DoNotOptimize(compute_h0_unionfind(f).points.size());
}
BENCHMARK(BM_UnionFindH0)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
