#include <benchmark/benchmark.h>

#include <random>

#include "talktopo/diagram_distance.hpp"
#include "talktopo/models.hpp"
#include "talktopo/persistence_image.hpp"

using namespace talktopo;

namespace {

PersistenceDiagram random_diagram(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PersistenceDiagram d;
  for (std::size_t i = 0; i < n; ++i) {
    const double b = u(gen);
    d.points.push_back({1, b, b + 0.5 * u(gen)});
  }
  d.sort();
  return d;
}

void BM_Rasterize(benchmark::State& state) {
  const auto d = random_diagram(static_cast<std::size_t>(state.range(0)), 1);
  const PivConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(d, 1, cfg).values.data());
}
BENCHMARK(BM_Rasterize)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Wasserstein(benchmark::State& state) {
  const auto a = random_diagram(static_cast<std::size_t>(state.range(0)), 2);
  const auto b = random_diagram(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(a, b));
}
BENCHMARK(BM_Wasserstein)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_TrainLogreg(benchmark::State& state) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(180, 1100);
  const Eigen::VectorXi y = (x.col(0).array() > 0).cast<int>();
  const Hyperparams hp = Hyperparams::defaults(ModelKind::logreg);
  for (auto _ : state) benchmark::DoNotOptimize(train_logreg(x, y, hp).params.data());
}
BENCHMARK(BM_TrainLogreg)->Unit(benchmark::kMillisecond);

}  // namespace
