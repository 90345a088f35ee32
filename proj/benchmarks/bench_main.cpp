#include <benchmark/benchmark.h>

#include "cocite/ingest.hpp"
#include "cocite/layout.hpp"
#include "cocite/linalg.hpp"
#include "cocite/matrix.hpp"
#include "cocite/mds.hpp"
#include "cocite/proximity.hpp"
#include "generators.hpp"

using namespace cocite;
using namespace cocite::testing;

static void BM_MdsCities(benchmark::State& state) {
  const ProximityMatrix cities = cities_dataset();
  MdsConfig cfg;
  cfg.level = static_cast<MeasurementLevel>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mds(cities, cfg));
}
BENCHMARK(BM_MdsCities)->DenseRange(0, 2)->ArgName("level");

static void BM_MdsRandom(benchmark::State& state) {
  Rng rng(1);
  const ProximityMatrix p = random_dissimilarity(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mds(p));
}
BENCHMARK(BM_MdsRandom)->RangeMultiplier(2)->Range(8, 128);

static void BM_Jacobi(benchmark::State& state) {
  Rng rng(2);
  const Eigen::MatrixXd r = random_correlation(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_symmetric(r));
}
BENCHMARK(BM_Jacobi)->Arg(10)->Arg(30)->Arg(60);

static void BM_KamadaKawai(benchmark::State& state) {
  Rng rng(3);
  const int n = static_cast<int>(state.range(0));
  const WeightedGraph g = random_connected_graph(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(kamada_kawai(g));
}
BENCHMARK(BM_KamadaKawai)->Arg(10)->Arg(25)->Arg(50);

static void BM_Cooccurrence(benchmark::State& state) {
  Rng rng(4);
  const OccurrenceMatrix a = random_occurrence(rng, static_cast<int>(state.range(0)), 24, 3, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(cooccurrence(a, DiagonalPolicy::Raw));
}
BENCHMARK(BM_Cooccurrence)->Arg(279)->Arg(5000);

static void BM_PearsonColumns(benchmark::State& state) {
  Rng rng(5);
  const OccurrenceMatrix a = random_varying_occurrence(rng, 279, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(pearson_columns(a));
}
BENCHMARK(BM_PearsonColumns)->Arg(24)->Arg(100);
BENCHMARK_MAIN();
