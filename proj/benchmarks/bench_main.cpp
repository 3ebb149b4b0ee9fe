#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qcqp/conic.hpp"
#include "qcqp/features.hpp"
#include "qcqp/generator.hpp"
#include "qcqp/learn.hpp"
#include "qcqp/relax.hpp"
#include "qcqp/rng.hpp"

namespace {

using namespace qcqp;

QcqpInstance sample_instance(int n, int m) {
  gen::GenConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.N = 8;
  cfg.master_seed = 42;
  return gen::gen_single_instance(cfg, 6);
}

void BM_GenerateBatch(benchmark::State& state) {
  gen::GenConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.m = 2;
  cfg.N = 16;
  cfg.master_seed = 3;
  for (auto _ : state)
    benchmark::DoNotOptimize(gen::gen_instance_batch(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.N);
}
BENCHMARK(BM_GenerateBatch)->Arg(5)->Arg(20);

void BM_SolveLp(benchmark::State& state) {
  const auto inst = sample_instance(static_cast<int>(state.range(0)), 2);
  const auto prog = relax::build_lp(inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(conic::solve(prog));
}
BENCHMARK(BM_SolveLp)->Arg(5)->Arg(10)->Arg(20);

void BM_SolveSdp(benchmark::State& state) {
  const auto inst = sample_instance(static_cast<int>(state.range(0)), 2);
  const auto prog = relax::build_sdp(inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(conic::solve(prog));
}
BENCHMARK(BM_SolveSdp)->Arg(5)->Arg(10);

void BM_SolveSdpPrime(benchmark::State& state) {
  const auto inst = sample_instance(static_cast<int>(state.range(0)), 2);
  const auto prog = relax::build_sdp_prime(inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(conic::solve(prog));
}
BENCHMARK(BM_SolveSdpPrime)->Arg(5)->Arg(10);

void BM_Featurize(benchmark::State& state) {
  const auto inst = sample_instance(10, 5);
  const auto schema = static_cast<features::Schema>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(features::extract(inst, schema));
}
BENCHMARK(BM_Featurize)
    ->Arg(static_cast<int>(features::Schema::FDD))
    ->Arg(static_cast<int>(features::Schema::SDD))
    ->Arg(static_cast<int>(features::Schema::DI));

struct TrainingData {
  Matrix X;
  Vector y_cls;
  Vector y_reg;
};

TrainingData synthetic_data(int rows, int cols) {
  TrainingData data;
  data.X.resize(rows, cols);
  data.y_cls.resize(rows);
  data.y_reg.resize(rows);
  RngStream rng(7, 0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) data.X(i, j) = rng.uniform(-1.0, 1.0);
    data.y_reg[i] = data.X(i, 0) - 0.5 * data.X(i, 1);
    data.y_cls[i] = data.y_reg[i] > 0 ? 1.0 : 0.0;
  }
  return data;
}

void BM_FitTree(benchmark::State& state) {
  const auto data = synthetic_data(static_cast<int>(state.range(0)), 55);
  learn::Hyperparams hp;
  hp.max_depth = 8;
  for (auto _ : state)
    benchmark::DoNotOptimize(learn::fit_tree(data.X, data.y_reg, false, hp));
}
BENCHMARK(BM_FitTree)->Arg(200)->Arg(1000);

void BM_FitForest(benchmark::State& state) {
  const auto data = synthetic_data(500, 27);
  learn::Hyperparams hp;
  hp.trees = static_cast<int>(state.range(0));
  hp.max_depth = 8;
  for (auto _ : state)
    benchmark::DoNotOptimize(learn::fit(data.X, data.y_cls,
                                        learn::ModelKind::RfClassifier, hp, 1));
}
BENCHMARK(BM_FitForest)->Arg(25)->Arg(100);

void BM_FitBoosted(benchmark::State& state) {
  const auto data = synthetic_data(500, 27);
  learn::Hyperparams hp;
  hp.trees = static_cast<int>(state.range(0));
  hp.max_depth = 4;
  for (auto _ : state)
    benchmark::DoNotOptimize(learn::fit(data.X, data.y_reg,
                                        learn::ModelKind::GbRegressor, hp, 1));
}
BENCHMARK(BM_FitBoosted)->Arg(25)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
