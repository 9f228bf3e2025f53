// SPDX-License-Identifier: Apache-2.0
//
// Kernel benchmarks: serial reference vs OpenMP execution of the three
// assembly kernels, plus the end-to-end fit. Run via the wdmd-bench target;
// pass --benchmark_filter=gram etc. to narrow.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "wdmd/bench.hpp"
#include "wdmd/projection.hpp"
#include "wdmd/wdmd.hpp"

namespace {

using namespace wdmd;

struct Workload {
  SnapshotSet snaps;
  Window window{0.0, 100.0};
  BasisSet trial_basis;
  BasisSet test_basis;
  TrialProjection projection;

  Workload()
      : snaps(sample_trajectory(toy_oscillator_spec(),
                                geometric_grid(2001, 0.0, 100.0, 10.0))),
        trial_basis(build_layout({400}, {1.0}, 2, window)),
        test_basis(build_layout({800}, {1.0}, 2, window)),
        projection(project(snaps, trial_basis, window)) {}
};

const Workload& workload() {
  static const Workload w;
  return w;
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void bm_data_inner_products(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        data_inner_products(w.snaps, w.trial_basis, w.window, exec_of(state)));
  }
}

void bm_gram_matrix(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gram_matrix(w.trial_basis, w.window, exec_of(state)));
  }
}

void bm_weak_pair(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assemble_weak_pair(w.projection, w.test_basis, w.window,
                           exec_of(state)));
  }
}

void bm_fit(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(w.snaps, LayoutSpec{{400}, {1.0}, 2},
                                 LayoutSpec{{800}, {1.0}, 2}, w.window, 1.0,
                                 1e-10, exec_of(state)));
  }
}

// Arg 0 = serial reference, 1 = OpenMP kernels.
BENCHMARK(bm_data_inner_products)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gram_matrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_weak_pair)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
