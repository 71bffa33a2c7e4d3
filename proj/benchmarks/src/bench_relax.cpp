#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "relax/envelope.hpp"
#include "relax/experiments.hpp"
#include "relax/shrink.hpp"
#include "relax/solver1d.hpp"
#include "relax/solver2d.hpp"

using namespace relax;

namespace {

const SampledFunction& double_well_samples() {
  static const SampledFunction f =
      SampledFunction::tabulate(well_double, -2.0, 2.0, 4096);
  return f;
}

const ShrinkTable& double_well_table() {
  static const ShrinkTable t =
      ShrinkTable::from_envelope(build_envelope(double_well_samples()));
  return t;
}

}  // namespace

static void BM_BuildEnvelope4096(benchmark::State& state) {
  const SampledFunction& f = double_well_samples();
  for (auto _ : state) {
    Envelope env = build_envelope(f);
    benchmark::DoNotOptimize(env.breakpoints.data());
  }
}
BENCHMARK(BM_BuildEnvelope4096);

static void BM_Shrink1d(benchmark::State& state) {
  const ShrinkTable& table = double_well_table();
  double z = -3.0;
  double acc = 0.0;
  for (auto _ : state) {
    z = z >= 3.0 ? -3.0 : z + 1e-3;
    acc += shrink1d(table, z, 0.01);
  }
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_Shrink1d);

static void BM_Shrink2d(benchmark::State& state) {
  double nx = -2.0, ny = 1.5;
  double acc = 0.0;
  for (auto _ : state) {
    nx = nx >= 2.0 ? -2.0 : nx + 1e-3;
    ny = ny <= -2.0 ? 1.5 : ny - 7e-4;
    const auto [px, py] = shrink2d(nx, ny, 0.04);
    acc += px + py;
  }
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_Shrink2d);

static void BM_GaussSeidelUStep256(benchmark::State& state) {
  static const Experiment1D e = make_example1(Overrides{.dx = 1.0 / 256.0});
  SolverState s = init_state(e.problem, e.initial_u);
  for (auto _ : state) {
    gauss_seidel_u_step(e.problem, s, e.config.gamma, e.config.h,
                        e.config.gs_sweeps);
    benchmark::DoNotOptimize(s.u.data());
  }
}
BENCHMARK(BM_GaussSeidelUStep256);

static void BM_BregmanInner256(benchmark::State& state) {
  static const Experiment1D e = make_example1(Overrides{.dx = 1.0 / 256.0});
  SolverState s = init_state(e.problem, e.initial_u);
  for (auto _ : state) {
    bregman_inner(e.problem, s, e.config);
    benchmark::DoNotOptimize(s.u.data());
  }
}
BENCHMARK(BM_BregmanInner256);

static void BM_Example1EndToEnd32(benchmark::State& state) {
  for (auto _ : state) {
    Experiment1D e = make_example1(Overrides{.dx = 0.03125});
    e.config.record_history = false;
    SolverState s = init_state(e.problem, e.initial_u);
    const SolveReport rep = solve(e.problem, s, e.config);
    benchmark::DoNotOptimize(rep.final_energy);
  }
}
BENCHMARK(BM_Example1EndToEnd32);

static void BM_Sweep2D50(benchmark::State& state) {
  static const Experiment2D e = make_example6();
  State2D s = init_state_2d(e.grid, e.initial_u);
  for (auto _ : state) {
    update_u_2d(s, e.config);
    update_d_2d(s, e.config);
    update_b_2d(s);
    benchmark::DoNotOptimize(s.u.v.data());
  }
}
BENCHMARK(BM_Sweep2D50);

BENCHMARK_MAIN();
