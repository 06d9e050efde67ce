// Whole-vector reference smoother vs. the window-local OpenMP smoother.
// Args: {level, halo mode (0 = 2, 1 = 4, 2 = global)}.

#include "fmgsr/problem.hpp"
#include "fmgsr/reference.hpp"
#include "fmgsr/smoothers.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace fmgsr;

constexpr HaloMode kModes[] = {HaloMode::Halo2, HaloMode::Halo4, HaloMode::Global};

struct Setup {
  Hierarchy hierarchy;
  Field u;
  Field f;
  SmootherConfig cfg;

  explicit Setup(const benchmark::State& state)
      : hierarchy(2, static_cast<int>(state.range(0))),
        u(static_cast<int>(state.range(0))),
        f(manufactured_rhs(static_cast<int>(state.range(0)), 1)) {
    cfg.halo = kModes[state.range(1)];
    cfg.sweeps = 2;
  }
};

void label(benchmark::State& state) {
  state.SetLabel("halo=" + to_string(kModes[state.range(1)]));
  state.SetItemsProcessed(state.iterations() * level_size(static_cast<int>(state.range(0))));
}

void BM_Reference(benchmark::State& state) {
  Setup s(state);
  for (auto _ : state) benchmark::DoNotOptimize(reference::smooth_level(s.hierarchy, s.u, s.f, s.cfg));
  label(state);
}

void BM_Serial(benchmark::State& state) {
  Setup s(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth_level(s.hierarchy, s.u, s.f, s.cfg, std::nullopt, Execution::Serial));
  }
  label(state);
}

void BM_Parallel(benchmark::State& state) {
  Setup s(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth_level(s.hierarchy, s.u, s.f, s.cfg, std::nullopt, Execution::Parallel));
  }
  label(state);
}

// The reference copies the whole level per patch, so it is quadratic in N.
BENCHMARK(BM_Reference)->ArgsProduct({{8, 10, 12, 14}, {0, 1, 2}});
BENCHMARK(BM_Serial)->ArgsProduct({{8, 10, 12, 14, 16, 18, 20}, {0, 1, 2}});
BENCHMARK(BM_Parallel)->ArgsProduct({{8, 10, 12, 14, 16, 18, 20}, {0, 1, 2}});

} // namespace

BENCHMARK_MAIN();
