#include <benchmark/benchmark.h>

#include "dgelast/assembly.hpp"
#include "dgelast/mms.hpp"
#include "dgelast/solver.hpp"

namespace {

using namespace dgelast;

const Material kMaterial{0.03, 0.035};

SparseSystem make_system(int level, int alpha, int superpenalty_d) {
  const MmsCase mms = builtin_case_trig(kMaterial);
  const Mesh mesh = classify_boundary(build_structured(level, mms.domain), mms.dirichlet_region);
  const ReferenceBasis basis(1);
  DgConfig config;
  config.alpha = alpha;
  config.superpenalty_d = superpenalty_d;
  return assemble(mesh, basis, config, mms.problem_data(kMaterial));
}

void bm_cg_sipg(benchmark::State& state) {
  const SparseSystem system = make_system(static_cast<int>(state.range(0)), -1, 1);
  SolveOptions options;
  options.symmetric_hint = true;
  options.tol = 1e-10;
  for (auto _ : state) {
    const SolveResult result = solve(system, options);
    benchmark::DoNotOptimize(result.x.data());
    state.counters["iters"] = result.report.iterations;
  }
  state.counters["n_dof"] = system.n_dof;
}

void bm_bicgstab_nipg(benchmark::State& state) {
  const SparseSystem system = make_system(static_cast<int>(state.range(0)), 1, 1);
  SolveOptions options;
  options.tol = 1e-10;
  for (auto _ : state) {
    const SolveResult result = solve(system, options);
    benchmark::DoNotOptimize(result.x.data());
    state.counters["iters"] = result.report.iterations;
  }
  state.counters["n_dof"] = system.n_dof;
}

void bm_direct_superpenalized(benchmark::State& state) {
  const SparseSystem system = make_system(static_cast<int>(state.range(0)), 1, 3);
  for (auto _ : state) {
    const SolveResult result = solve_direct(system, 1e-10);
    benchmark::DoNotOptimize(result.x.data());
  }
  state.counters["n_dof"] = system.n_dof;
}

void bm_matvec(benchmark::State& state) {
  const SparseSystem system = make_system(static_cast<int>(state.range(0)), -1, 1);
  std::vector<double> x(system.n_dof, 1.0), y(system.n_dof, 0.0);
  for (auto _ : state) {
    system.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nnz"] = static_cast<double>(system.nnz());
}

} // namespace

BENCHMARK(bm_cg_sipg)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_bicgstab_nipg)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_direct_superpenalized)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_matvec)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);
