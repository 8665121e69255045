#include <benchmark/benchmark.h>

#include "dgelast/assembly.hpp"
#include "dgelast/mms.hpp"

namespace {

using namespace dgelast;

const Material kMaterial{0.03, 0.035};

void bm_assemble(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const int degree = static_cast<int>(state.range(1));
  const MmsCase mms = builtin_case_trig(kMaterial);
  const Mesh mesh = classify_boundary(build_structured(level, mms.domain), mms.dirichlet_region);
  const ReferenceBasis basis(degree);
  DgConfig config;
  config.alpha = -1;
  config.degree = degree;
  const ProblemData data = mms.problem_data(kMaterial);

  for (auto _ : state) {
    const SparseSystem system = assemble(mesh, basis, config, data);
    benchmark::DoNotOptimize(system.vals.data());
  }
  state.counters["n_dof"] = static_cast<double>(n_dof_total(mesh, basis));
}

void bm_local_volume(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  const ReferenceBasis basis(degree);
  const TriangleRule rule = triangle_rule(2 * degree + 2);
  const ElementGeometry geom = element_geometry(mesh, 0);

  for (auto _ : state) {
    const Eigen::MatrixXd block = local_volume_matrix(geom, kMaterial, basis, rule);
    benchmark::DoNotOptimize(block.data());
  }
}

} // namespace

BENCHMARK(bm_assemble)->Args({2, 1})->Args({3, 1})->Args({2, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_local_volume)->Arg(1)->Arg(2)->Arg(4);
