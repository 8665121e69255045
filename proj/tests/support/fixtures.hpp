#ifndef DGELAST_TEST_FIXTURES_HPP
#define DGELAST_TEST_FIXTURES_HPP

#include <vector>

#include "dgelast/assembly.hpp"
#include "dgelast/mms.hpp"
#include "dgelast/solver.hpp"
#include "dgelast/study.hpp"

namespace dgelast::testing {

inline const Material kDefaultMaterial{0.03, 0.035};

/// Mesh for a case: structured level with the case's boundary split applied.
inline Mesh case_mesh(const MmsCase& mms, int level) {
  return classify_boundary(build_structured(level, mms.domain), mms.dirichlet_region);
}

struct Solved {
  std::vector<double> coeffs;
  SolveReport report;
  int n_dof = 0;
};

inline Solved solve_problem(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                            const ProblemData& data, double tol = 1e-10, bool direct = false) {
  const SparseSystem system = assemble(mesh, basis, config, data);
  if (direct) {
    const SolveResult result = solve_direct(system, tol);
    return {result.x, result.report, system.n_dof};
  }
  SolveOptions options;
  options.symmetric_hint = config.alpha == -1;
  options.tol = tol;
  const SolveResult result = solve(system, options);
  return {result.x, result.report, system.n_dof};
}

inline DgConfig make_config(int alpha, double beta, double gamma, int degree, int superpenalty_d = 1) {
  DgConfig config;
  config.alpha = alpha;
  config.beta = beta;
  config.gamma = gamma;
  config.degree = degree;
  config.superpenalty_d = superpenalty_d;
  return config;
}

} // namespace dgelast::testing

#endif
