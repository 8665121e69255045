#ifndef DGELAST_SOLVER_HPP
#define DGELAST_SOLVER_HPP

#include <cmath>
#include <span>
#include <vector>

#include "dgelast/sparse.hpp"

namespace dgelast {

enum class KrylovMethod { cg, bicgstab, direct };

struct SolveReport {
  int iterations = 0;
  double residual = 0.0; // true relative residual ||b - A x|| / ||b||
  KrylovMethod method = KrylovMethod::cg;
  bool converged = false;
};

struct SolveOptions {
  bool symmetric_hint = false;
  double tol = 1e-10; // relative residual target, in (0, 1)
  int max_iter = 0;   // 0 picks default_max_iter(n_dof)
  bool use_preconditioner = true;
};

inline int default_max_iter(int n_dof) {
  return static_cast<int>(20.0 * std::sqrt(static_cast<double>(n_dof))) + 2000;
}

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

/// Preconditioned conjugate gradients (symmetric_hint) or BiCGStab, both
/// with a block-Jacobi preconditioner built from the system's element
/// blocks. Iterations run in refinement cycles: each cycle chases the
/// recursive residual, then restarts from a recomputed true residual, so
/// the loop stops either converged or stagnated at the double-precision
/// floor. Returns the best iterate with converged=false when the target is
/// out of reach; throws SolverBreakdownError on a vanishing inner product.
SolveResult solve(const SparseSystem& system, const SolveOptions& options = {});

/// Sparse LU factorization with iterative refinement, for systems whose
/// penalty scaling puts them beyond Krylov reach (superpenalized runs).
/// report.iterations counts refinement sweeps.
SolveResult solve_direct(const SparseSystem& system, double tol = 1e-10);

/// Smallest true relative residual any double-precision iterate can be
/// certified for: eps * ||A||_inf * ||x||_2 / ||b||_2. Residuals at or near
/// this level mean the solve is as converged as the arithmetic allows.
double residual_floor_estimate(const SparseSystem& system, std::span<const double> x);

const char* method_name(KrylovMethod method);

} // namespace dgelast

#endif
