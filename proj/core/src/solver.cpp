#include "dgelast/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>

#include "dgelast/errors.hpp"

namespace dgelast {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

class BlockJacobi {
public:
  BlockJacobi(const SparseSystem& system, bool enabled) : n_(system.n_dof), bs_(enabled ? system.block_size : 0) {
    if (!enabled) return;
    if (bs_ < 1 || n_ % bs_ != 0) throw ContractError("solve: block_size does not divide n_dof");
    const int n_blocks = n_ / bs_;
    lu_.reserve(n_blocks);
    Eigen::MatrixXd block(bs_, bs_);
    for (int b = 0; b < n_blocks; ++b) {
      block.setZero();
      for (int r = 0; r < bs_; ++r) {
        const int row = b * bs_ + r;
        for (std::int64_t k = system.row_offsets[row]; k < system.row_offsets[row + 1]; ++k) {
          const int col = system.cols[k];
          if (col >= b * bs_ && col < (b + 1) * bs_) block(r, col - b * bs_) = system.vals[k];
        }
      }
      lu_.emplace_back(block);
    }
  }

  void apply(const std::vector<double>& r, std::vector<double>& z) const {
    if (lu_.empty()) {
      z = r;
      return;
    }
    Eigen::VectorXd local(bs_);
    for (std::size_t b = 0; b < lu_.size(); ++b) {
      for (int i = 0; i < bs_; ++i) local(i) = r[b * bs_ + i];
      const Eigen::VectorXd sol = lu_[b].solve(local);
      for (int i = 0; i < bs_; ++i) z[b * bs_ + i] = sol(i);
    }
  }

private:
  int n_;
  int bs_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

// b - A x, written into r; returns its norm.
double true_residual(const SparseSystem& system, const std::vector<double>& x, std::vector<double>& r) {
  system.multiply(x, r);
  for (int i = 0; i < system.n_dof; ++i) r[i] = system.rhs[i] - r[i];
  return norm(r);
}

constexpr double kBreakdownFloor = 1e-300;

// Preconditioned CG; r holds the current residual, x is updated in place.
int run_cg(const SparseSystem& system, const BlockJacobi& precond, std::vector<double>& x, std::vector<double>& r,
           double abs_target, int budget) {
  const int n = system.n_dof;
  std::vector<double> z(n), p(n), ap(n);
  precond.apply(r, z);
  p = z;
  double rho = dot(r, z);
  int it = 0;
  while (it < budget && norm(r) > abs_target) {
    system.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!std::isfinite(pap) || std::abs(pap) < kBreakdownFloor) throw SolverBreakdownError("cg: p^T A p vanished");
    const double alpha = rho / pap;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    precond.apply(r, z);
    const double rho_next = dot(r, z);
    if (!std::isfinite(rho_next) || std::abs(rho) < kBreakdownFloor) throw SolverBreakdownError("cg: rho vanished");
    const double beta = rho_next / rho;
    rho = rho_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
  }
  return it;
}

int run_bicgstab(const SparseSystem& system, const BlockJacobi& precond, std::vector<double>& x,
                 std::vector<double>& r, double abs_target, int budget) {
  const int n = system.n_dof;
  const std::vector<double> r_shadow = r;
  std::vector<double> p(n, 0.0), v(n, 0.0), p_hat(n), s(n), s_hat(n), t(n);
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  int it = 0;
  while (it < budget && norm(r) > abs_target) {
    const double rho_next = dot(r_shadow, r);
    if (!std::isfinite(rho_next) || std::abs(rho_next) < kBreakdownFloor)
      throw SolverBreakdownError("bicgstab: rho vanished");
    const double beta = (rho_next / rho) * (alpha / omega);
    rho = rho_next;
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    precond.apply(p, p_hat);
    system.multiply(p_hat, v);
    const double rsv = dot(r_shadow, v);
    if (!std::isfinite(rsv) || std::abs(rsv) < kBreakdownFloor)
      throw SolverBreakdownError("bicgstab: r0^T v vanished");
    alpha = rho / rsv;
    for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    ++it;
    if (norm(s) <= abs_target) {
      for (int i = 0; i < n; ++i) x[i] += alpha * p_hat[i];
      r = s;
      break;
    }
    precond.apply(s, s_hat);
    system.multiply(s_hat, t);
    const double tt = dot(t, t);
    if (!std::isfinite(tt) || std::abs(tt) < kBreakdownFloor) throw SolverBreakdownError("bicgstab: t^T t vanished");
    omega = dot(t, s) / tt;
    if (!std::isfinite(omega) || std::abs(omega) < kBreakdownFloor)
      throw SolverBreakdownError("bicgstab: omega vanished");
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p_hat[i] + omega * s_hat[i];
      r[i] = s[i] - omega * t[i];
    }
  }
  return it;
}

void check_system(const SparseSystem& system) {
  if (system.n_dof <= 0 || system.row_offsets.size() != static_cast<std::size_t>(system.n_dof) + 1)
    throw ContractError("solve: malformed system");
}

} // namespace

const char* method_name(KrylovMethod method) {
  switch (method) {
    case KrylovMethod::cg: return "cg";
    case KrylovMethod::bicgstab: return "bicgstab";
    default: return "direct";
  }
}

SolveResult solve(const SparseSystem& system, const SolveOptions& options) {
  check_system(system);
  if (!(options.tol > 0.0 && options.tol < 1.0)) throw ContractError("solve: tol must be in (0, 1)");

  const int n = system.n_dof;
  const int max_iter = options.max_iter > 0 ? options.max_iter : default_max_iter(n);
  const BlockJacobi precond(system, options.use_preconditioner);

  SolveResult result;
  result.x.assign(n, 0.0);
  result.report.method = options.symmetric_hint ? KrylovMethod::cg : KrylovMethod::bicgstab;

  const double norm_b = norm(system.rhs);
  std::vector<double> r(n);
  if (norm_b == 0.0) {
    result.report.converged = true;
    return result;
  }
  const double abs_target = options.tol * norm_b;

  r = system.rhs; // x = 0 start
  int used = 0;
  double res = norm_b;
  std::vector<double> best_x = result.x;
  double best_res = res;
  while (used < max_iter) {
    // Chase the recursive residual a few orders at a time, then restart
    // from a recomputed residual; stops converged or at the roundoff floor.
    const double cycle_target = std::max(abs_target, 1e-5 * res);
    const int spent = options.symmetric_hint
                          ? run_cg(system, precond, result.x, r, cycle_target, max_iter - used)
                          : run_bicgstab(system, precond, result.x, r, cycle_target, max_iter - used);
    used += spent;
    const double prev = res;
    res = true_residual(system, result.x, r);
    if (res < best_res) {
      best_res = res;
      best_x = result.x;
    }
    if (res <= abs_target) break;
    if (spent == 0 || res > 0.5 * prev) break; // stagnated
  }

  result.x = std::move(best_x);
  result.report.iterations = used;
  result.report.residual = true_residual(system, result.x, r) / norm_b;
  result.report.converged = result.report.residual <= options.tol;
  return result;
}

SolveResult solve_direct(const SparseSystem& system, double tol) {
  check_system(system);
  if (!(tol > 0.0 && tol < 1.0)) throw ContractError("solve_direct: tol must be in (0, 1)");

  const int n = system.n_dof;
  SolveResult result;
  result.x.assign(n, 0.0);
  result.report.method = KrylovMethod::direct;

  const double norm_b = norm(system.rhs);
  if (norm_b == 0.0) {
    result.report.converged = true;
    return result;
  }

  Eigen::SparseMatrix<double> matrix(n, n);
  {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(system.vals.size());
    for (int row = 0; row < n; ++row)
      for (std::int64_t k = system.row_offsets[row]; k < system.row_offsets[row + 1]; ++k)
        triplets.emplace_back(row, system.cols[k], system.vals[k]);
    matrix.setFromTriplets(triplets.begin(), triplets.end());
  }

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(matrix);
  if (lu.info() != Eigen::Success) throw SolverBreakdownError("solve_direct: factorization failed");

  const Eigen::Map<const Eigen::VectorXd> b(system.rhs.data(), n);
  Eigen::VectorXd x = lu.solve(b);
  for (int i = 0; i < n; ++i) result.x[i] = x(i);

  std::vector<double> r(n);
  double res = true_residual(system, result.x, r);
  int sweeps = 0;
  while (res > tol * norm_b && sweeps < 5) {
    const Eigen::Map<const Eigen::VectorXd> rv(r.data(), n);
    const Eigen::VectorXd dx = lu.solve(rv);
    for (int i = 0; i < n; ++i) result.x[i] += dx(i);
    ++sweeps;
    const double prev = res;
    res = true_residual(system, result.x, r);
    if (res > 0.5 * prev) break; // at the floor
  }

  result.report.iterations = sweeps;
  result.report.residual = res / norm_b;
  result.report.converged = result.report.residual <= tol;
  return result;
}

double residual_floor_estimate(const SparseSystem& system, std::span<const double> x) {
  check_system(system);
  double inf_norm = 0.0;
  for (int row = 0; row < system.n_dof; ++row) {
    double row_sum = 0.0;
    for (std::int64_t k = system.row_offsets[row]; k < system.row_offsets[row + 1]; ++k)
      row_sum += std::abs(system.vals[k]);
    inf_norm = std::max(inf_norm, row_sum);
  }
  double norm_x = 0.0, norm_b = 0.0;
  for (int i = 0; i < system.n_dof; ++i) {
    norm_x += x[i] * x[i];
    norm_b += system.rhs[i] * system.rhs[i];
  }
  if (norm_b == 0.0) return 0.0;
  return std::numeric_limits<double>::epsilon() * inf_norm * std::sqrt(norm_x) / std::sqrt(norm_b);
}

} // namespace dgelast
