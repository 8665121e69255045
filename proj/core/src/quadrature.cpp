#include "dgelast/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dgelast/errors.hpp"

namespace dgelast {

namespace {

constexpr int kMaxOrder = 40;

struct Rule1d {
  std::vector<double> points;
  std::vector<double> weights;
};

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal recurrence
// matrix, weights are mu0 times the squared first eigenvector components.
Rule1d golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag_sq, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    jacobi(i, i) = diag[i];
    if (i + 1 < n) jacobi(i, i + 1) = jacobi(i + 1, i) = std::sqrt(offdiag_sq[i + 1]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  Rule1d rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

// n-point Gauss-Legendre on [0,1], exact to degree 2n-1.
Rule1d gauss_legendre_01(int n) {
  std::vector<double> diag(n, 0.0), off(n, 0.0);
  for (int k = 1; k < n; ++k) off[k] = static_cast<double>(k) * k / (4.0 * k * k - 1.0);
  Rule1d rule = golub_welsch(diag, off, 2.0);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = 0.5 * (rule.points[i] + 1.0);
    rule.weights[i] *= 0.5;
  }
  return rule;
}

// n-point Gauss-Jacobi for weight (1-x) on [0,1], exact to degree 2n-1.
Rule1d gauss_jacobi10_01(int n) {
  std::vector<double> diag(n, 0.0), off(n, 0.0);
  diag[0] = -1.0 / 3.0;
  for (int k = 1; k < n; ++k) {
    diag[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    off[k] = k * (k + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 1.0));
  }
  Rule1d rule = golub_welsch(diag, off, 2.0);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = 0.5 * (rule.points[i] + 1.0);
    rule.weights[i] *= 0.25;
  }
  return rule;
}

int points_for_order(int order) { return (order + 2) / 2; }

void check_order(int order, const char* where) {
  if (order < 1 || order > kMaxOrder)
    throw CapabilityError(std::string(where) + ": order " + std::to_string(order) + " outside supported range [1, " +
                          std::to_string(kMaxOrder) + "]");
}

} // namespace

TriangleRule triangle_rule(int order) {
  check_order(order, "triangle_rule");
  const int n = points_for_order(order);
  const Rule1d gl = gauss_legendre_01(n);
  const Rule1d gj = gauss_jacobi10_01(n);

  // Duffy substitution xi = (1-eta) u: the (1-eta) Jacobian is absorbed by
  // the Jacobi weight, so the product rule is exact to degree 2n-1.
  TriangleRule rule;
  rule.exactness = 2 * n - 1;
  rule.points.reserve(static_cast<std::size_t>(n) * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      rule.points.emplace_back((1.0 - gj.points[j]) * gl.points[i], gj.points[j]);
      rule.weights.push_back(gl.weights[i] * gj.weights[j]);
    }
  }
  return rule;
}

EdgeRule edge_rule(int order) {
  check_order(order, "edge_rule");
  const int n = points_for_order(order);
  Rule1d gl = gauss_legendre_01(n);
  EdgeRule rule;
  rule.points = std::move(gl.points);
  rule.weights = std::move(gl.weights);
  rule.exactness = 2 * n - 1;
  return rule;
}

std::vector<Vec2> trace_points(int ref_edge, const EdgeRule& rule, bool reversed) {
  if (ref_edge < 0 || ref_edge > 2) throw ContractError("trace_points: edge index must be in {0,1,2}");
  std::vector<Vec2> points;
  points.reserve(rule.points.size());
  for (double t : rule.points) {
    if (reversed) t = 1.0 - t;
    switch (ref_edge) {
      case 0: points.emplace_back(t, 0.0); break;
      case 1: points.emplace_back(1.0 - t, t); break;
      default: points.emplace_back(0.0, 1.0 - t); break;
    }
  }
  return points;
}

} // namespace dgelast
