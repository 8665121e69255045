#ifndef DGELAST_BASIS_HPP
#define DGELAST_BASIS_HPP

#include <vector>

#include "dgelast/types.hpp"

namespace dgelast {

inline constexpr int kMaxBasisDegree = 4;

constexpr int basis_dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Nodal Lagrange basis of degree r on the reference triangle, with nodes on
/// the equispaced lattice (i/r, j/r), i + j <= r, ordered row by row from the
/// bottom (so the first three nodes of every degree are the vertices in the
/// order (0,0), (1,0), (0,1) for r = 1).
class ReferenceBasis {
public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int n_local() const { return n_local_; }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  /// Values of all basis functions at a reference point.
  Eigen::VectorXd eval(const Vec2& p) const;

  /// Reference-coordinate gradients, one row per basis function.
  Eigen::Matrix<double, Eigen::Dynamic, 2> eval_grad(const Vec2& p) const;

private:
  int degree_;
  int n_local_;
  std::vector<Vec2> nodes_;
  std::vector<std::pair<int, int>> monomials_; // exponent pairs (a, b)
  Eigen::MatrixXd coeffs_;                     // column i = monomial coefficients of basis i
};

} // namespace dgelast

#endif
