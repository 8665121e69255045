#include "dgelast/basis.hpp"

#include <cmath>

#include "dgelast/errors.hpp"

namespace dgelast {

namespace {

double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

} // namespace

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree), n_local_(basis_dimension(degree)) {
  if (degree < 1 || degree > kMaxBasisDegree)
    throw CapabilityError("ReferenceBasis: degree " + std::to_string(degree) + " outside supported range [1, " +
                          std::to_string(kMaxBasisDegree) + "]");

  nodes_.reserve(n_local_);
  for (int j = 0; j <= degree; ++j)
    for (int i = 0; i <= degree - j; ++i)
      nodes_.emplace_back(static_cast<double>(i) / degree, static_cast<double>(j) / degree);

  monomials_.reserve(n_local_);
  for (int d = 0; d <= degree; ++d)
    for (int b = 0; b <= d; ++b)
      monomials_.emplace_back(d - b, b);

  // Invert the Vandermonde matrix; equispaced lattices are well conditioned
  // up to the supported degree.
  Eigen::MatrixXd vandermonde(n_local_, n_local_);
  for (int k = 0; k < n_local_; ++k)
    for (int m = 0; m < n_local_; ++m)
      vandermonde(k, m) = int_pow(nodes_[k].x(), monomials_[m].first) * int_pow(nodes_[k].y(), monomials_[m].second);
  coeffs_ = vandermonde.fullPivLu().inverse();
}

Eigen::VectorXd ReferenceBasis::eval(const Vec2& p) const {
  Eigen::VectorXd mono(n_local_);
  for (int m = 0; m < n_local_; ++m)
    mono(m) = int_pow(p.x(), monomials_[m].first) * int_pow(p.y(), monomials_[m].second);
  return coeffs_.transpose() * mono;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> ReferenceBasis::eval_grad(const Vec2& p) const {
  Eigen::MatrixXd dmono(n_local_, 2);
  for (int m = 0; m < n_local_; ++m) {
    const auto [a, b] = monomials_[m];
    dmono(m, 0) = a == 0 ? 0.0 : a * int_pow(p.x(), a - 1) * int_pow(p.y(), b);
    dmono(m, 1) = b == 0 ? 0.0 : b * int_pow(p.x(), a) * int_pow(p.y(), b - 1);
  }
  return coeffs_.transpose() * dmono;
}

} // namespace dgelast
