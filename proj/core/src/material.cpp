#include "dgelast/material.hpp"

#include <cmath>

#include "dgelast/errors.hpp"

namespace dgelast {

Mat2 strain(const Mat2& grad_u) { return 0.5 * (grad_u + grad_u.transpose()); }

Mat2 stress(const Material& m, const Mat2& eps) {
  if (std::abs(eps(0, 1) - eps(1, 0)) > 1e-12)
    throw ContractError("stress: strain tensor is not symmetric");
  return m.lambda * eps.trace() * Mat2::Identity() + 2.0 * m.mu * eps;
}

double energy_pairing(const Material& m, const Mat2& eps_a, const Mat2& eps_b) {
  return stress(m, eps_a).cwiseProduct(eps_b).sum();
}

} // namespace dgelast
