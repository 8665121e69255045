#ifndef DGELAST_MATERIAL_HPP
#define DGELAST_MATERIAL_HPP

#include "dgelast/types.hpp"

namespace dgelast {

/// Isotropic linear-elastic material, sigma(eps) = lambda tr(eps) I + 2 mu eps.
struct Material {
  double lambda = 0.0; // >= 0
  double mu = 0.0;     // > 0

  bool valid() const { return mu > 0.0 && lambda >= 0.0; }
};

/// Symmetric gradient (G + G^T) / 2.
Mat2 strain(const Mat2& grad_u);

/// Applies the constitutive law; eps must be symmetric to 1e-12.
Mat2 stress(const Material& m, const Mat2& eps);

/// sigma(eps_a) : eps_b. Symmetric in its two tensor arguments.
double energy_pairing(const Material& m, const Mat2& eps_a, const Mat2& eps_b);

} // namespace dgelast

#endif
