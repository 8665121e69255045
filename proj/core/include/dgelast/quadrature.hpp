#ifndef DGELAST_QUADRATURE_HPP
#define DGELAST_QUADRATURE_HPP

#include <vector>

#include "dgelast/types.hpp"

namespace dgelast {

/// Quadrature on the reference triangle {(0,0),(1,0),(0,1)}; weights sum to
/// 1/2 and are all positive.
struct TriangleRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0; // exact for all monomials of total degree <= exactness
};

/// Gauss rule on the reference edge [0,1]; weights sum to 1.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness = 0;
};

/// Conical-product Gauss rule, exact to at least the requested order.
TriangleRule triangle_rule(int order);

EdgeRule edge_rule(int order);

/// Maps the 1D rule points onto local edge k of the reference triangle
/// (edge k runs from vertex k to vertex (k+1) mod 3). With reversed=true the
/// parameterization runs the other way, producing the same point set in
/// reversed order.
std::vector<Vec2> trace_points(int ref_edge, const EdgeRule& rule, bool reversed = false);

} // namespace dgelast

#endif
