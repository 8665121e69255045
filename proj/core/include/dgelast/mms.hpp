#ifndef DGELAST_MMS_HPP
#define DGELAST_MMS_HPP

#include "dgelast/assembly.hpp"
#include "dgelast/material.hpp"
#include "dgelast/mesh.hpp"
#include "dgelast/types.hpp"

namespace dgelast {

/// Manufactured-solution case: exact displacement with matching forcing and
/// boundary data.
struct MmsCase {
  Rect domain;
  VectorField u;
  TensorField grad_u;
  VectorField body_force;
  VectorField dirichlet; // trace of u
  BoundaryFlux neumann;  // sigma(u) n
  BoundaryPredicate dirichlet_region;

  ProblemData problem_data(const Material& material) const {
    return ProblemData{body_force, dirichlet, neumann, {material}};
  }
};

/// Trigonometric case on (-1,1)^2 with homogeneous Dirichlet data on the
/// whole boundary: u = (cos(pi x/2) cos(pi y/2), cos(pi x/2) cos(pi y/2)).
MmsCase builtin_case_trig(const Material& material);

/// Linear case u = (x, y) with zero forcing; lies in every discrete space.
MmsCase builtin_case_linear(const Material& material);

} // namespace dgelast

#endif
