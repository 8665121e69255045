#ifndef DGELAST_ASSEMBLY_HPP
#define DGELAST_ASSEMBLY_HPP

#include <functional>
#include <span>
#include <vector>

#include "dgelast/basis.hpp"
#include "dgelast/material.hpp"
#include "dgelast/mesh.hpp"
#include "dgelast/quadrature.hpp"
#include "dgelast/sparse.hpp"
#include "dgelast/types.hpp"

namespace dgelast {

/// Interior-penalty variant and penalty scaling.
///
/// alpha selects the adjoint face term: -1 symmetric (SIPG), 0 incomplete
/// (IIPG), +1 nonsymmetric (NIPG). The jump penalties scale as
/// beta r^2 / h^d and gamma r^2 / h^d; d = 1 is the standard method,
/// d >= 3 superpenalizes. h is the global mesh diameter by default, the
/// edge length in per_edge mode.
struct DgConfig {
  enum class PenaltyHMode { global, per_edge };

  int alpha = -1;
  double beta = 125.0;
  double gamma = 0.0;
  int degree = 1;
  int superpenalty_d = 1;
  PenaltyHMode penalty_h_mode = PenaltyHMode::global;

  void validate() const;
};

using VectorField = std::function<Vec2(const Vec2&)>;
using TensorField = std::function<Mat2(const Vec2&)>;
/// Boundary flux data, evaluated at (x, outward unit normal).
using BoundaryFlux = std::function<Vec2(const Vec2&, const Vec2&)>;

struct ProblemData {
  VectorField body_force;
  VectorField dirichlet;
  BoundaryFlux neumann;
  std::vector<Material> materials; // one entry (uniform) or one per element

  const Material& material_for(int element) const {
    return materials.size() == 1 ? materials.front() : materials[static_cast<std::size_t>(element)];
  }
};

/// Global dof index of (element, local node, displacement component);
/// element-major, node-major, component fastest.
inline int global_dof(int element, int n_local, int node, int comp) {
  return element * 2 * n_local + 2 * node + comp;
}

inline int n_dof_total(const Mesh& mesh, const ReferenceBasis& basis) {
  return mesh.n_elements() * 2 * basis.n_local();
}

/// Penalty length scale for one edge under the configured mode.
double penalty_h(const Mesh& mesh, const DgConfig& config, const Edge& edge);

/// Element stiffness block of size (2 n_local)^2; symmetric positive
/// semidefinite with the three rigid-body modes as kernel.
Eigen::MatrixXd local_volume_matrix(const ElementGeometry& geom, const Material& material,
                                    const ReferenceBasis& basis, const TriangleRule& rule);

/// The four coupling blocks of one edge, ordered (test side, trial side).
/// For boundary edges only pp is populated. Neumann edges contribute nothing.
struct FaceBlocks {
  Eigen::MatrixXd pp, pm, mp, mm;
  bool has_minus = false;
};

FaceBlocks local_face_matrices(const Mesh& mesh, int edge_id, const ReferenceBasis& basis, const DgConfig& config,
                               const std::vector<Material>& materials, const EdgeRule& rule);

/// Assembles matrix and right-hand side of the interior-penalty variational
/// problem over all elements and all interior + Dirichlet edges.
SparseSystem assemble(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config, const ProblemData& data);

/// Matrix-free evaluation of the bilinear form on two coefficient fields;
/// equals v^T A w for the assembled matrix.
double bilinear_apply(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                      const std::vector<Material>& materials, std::span<const double> coeffs_w,
                      std::span<const double> coeffs_v);

/// Per-element equilibrium defect: integral of the numerical boundary flux
/// over the element boundary plus the body-force integral. Near zero for the
/// solved system.
Vec2 residual_flux(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config, const ProblemData& data,
                   std::span<const double> solution, int element);

} // namespace dgelast

#endif
