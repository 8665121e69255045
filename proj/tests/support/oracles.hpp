#ifndef DGELAST_TEST_ORACLES_HPP
#define DGELAST_TEST_ORACLES_HPP

#include <random>
#include <set>
#include <vector>

#include "dgelast/assembly.hpp"
#include "dgelast/basis.hpp"
#include "dgelast/material.hpp"
#include "dgelast/mesh.hpp"
#include "dgelast/types.hpp"

// Independent reference implementations used to pin expected values. These
// deliberately avoid the code paths they check: the dense assembler loops
// naively over quadrature points and recovers traces through inverse affine
// maps instead of the production CSR/trace machinery.
namespace dgelast::oracle {

struct EdgeCounts {
  int interior = 0;
  int boundary = 0;
  int total() const { return interior + boundary; }
};

/// Counts how many undirected element edges are shared by two triangles,
/// straight from the element vertex triples.
EdgeCounts count_edges_brute_force(const std::vector<std::array<int, 3>>& elements);

/// Closed form for the integral of x^a y^b over the reference triangle.
double monomial_integral(int a, int b);

/// Dense assembly of the full bilinear form, one global matrix entry at a
/// time.
Eigen::MatrixXd dense_matrix(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                             const std::vector<Material>& materials);

Eigen::VectorXd dense_rhs(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                          const ProblemData& data);

/// -div(sigma(u)) at x by nested central differences of the displacement.
Vec2 fd_neg_div_stress(const VectorField& u, const Material& material, const Vec2& x, double step);

/// Bilinear form with one argument a continuous exact field whose boundary
/// trace vanishes. With the exact field in the test slot this is
/// B_h(w, u) = volume pairing + alpha * integral of {sigma(u) n} . [w]; in
/// the trial slot it is B_h(u, w) = volume pairing - integral of
/// {sigma(u) n} . [w]. Used for adjoint-consistency and orthogonality checks.
enum class ExactSlot { trial, test };

double bilinear_against_exact(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                              const std::vector<Material>& materials, std::span<const double> coeffs_w,
                              const TensorField& exact_grad, ExactSlot slot = ExactSlot::test);

std::vector<double> random_field(int n, std::mt19937& rng, double scale = 1.0);

/// Nodal interpolant of a smooth displacement field.
std::vector<double> interpolate(const Mesh& mesh, const ReferenceBasis& basis, const VectorField& u);

} // namespace dgelast::oracle

#endif
