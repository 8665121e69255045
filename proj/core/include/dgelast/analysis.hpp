#ifndef DGELAST_ANALYSIS_HPP
#define DGELAST_ANALYSIS_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "dgelast/assembly.hpp"
#include "dgelast/basis.hpp"
#include "dgelast/mesh.hpp"
#include "dgelast/types.hpp"

namespace dgelast {

struct ErrorReport {
  int level = 0;
  double h = 0.0;
  int n_dof = 0;
  double l2_error = 0.0;
  double energy_error = 0.0;
  double jump_part = 0.0;   // penalty-weighted edge contribution
  double volume_part = 0.0; // broken elastic energy contribution
};

struct ConvergenceTable {
  std::vector<ErrorReport> rows;
  std::vector<double> l2_rates;     // one shorter than rows
  std::vector<double> energy_rates; // one shorter than rows
  double expected_l2_rate = 0.0;
  double expected_energy_rate = 0.0;
};

/// Broken L2 distance between a coefficient field and an exact displacement,
/// integrated with a rule of order 2r+4.
double l2_error(const Mesh& mesh, const ReferenceBasis& basis, std::span<const double> coeffs,
                const VectorField& exact);

/// Energy norm squared under the run's penalty configuration: broken elastic
/// energy plus beta r^2/h^d and gamma r^2/h^d jump penalties over interior
/// and Dirichlet edges.
double energy_norm_squared(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                           const std::vector<Material>& materials, std::span<const double> coeffs);

struct EnergyParts {
  double volume_sq = 0.0;
  double jump_sq = 0.0;
  double total() const { return volume_sq + jump_sq; }
};

/// Energy norm of (exact - discrete), the exact field entering through
/// quadrature-point evaluation of u and its gradient.
EnergyParts energy_error_parts(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                               const std::vector<Material>& materials, std::span<const double> coeffs,
                               const VectorField& exact, const TensorField& exact_grad);

/// rate_i = log2(e_i / e_{i+1}); throws RateError on nonpositive entries.
std::vector<double> rates(std::span<const double> errors);

/// Fills the rate arrays and the expected rates mu = min(r+1, s),
/// mu - 1 for the energy norm (s = infinity for analytic solutions).
ConvergenceTable make_convergence_table(std::vector<ErrorReport> rows, int degree,
                                        double regularity_s = std::numeric_limits<double>::infinity());

} // namespace dgelast

#endif
