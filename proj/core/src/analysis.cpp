#include "dgelast/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "dgelast/errors.hpp"
#include "dgelast/quadrature.hpp"

namespace dgelast {

namespace {

Vec2 discrete_value(const Eigen::VectorXd& phi, std::span<const double> coeffs, int element, int n_local) {
  Vec2 u = Vec2::Zero();
  for (int i = 0; i < n_local; ++i)
    for (int c = 0; c < 2; ++c) u(c) += coeffs[global_dof(element, n_local, i, c)] * phi(i);
  return u;
}

Mat2 discrete_gradient(const Eigen::Matrix<double, Eigen::Dynamic, 2>& grad, std::span<const double> coeffs,
                       int element, int n_local) {
  Mat2 g = Mat2::Zero();
  for (int i = 0; i < n_local; ++i)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) g(c, k) += coeffs[global_dof(element, n_local, i, c)] * grad(i, k);
  return g;
}

struct EdgeTrace {
  std::vector<Vec2> x;
  std::vector<Eigen::VectorXd> phi;
};

EdgeTrace edge_trace(const Mesh& mesh, int element, const Edge& edge, const ReferenceBasis& basis,
                     const EdgeRule& rule) {
  const LocalEdge local = find_local_edge(mesh, element, edge.endpoints[0], edge.endpoints[1]);
  const ElementGeometry geom = element_geometry(mesh, element);
  EdgeTrace trace;
  for (const Vec2& ref : trace_points(local.index, rule, local.reversed)) {
    trace.phi.push_back(basis.eval(ref));
    trace.x.push_back(geom.to_physical(ref));
  }
  return trace;
}

const Material& material_for(const std::vector<Material>& materials, int element) {
  return materials.size() == 1 ? materials.front() : materials[static_cast<std::size_t>(element)];
}

void check_coeffs(const Mesh& mesh, const ReferenceBasis& basis, std::span<const double> coeffs, const char* where) {
  if (coeffs.size() != static_cast<std::size_t>(n_dof_total(mesh, basis)))
    throw ContractError(std::string(where) + ": coefficient vector length mismatch");
}

} // namespace

double l2_error(const Mesh& mesh, const ReferenceBasis& basis, std::span<const double> coeffs,
                const VectorField& exact) {
  check_coeffs(mesh, basis, coeffs, "l2_error");
  const int n_local = basis.n_local();
  const TriangleRule rule = triangle_rule(2 * basis.degree() + 4);

  std::vector<Eigen::VectorXd> phi;
  phi.reserve(rule.points.size());
  for (const Vec2& p : rule.points) phi.push_back(basis.eval(p));

  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 diff = exact(geom.to_physical(rule.points[q])) - discrete_value(phi[q], coeffs, e, n_local);
      acc += rule.weights[q] * geom.det * diff.squaredNorm();
    }
  }
  return std::sqrt(acc);
}

double energy_norm_squared(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                           const std::vector<Material>& materials, std::span<const double> coeffs) {
  check_coeffs(mesh, basis, coeffs, "energy_norm_squared");
  const int n_local = basis.n_local();
  const TriangleRule tri = triangle_rule(2 * config.degree + 2);
  const EdgeRule edge_quad = edge_rule(2 * config.degree + 3);

  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    const Material& material = material_for(materials, e);
    for (std::size_t q = 0; q < tri.points.size(); ++q) {
      const Mat2 eps = strain(
          discrete_gradient(basis.eval_grad(tri.points[q]) * geom.jacobian_inv, coeffs, e, n_local));
      acc += tri.weights[q] * geom.det * energy_pairing(material, eps, eps);
    }
  }

  for (const Edge& edge : mesh.edges) {
    if (edge.tag == BoundaryTag::neumann) continue;
    const double h = penalty_h(mesh, config, edge);
    const double scale = config.degree * config.degree / std::pow(h, config.superpenalty_d);
    const EdgeTrace plus = edge_trace(mesh, edge.plus_element, edge, basis, edge_quad);
    const bool interior = !edge.is_boundary();
    const EdgeTrace minus = interior ? edge_trace(mesh, edge.minus_element, edge, basis, edge_quad) : EdgeTrace{};
    for (std::size_t q = 0; q < edge_quad.points.size(); ++q) {
      Vec2 jump = discrete_value(plus.phi[q], coeffs, edge.plus_element, n_local);
      if (interior) jump -= discrete_value(minus.phi[q], coeffs, edge.minus_element, n_local);
      const double jn = edge.unit_normal.dot(jump);
      acc += edge_quad.weights[q] * edge.length * scale *
             (config.beta * jump.squaredNorm() + config.gamma * jn * jn);
    }
  }
  return acc;
}

EnergyParts energy_error_parts(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                               const std::vector<Material>& materials, std::span<const double> coeffs,
                               const VectorField& exact, const TensorField& exact_grad) {
  check_coeffs(mesh, basis, coeffs, "energy_error_parts");
  const int n_local = basis.n_local();
  const TriangleRule tri = triangle_rule(2 * config.degree + 4);
  const EdgeRule edge_quad = edge_rule(2 * config.degree + 4);

  EnergyParts parts;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    const Material& material = material_for(materials, e);
    for (std::size_t q = 0; q < tri.points.size(); ++q) {
      const Vec2 x = geom.to_physical(tri.points[q]);
      const Mat2 grad_err =
          exact_grad(x) - discrete_gradient(basis.eval_grad(tri.points[q]) * geom.jacobian_inv, coeffs, e, n_local);
      const Mat2 eps = strain(grad_err);
      parts.volume_sq += tri.weights[q] * geom.det * energy_pairing(material, eps, eps);
    }
  }

  // The exact field is continuous, so on interior edges the error jump is
  // the discrete jump; on Dirichlet edges it is the one-sided trace defect.
  for (const Edge& edge : mesh.edges) {
    if (edge.tag == BoundaryTag::neumann) continue;
    const double h = penalty_h(mesh, config, edge);
    const double scale = config.degree * config.degree / std::pow(h, config.superpenalty_d);
    const EdgeTrace plus = edge_trace(mesh, edge.plus_element, edge, basis, edge_quad);
    const bool interior = !edge.is_boundary();
    const EdgeTrace minus = interior ? edge_trace(mesh, edge.minus_element, edge, basis, edge_quad) : EdgeTrace{};
    for (std::size_t q = 0; q < edge_quad.points.size(); ++q) {
      Vec2 jump;
      if (interior) {
        jump = discrete_value(minus.phi[q], coeffs, edge.minus_element, n_local) -
               discrete_value(plus.phi[q], coeffs, edge.plus_element, n_local);
      } else {
        jump = exact(plus.x[q]) - discrete_value(plus.phi[q], coeffs, edge.plus_element, n_local);
      }
      const double jn = edge.unit_normal.dot(jump);
      parts.jump_sq += edge_quad.weights[q] * edge.length * scale *
                       (config.beta * jump.squaredNorm() + config.gamma * jn * jn);
    }
  }
  return parts;
}

std::vector<double> rates(std::span<const double> errors) {
  std::vector<double> out;
  if (errors.size() < 2) return out;
  out.reserve(errors.size() - 1);
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0))
      throw RateError("rates: errors must be positive to define a rate");
    out.push_back(std::log2(errors[i] / errors[i + 1]));
  }
  return out;
}

ConvergenceTable make_convergence_table(std::vector<ErrorReport> rows, int degree, double regularity_s) {
  ConvergenceTable table;
  table.rows = std::move(rows);
  table.expected_l2_rate = std::min(static_cast<double>(degree + 1), regularity_s);
  table.expected_energy_rate = table.expected_l2_rate - 1.0;

  std::vector<double> l2, energy;
  for (const ErrorReport& row : table.rows) {
    l2.push_back(row.l2_error);
    energy.push_back(row.energy_error);
  }
  table.l2_rates = rates(l2);
  table.energy_rates = rates(energy);
  return table;
}

} // namespace dgelast
