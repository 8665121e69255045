#include "dgelast/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "dgelast/errors.hpp"

namespace dgelast {

namespace {

// sigma(sym(e_c x g)) n for a scalar basis gradient g and component c.
Vec2 traction(const Material& m, const Vec2& g, int c, const Vec2& n) {
  Vec2 t = m.lambda * g(c) * n + m.mu * n(c) * g;
  t(c) += m.mu * g.dot(n);
  return t;
}

// Trace data of one element along one edge, evaluated at the edge quadrature
// points in the edge's canonical direction (endpoint 0 -> endpoint 1), so the
// two sides of an interior edge line up point by point.
struct SideEval {
  std::vector<Eigen::VectorXd> phi;
  std::vector<Eigen::Matrix<double, Eigen::Dynamic, 2>> grad; // physical gradients
  std::vector<Vec2> x;
};

SideEval eval_side(const Mesh& mesh, int element, const Edge& edge, const ReferenceBasis& basis,
                   const EdgeRule& rule) {
  const LocalEdge local = find_local_edge(mesh, element, edge.endpoints[0], edge.endpoints[1]);
  const std::vector<Vec2> ref_points = trace_points(local.index, rule, local.reversed);
  const ElementGeometry geom = element_geometry(mesh, element);

  SideEval side;
  side.phi.reserve(ref_points.size());
  side.grad.reserve(ref_points.size());
  side.x.reserve(ref_points.size());
  for (const Vec2& ref : ref_points) {
    side.phi.push_back(basis.eval(ref));
    side.grad.push_back(basis.eval_grad(ref) * geom.jacobian_inv);
    side.x.push_back(geom.to_physical(ref));
  }
  return side;
}

struct PenaltyWeights {
  double beta = 0.0;
  double gamma = 0.0;
};

PenaltyWeights penalty_weights(const Mesh& mesh, const DgConfig& config, const Edge& edge) {
  const double h = penalty_h(mesh, config, edge);
  const double scale = config.degree * config.degree / std::pow(h, config.superpenalty_d);
  return {config.beta * scale, config.gamma * scale};
}

// Displacement and gradient of a coefficient field at one trace point.
Vec2 field_value(const Eigen::VectorXd& phi, std::span<const double> coeffs, int element, int n_local) {
  Vec2 u = Vec2::Zero();
  for (int i = 0; i < n_local; ++i)
    for (int c = 0; c < 2; ++c) u(c) += coeffs[global_dof(element, n_local, i, c)] * phi(i);
  return u;
}

Mat2 field_gradient(const Eigen::Matrix<double, Eigen::Dynamic, 2>& grad, std::span<const double> coeffs, int element,
                    int n_local) {
  Mat2 g = Mat2::Zero();
  for (int i = 0; i < n_local; ++i)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) g(c, k) += coeffs[global_dof(element, n_local, i, c)] * grad(i, k);
  return g;
}

// CSR pattern with one contiguous dof block per element, coupling each
// element to itself and its edge neighbors.
SparseSystem make_pattern(const Mesh& mesh, int block_size) {
  const int n_elements = mesh.n_elements();
  std::vector<std::vector<int>> block_cols(n_elements);
  for (int e = 0; e < n_elements; ++e) block_cols[e].push_back(e);
  for (const Edge& edge : mesh.edges) {
    if (edge.is_boundary()) continue;
    block_cols[edge.plus_element].push_back(edge.minus_element);
    block_cols[edge.minus_element].push_back(edge.plus_element);
  }
  for (auto& cols : block_cols) std::sort(cols.begin(), cols.end());

  SparseSystem system;
  system.n_dof = n_elements * block_size;
  system.block_size = block_size;
  system.rhs.assign(system.n_dof, 0.0);
  system.row_offsets.assign(system.n_dof + 1, 0);
  for (int e = 0; e < n_elements; ++e) {
    const auto row_nnz = static_cast<std::int64_t>(block_cols[e].size()) * block_size;
    for (int r = 0; r < block_size; ++r) system.row_offsets[e * block_size + r + 1] = row_nnz;
  }
  for (int row = 0; row < system.n_dof; ++row) system.row_offsets[row + 1] += system.row_offsets[row];

  system.cols.resize(system.row_offsets[system.n_dof]);
  system.vals.assign(system.row_offsets[system.n_dof], 0.0);
  for (int e = 0; e < n_elements; ++e) {
    for (int r = 0; r < block_size; ++r) {
      std::int64_t k = system.row_offsets[e * block_size + r];
      for (int bc : block_cols[e])
        for (int c = 0; c < block_size; ++c) system.cols[k++] = bc * block_size + c;
    }
  }
  return system;
}

void add_block(SparseSystem& system, int row_element, int col_element, const Eigen::MatrixXd& block) {
  const int bs = system.block_size;
  for (int r = 0; r < bs; ++r) {
    const int row = row_element * bs + r;
    const auto begin = system.cols.begin() + system.row_offsets[row];
    const auto end = system.cols.begin() + system.row_offsets[row + 1];
    const auto it = std::lower_bound(begin, end, col_element * bs);
    std::int64_t k = it - system.cols.begin();
    for (int c = 0; c < bs; ++c) system.vals[k + c] += block(r, c);
  }
}

} // namespace

void DgConfig::validate() const {
  if (alpha != -1 && alpha != 0 && alpha != 1) throw ContractError("DgConfig: alpha must be -1, 0 or 1");
  if (!(beta > 0.0)) throw ContractError("DgConfig: beta must be positive");
  if (gamma < 0.0) throw ContractError("DgConfig: gamma must be nonnegative");
  if (degree < 1) throw ContractError("DgConfig: degree must be >= 1");
  if (superpenalty_d < 1) throw ContractError("DgConfig: superpenalty_d must be >= 1");
}

double penalty_h(const Mesh& mesh, const DgConfig& config, const Edge& edge) {
  return config.penalty_h_mode == DgConfig::PenaltyHMode::global ? mesh.h_diameter : edge.length;
}

Eigen::MatrixXd local_volume_matrix(const ElementGeometry& geom, const Material& material,
                                    const ReferenceBasis& basis, const TriangleRule& rule) {
  const int n_local = basis.n_local();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n_local, 2 * n_local);

  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const Eigen::Matrix<double, Eigen::Dynamic, 2> grad = basis.eval_grad(rule.points[q]) * geom.jacobian_inv;
    const double w = rule.weights[q] * geom.det;
    for (int i = 0; i < n_local; ++i) {
      const Vec2 gi = grad.row(i);
      for (int j = 0; j < n_local; ++j) {
        const Vec2 gj = grad.row(j);
        const double dot = gi.dot(gj);
        for (int ci = 0; ci < 2; ++ci)
          for (int cj = 0; cj < 2; ++cj) {
            double v = material.lambda * gj(cj) * gi(ci) + material.mu * gi(cj) * gj(ci);
            if (ci == cj) v += material.mu * dot;
            block(2 * i + ci, 2 * j + cj) += w * v;
          }
      }
    }
  }
  return block;
}

FaceBlocks local_face_matrices(const Mesh& mesh, int edge_id, const ReferenceBasis& basis, const DgConfig& config,
                               const std::vector<Material>& materials, const EdgeRule& rule) {
  config.validate();
  const Edge& edge = mesh.edges[edge_id];
  if (edge.is_boundary() && edge.tag == BoundaryTag::interior)
    throw ContractError("local_face_matrices: boundary edge without a boundary tag");

  const int n_local = basis.n_local();
  const int bs = 2 * n_local;
  FaceBlocks blocks;
  blocks.pp = Eigen::MatrixXd::Zero(bs, bs);
  if (edge.tag == BoundaryTag::neumann) return blocks;

  const bool interior = !edge.is_boundary();
  blocks.has_minus = interior;
  if (interior) {
    blocks.pm = Eigen::MatrixXd::Zero(bs, bs);
    blocks.mp = Eigen::MatrixXd::Zero(bs, bs);
    blocks.mm = Eigen::MatrixXd::Zero(bs, bs);
  }

  const auto material_for = [&](int element) -> const Material& {
    return materials.size() == 1 ? materials.front() : materials[static_cast<std::size_t>(element)];
  };

  const Vec2 n = edge.unit_normal;
  const PenaltyWeights pen = penalty_weights(mesh, config, edge);
  const SideEval plus = eval_side(mesh, edge.plus_element, edge, basis, rule);
  const SideEval minus = interior ? eval_side(mesh, edge.minus_element, edge, basis, rule) : SideEval{};

  struct Side {
    const SideEval* eval;
    const Material* material;
    double jump_sign;
    double avg_weight;
    Eigen::MatrixXd* row[2]; // blocks indexed by trial side
  };
  Side sides[2];
  sides[0] = {&plus, &material_for(edge.plus_element), 1.0, interior ? 0.5 : 1.0, {&blocks.pp, &blocks.pm}};
  if (interior)
    sides[1] = {&minus, &material_for(edge.minus_element), -1.0, 0.5, {&blocks.mp, &blocks.mm}};
  const int n_sides = interior ? 2 : 1;

  const std::size_t n_q = rule.points.size();
  std::vector<Vec2> tau_a(static_cast<std::size_t>(n_local) * 2), tau_b(static_cast<std::size_t>(n_local) * 2);

  for (std::size_t q = 0; q < n_q; ++q) {
    const double w = rule.weights[q] * edge.length;
    for (int a = 0; a < n_sides; ++a) {
      const Side& A = sides[a]; // test side
      for (int i = 0; i < n_local; ++i) {
        const Vec2 gi = A.eval->grad[q].row(i);
        for (int c = 0; c < 2; ++c) tau_a[2 * i + c] = traction(*A.material, gi, c, n);
      }
      for (int b = 0; b < n_sides; ++b) {
        const Side& B = sides[b]; // trial side
        for (int j = 0; j < n_local; ++j) {
          const Vec2 gj = B.eval->grad[q].row(j);
          for (int c = 0; c < 2; ++c) tau_b[2 * j + c] = traction(*B.material, gj, c, n);
        }
        Eigen::MatrixXd& block = *A.row[b];
        const double ss = A.jump_sign * B.jump_sign;
        for (int i = 0; i < n_local; ++i) {
          const double phi_i = A.eval->phi[q](i);
          for (int j = 0; j < n_local; ++j) {
            const double phi_j = B.eval->phi[q](j);
            const double pen_common = ss * phi_i * phi_j;
            for (int ci = 0; ci < 2; ++ci)
              for (int cj = 0; cj < 2; ++cj) {
                double v = -B.avg_weight * tau_b[2 * j + cj](ci) * A.jump_sign * phi_i +
                           config.alpha * A.avg_weight * tau_a[2 * i + ci](cj) * B.jump_sign * phi_j +
                           pen.gamma * pen_common * n(ci) * n(cj);
                if (ci == cj) v += pen.beta * pen_common;
                block(2 * i + ci, 2 * j + cj) += w * v;
              }
          }
        }
      }
    }
  }
  return blocks;
}

SparseSystem assemble(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                      const ProblemData& data) {
  config.validate();
  if (config.degree != basis.degree())
    throw ContractError("assemble: config degree does not match the basis degree");
  if (data.materials.size() != 1 && data.materials.size() != static_cast<std::size_t>(mesh.n_elements()))
    throw ContractError("assemble: need one material or one per element");

  const int n_local = basis.n_local();
  const int bs = 2 * n_local;
  const TriangleRule tri = triangle_rule(2 * config.degree + 2);
  const EdgeRule edge_quad = edge_rule(2 * config.degree + 3);

  SparseSystem system = make_pattern(mesh, bs);

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    const Material& material = data.material_for(e);
    add_block(system, e, e, local_volume_matrix(geom, material, basis, tri));

    for (std::size_t q = 0; q < tri.points.size(); ++q) {
      const Vec2 x = geom.to_physical(tri.points[q]);
      const Vec2 f = data.body_force(x);
      const Eigen::VectorXd phi = basis.eval(tri.points[q]);
      const double w = tri.weights[q] * geom.det;
      for (int i = 0; i < n_local; ++i)
        for (int c = 0; c < 2; ++c) system.rhs[global_dof(e, n_local, i, c)] += w * phi(i) * f(c);
    }
  }

  for (int edge_id = 0; edge_id < mesh.n_edges(); ++edge_id) {
    const Edge& edge = mesh.edges[edge_id];
    if (edge.tag == BoundaryTag::neumann) {
      const SideEval side = eval_side(mesh, edge.plus_element, edge, basis, edge_quad);
      for (std::size_t q = 0; q < edge_quad.points.size(); ++q) {
        const Vec2 g = data.neumann(side.x[q], edge.unit_normal);
        const double w = edge_quad.weights[q] * edge.length;
        for (int i = 0; i < n_local; ++i)
          for (int c = 0; c < 2; ++c)
            system.rhs[global_dof(edge.plus_element, n_local, i, c)] += w * side.phi[q](i) * g(c);
      }
      continue;
    }

    const FaceBlocks blocks = local_face_matrices(mesh, edge_id, basis, config, data.materials, edge_quad);
    add_block(system, edge.plus_element, edge.plus_element, blocks.pp);
    if (blocks.has_minus) {
      add_block(system, edge.plus_element, edge.minus_element, blocks.pm);
      add_block(system, edge.minus_element, edge.plus_element, blocks.mp);
      add_block(system, edge.minus_element, edge.minus_element, blocks.mm);
      continue;
    }

    // Dirichlet data enters the load functional through the adjoint term and
    // both penalties.
    const Vec2 n = edge.unit_normal;
    const PenaltyWeights pen = penalty_weights(mesh, config, edge);
    const Material& material = data.material_for(edge.plus_element);
    const SideEval side = eval_side(mesh, edge.plus_element, edge, basis, edge_quad);
    for (std::size_t q = 0; q < edge_quad.points.size(); ++q) {
      const Vec2 g = data.dirichlet(side.x[q]);
      const double gn = n.dot(g);
      const double w = edge_quad.weights[q] * edge.length;
      for (int i = 0; i < n_local; ++i) {
        const Vec2 gi = side.grad[q].row(i);
        const double phi_i = side.phi[q](i);
        for (int c = 0; c < 2; ++c) {
          double v = config.alpha * traction(material, gi, c, n).dot(g) + pen.beta * phi_i * g(c) +
                     pen.gamma * phi_i * gn * n(c);
          system.rhs[global_dof(edge.plus_element, n_local, i, c)] += w * v;
        }
      }
    }
  }
  return system;
}

double bilinear_apply(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config,
                      const std::vector<Material>& materials, std::span<const double> coeffs_w,
                      std::span<const double> coeffs_v) {
  config.validate();
  const int n_local = basis.n_local();
  const auto n_dof = static_cast<std::size_t>(n_dof_total(mesh, basis));
  if (coeffs_w.size() != n_dof || coeffs_v.size() != n_dof)
    throw ContractError("bilinear_apply: coefficient vector length mismatch");

  const auto material_for = [&](int element) -> const Material& {
    return materials.size() == 1 ? materials.front() : materials[static_cast<std::size_t>(element)];
  };

  const TriangleRule tri = triangle_rule(2 * config.degree + 2);
  const EdgeRule edge_quad = edge_rule(2 * config.degree + 3);
  double total = 0.0;

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    const Material& material = material_for(e);
    for (std::size_t q = 0; q < tri.points.size(); ++q) {
      const Eigen::Matrix<double, Eigen::Dynamic, 2> grad = basis.eval_grad(tri.points[q]) * geom.jacobian_inv;
      const Mat2 eps_w = strain(field_gradient(grad, coeffs_w, e, n_local));
      const Mat2 eps_v = strain(field_gradient(grad, coeffs_v, e, n_local));
      total += tri.weights[q] * geom.det * energy_pairing(material, eps_w, eps_v);
    }
  }

  for (const Edge& edge : mesh.edges) {
    if (edge.tag == BoundaryTag::neumann) continue;
    const bool interior = !edge.is_boundary();
    const Vec2 n = edge.unit_normal;
    const PenaltyWeights pen = penalty_weights(mesh, config, edge);

    const SideEval plus = eval_side(mesh, edge.plus_element, edge, basis, edge_quad);
    const SideEval minus = interior ? eval_side(mesh, edge.minus_element, edge, basis, edge_quad) : SideEval{};
    const Material& mat_plus = material_for(edge.plus_element);

    for (std::size_t q = 0; q < edge_quad.points.size(); ++q) {
      const Vec2 w_plus = field_value(plus.phi[q], coeffs_w, edge.plus_element, n_local);
      const Vec2 v_plus = field_value(plus.phi[q], coeffs_v, edge.plus_element, n_local);
      const Mat2 grad_w_plus = field_gradient(plus.grad[q], coeffs_w, edge.plus_element, n_local);
      const Mat2 grad_v_plus = field_gradient(plus.grad[q], coeffs_v, edge.plus_element, n_local);

      Vec2 jump_w = w_plus, jump_v = v_plus;
      Vec2 avg_tau_w = stress(mat_plus, strain(grad_w_plus)) * n;
      Vec2 avg_tau_v = stress(mat_plus, strain(grad_v_plus)) * n;
      if (interior) {
        const Material& mat_minus = material_for(edge.minus_element);
        jump_w -= field_value(minus.phi[q], coeffs_w, edge.minus_element, n_local);
        jump_v -= field_value(minus.phi[q], coeffs_v, edge.minus_element, n_local);
        avg_tau_w = 0.5 * (avg_tau_w + stress(mat_minus, strain(field_gradient(minus.grad[q], coeffs_w,
                                                                               edge.minus_element, n_local))) *
                                           n);
        avg_tau_v = 0.5 * (avg_tau_v + stress(mat_minus, strain(field_gradient(minus.grad[q], coeffs_v,
                                                                               edge.minus_element, n_local))) *
                                           n);
      }

      const double w = edge_quad.weights[q] * edge.length;
      total += w * (-avg_tau_w.dot(jump_v) + config.alpha * avg_tau_v.dot(jump_w) + pen.beta * jump_w.dot(jump_v) +
                    pen.gamma * n.dot(jump_w) * n.dot(jump_v));
    }
  }
  return total;
}

Vec2 residual_flux(const Mesh& mesh, const ReferenceBasis& basis, const DgConfig& config, const ProblemData& data,
                   std::span<const double> solution, int element) {
  config.validate();
  const int n_local = basis.n_local();
  if (solution.size() != static_cast<std::size_t>(n_dof_total(mesh, basis)))
    throw ContractError("residual_flux: solution vector length mismatch");

  const TriangleRule tri = triangle_rule(2 * config.degree + 2);
  const EdgeRule edge_quad = edge_rule(2 * config.degree + 3);
  const ElementGeometry geom = element_geometry(mesh, element);

  Vec2 defect = Vec2::Zero();
  for (std::size_t q = 0; q < tri.points.size(); ++q)
    defect += tri.weights[q] * geom.det * data.body_force(geom.to_physical(tri.points[q]));

  for (int k = 0; k < 3; ++k) {
    const Edge& edge = mesh.edges[mesh.element_edges[element][k]];
    const double sign = edge.plus_element == element ? 1.0 : -1.0;
    const Vec2 n_k = sign * edge.unit_normal; // outward from this element
    const PenaltyWeights pen = penalty_weights(mesh, config, edge);

    const SideEval own = eval_side(mesh, element, edge, basis, edge_quad);
    const int other = edge.plus_element == element ? edge.minus_element : edge.plus_element;
    const SideEval neighbor = other >= 0 ? eval_side(mesh, other, edge, basis, edge_quad) : SideEval{};

    for (std::size_t q = 0; q < edge_quad.points.size(); ++q) {
      const double w = edge_quad.weights[q] * edge.length;
      Vec2 flux;
      if (edge.tag == BoundaryTag::neumann) {
        flux = data.neumann(own.x[q], n_k);
      } else {
        const Vec2 u_own = field_value(own.phi[q], solution, element, n_local);
        const Vec2 tau_own =
            stress(data.material_for(element), strain(field_gradient(own.grad[q], solution, element, n_local))) * n_k;
        if (edge.tag == BoundaryTag::dirichlet) {
          const Vec2 diff = u_own - data.dirichlet(own.x[q]);
          flux = tau_own - pen.beta * diff - pen.gamma * n_k.dot(diff) * n_k;
        } else {
          const Vec2 tau_other =
              stress(data.material_for(other), strain(field_gradient(neighbor.grad[q], solution, other, n_local))) *
              n_k;
          const Vec2 jump = u_own - field_value(neighbor.phi[q], solution, other, n_local);
          flux = 0.5 * (tau_own + tau_other) - pen.beta * jump - pen.gamma * n_k.dot(jump) * n_k;
        }
      }
      defect += w * flux;
    }
  }
  return defect;
}

} // namespace dgelast
