#include "dgelast/verify.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "dgelast/analysis.hpp"
#include "dgelast/assembly.hpp"
#include "dgelast/basis.hpp"
#include "dgelast/mesh.hpp"
#include "dgelast/mms.hpp"
#include "dgelast/quadrature.hpp"
#include "dgelast/solver.hpp"
#include "dgelast/study.hpp"

namespace dgelast {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// integral of x^a y^b over the reference triangle
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

std::vector<double> random_field(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> field(n);
  for (double& v : field) v = dist(rng);
  return field;
}

struct Check {
  const char* name;
  std::function<bool(std::string&)> run;
};

bool check_triangle_quadrature(std::string& detail) {
  for (int order = 1; order <= 10; ++order) {
    const TriangleRule rule = triangle_rule(order);
    double wsum = 0.0;
    for (double w : rule.weights) {
      if (w <= 0.0) {
        detail = "nonpositive weight at order " + std::to_string(order);
        return false;
      }
      wsum += w;
    }
    if (std::abs(wsum - 0.5) > 1e-14) {
      detail = "weights do not sum to 1/2 at order " + std::to_string(order);
      return false;
    }
    for (int a = 0; a + 0 <= order; ++a) {
      for (int b = 0; a + b <= order; ++b) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
          acc += rule.weights[q] * std::pow(rule.points[q].x(), a) * std::pow(rule.points[q].y(), b);
        const double exact = monomial_integral(a, b);
        if (std::abs(acc - exact) > 1e-12 * std::max(1.0, std::abs(exact))) {
          detail = "x^" + std::to_string(a) + " y^" + std::to_string(b) + " wrong at order " + std::to_string(order);
          return false;
        }
      }
    }
  }
  return true;
}

bool check_edge_quadrature(std::string& detail) {
  for (int order = 1; order <= 11; ++order) {
    const EdgeRule rule = edge_rule(order);
    for (int k = 0; k <= order; ++k) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) acc += rule.weights[q] * std::pow(rule.points[q], k);
      if (std::abs(acc - 1.0 / (k + 1)) > 1e-13) {
        detail = "x^" + std::to_string(k) + " wrong at order " + std::to_string(order);
        return false;
      }
    }
  }
  return true;
}

bool check_basis_nodal(std::string& detail) {
  for (int r = 1; r <= kMaxBasisDegree; ++r) {
    const ReferenceBasis basis(r);
    for (int k = 0; k < basis.n_local(); ++k) {
      const Eigen::VectorXd values = basis.eval(basis.nodes()[k]);
      for (int i = 0; i < basis.n_local(); ++i) {
        if (std::abs(values(i) - (i == k ? 1.0 : 0.0)) > 1e-10) {
          detail = "degree " + std::to_string(r) + " node " + std::to_string(k);
          return false;
        }
      }
    }
    const Eigen::VectorXd at_center = basis.eval(Vec2(0.31, 0.17));
    if (std::abs(at_center.sum() - 1.0) > 1e-10) {
      detail = "partition of unity broken at degree " + std::to_string(r);
      return false;
    }
  }
  return true;
}

bool check_basis_gradients(std::string& detail) {
  const ReferenceBasis basis(2);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.05, 0.4);
  const double step = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 p(dist(rng), dist(rng));
    const auto grad = basis.eval_grad(p);
    for (int dim = 0; dim < 2; ++dim) {
      Vec2 dp = Vec2::Zero();
      dp(dim) = step;
      const Eigen::VectorXd fd = (basis.eval(p + dp) - basis.eval(p - dp)) / (2.0 * step);
      for (int i = 0; i < basis.n_local(); ++i) {
        if (std::abs(fd(i) - grad(i, dim)) > 1e-5) {
          detail = "basis " + std::to_string(i) + " direction " + std::to_string(dim);
          return false;
        }
      }
    }
  }
  return true;
}

bool check_mesh(std::string& detail) {
  const Mesh mesh = build_structured(2, Rect{-1, -1, 1, 1});
  double area = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) area += element_geometry(mesh, e).area;
  if (std::abs(area - 4.0) > 1e-12 * 4.0) {
    detail = "total area " + std::to_string(area);
    return false;
  }
  if (mesh.n_vertices() - mesh.n_edges() + mesh.n_elements() != 1) {
    detail = "Euler characteristic broken";
    return false;
  }
  for (const Edge& edge : mesh.edges) {
    if (std::abs(edge.unit_normal.norm() - 1.0) > 1e-14) {
      detail = "normal not unit";
      return false;
    }
    if (edge.is_boundary() != (edge.tag != BoundaryTag::interior)) {
      detail = "tag inconsistent with adjacency";
      return false;
    }
  }
  return true;
}

bool check_material(std::string& detail) {
  const Material material{0.03, 0.035};
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Mat2 eps;
    const double a = dist(rng), b = dist(rng), c = dist(rng);
    eps << a, b, b, c;
    const Mat2 sig = stress(material, eps);
    if (std::abs(sig(0, 1) - sig(1, 0)) > 1e-14) {
      detail = "stress asymmetric";
      return false;
    }
    if (eps.squaredNorm() > 1e-12 && energy_pairing(material, eps, eps) <= 0.0) {
      detail = "energy not positive";
      return false;
    }
  }
  return true;
}

bool check_sipg_symmetry(std::string& detail) {
  const Material material{0.03, 0.035};
  const MmsCase mms = builtin_case_trig(material);
  const Mesh mesh = classify_boundary(build_structured(1, mms.domain), mms.dirichlet_region);
  const ReferenceBasis basis(1);
  DgConfig config;
  config.alpha = -1;
  const SparseSystem system = assemble(mesh, basis, config, mms.problem_data(material));
  double max_rel = 0.0;
  for (int row = 0; row < system.n_dof; ++row) {
    for (std::int64_t k = system.row_offsets[row]; k < system.row_offsets[row + 1]; ++k) {
      const double v = system.vals[k];
      const double vt = system.coeff(system.cols[k], row);
      const double scale = std::max({std::abs(v), std::abs(vt), 1e-30});
      max_rel = std::max(max_rel, std::abs(v - vt) / scale);
    }
  }
  if (max_rel > 1e-12) {
    detail = "max relative asymmetry " + std::to_string(max_rel);
    return false;
  }
  return true;
}

bool check_nipg_identity(std::string& detail) {
  const Material material{0.03, 0.035};
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  const ReferenceBasis basis(1);
  DgConfig config;
  config.alpha = 1;
  std::mt19937 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> w = random_field(n_dof_total(mesh, basis), rng);
    const double b = bilinear_apply(mesh, basis, config, {material}, w, w);
    const double nrm = energy_norm_squared(mesh, basis, config, {material}, w);
    if (std::abs(b - nrm) > 1e-10 * std::abs(nrm)) {
      detail = "B(w,w) = " + std::to_string(b) + " vs |||w|||^2 = " + std::to_string(nrm);
      return false;
    }
  }
  return true;
}

bool check_patch_test(std::string& detail) {
  const Material material{0.03, 0.035};
  const MmsCase mms = builtin_case_linear(material);
  const Mesh mesh = classify_boundary(build_structured(1, mms.domain), mms.dirichlet_region);
  const ReferenceBasis basis(1);
  for (int alpha : {-1, 0, 1}) {
    DgConfig config;
    config.alpha = alpha;
    const SparseSystem system = assemble(mesh, basis, config, mms.problem_data(material));
    const SolveResult sol = solve_direct(system, 1e-12);
    const EnergyParts parts =
        energy_error_parts(mesh, basis, config, {material}, sol.x, mms.u, mms.grad_u);
    const double err = std::sqrt(parts.total());
    if (!sol.report.converged || err > 1e-9) {
      detail = "alpha " + std::to_string(alpha) + " energy error " + std::to_string(err);
      return false;
    }
  }
  return true;
}

bool check_mms_forcing(std::string& detail) {
  const Material material{0.03, 0.035};
  const MmsCase mms = builtin_case_trig(material);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-0.9, 0.9);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 x(dist(rng), dist(rng));
    const auto sigma = [&](const Vec2& p) {
      Mat2 grad;
      for (int dim = 0; dim < 2; ++dim) {
        Vec2 dp = Vec2::Zero();
        dp(dim) = h;
        grad.col(dim) = (mms.u(p + dp) - mms.u(p - dp)) / (2.0 * h);
      }
      return stress(material, strain(grad));
    };
    Vec2 div = Vec2::Zero();
    for (int dim = 0; dim < 2; ++dim) {
      Vec2 dp = Vec2::Zero();
      dp(dim) = h;
      div += (sigma(x + dp).col(dim) - sigma(x - dp).col(dim)) / (2.0 * h);
    }
    const Vec2 f = mms.body_force(x);
    if ((f + div).norm() > 1e-6) {
      detail = "mismatch " + std::to_string((f + div).norm()) + " at (" + std::to_string(x.x()) + "," +
               std::to_string(x.y()) + ")";
      return false;
    }
  }
  return true;
}

bool check_local_equilibrium(std::string& detail) {
  const Material material{0.03, 0.035};
  const MmsCase mms = builtin_case_trig(material);
  const Mesh mesh = classify_boundary(build_structured(1, mms.domain), mms.dirichlet_region);
  const ReferenceBasis basis(1);
  DgConfig config;
  config.alpha = -1;
  const ProblemData data = mms.problem_data(material);
  const SparseSystem system = assemble(mesh, basis, config, data);
  const SolveResult sol = solve_direct(system, 1e-11);
  double worst = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e)
    worst = std::max(worst, residual_flux(mesh, basis, config, data, sol.x, e).norm());
  if (!sol.report.converged || worst > 1e-8) {
    detail = "max defect " + std::to_string(worst);
    return false;
  }
  return true;
}

bool check_solver_report(std::string& detail) {
  const Material material{0.03, 0.035};
  const MmsCase mms = builtin_case_trig(material);
  const Mesh mesh = classify_boundary(build_structured(1, mms.domain), mms.dirichlet_region);
  const ReferenceBasis basis(1);
  DgConfig config;
  config.alpha = -1;
  const SparseSystem system = assemble(mesh, basis, config, mms.problem_data(material));
  const SolveResult sol = solve(system, SolveOptions{.symmetric_hint = true});
  const std::vector<double> ax = system.multiply(sol.x);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < system.n_dof; ++i) {
    num += (system.rhs[i] - ax[i]) * (system.rhs[i] - ax[i]);
    den += system.rhs[i] * system.rhs[i];
  }
  const double recomputed = std::sqrt(num / den);
  if (!sol.report.converged || std::abs(recomputed - sol.report.residual) > 1e-14) {
    detail = "report " + std::to_string(sol.report.residual) + " vs recomputed " + std::to_string(recomputed);
    return false;
  }
  return true;
}

} // namespace

int run_verification(std::ostream& os) {
  const Check checks[] = {
      {"triangle quadrature exact for monomials through order 10", check_triangle_quadrature},
      {"edge quadrature exact for monomials through order 11", check_edge_quadrature},
      {"reference basis nodal and a partition of unity (r = 1..4)", check_basis_nodal},
      {"basis gradients match central differences (r = 2)", check_basis_gradients},
      {"structured mesh: area, Euler characteristic, edge integrity", check_mesh},
      {"stress symmetry and energy positivity on random strains", check_material},
      {"assembled SIPG matrix symmetric to 1e-12", check_sipg_symmetry},
      {"NIPG identity B(w,w) equals squared energy norm", check_nipg_identity},
      {"patch test: linear field reproduced by all variants", check_patch_test},
      {"builtin forcing matches -div(stress) by finite differences", check_mms_forcing},
      {"local equilibrium defect below 1e-8 after solve", check_local_equilibrium},
      {"solver report residual equals recomputed residual", check_solver_report},
  };

  int failures = 0;
  for (const Check& check : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = check.run(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      os << "[ ok ] " << check.name << "\n";
    } else {
      ++failures;
      os << "[FAIL] " << check.name;
      if (!detail.empty()) os << ": " << detail;
      os << "\n";
    }
  }
  os << (failures == 0 ? "verification passed" : "verification FAILED") << " (" << (std::size(checks) - failures)
     << "/" << std::size(checks) << " checks)\n";
  return failures;
}

} // namespace dgelast
