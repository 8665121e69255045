#include <doctest.h>

#include <cmath>
#include <random>

#include "dgelast/analysis.hpp"
#include "dgelast/errors.hpp"
#include "dgelast/mms.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dgelast;
using dgelast::testing::kDefaultMaterial;
using dgelast::testing::make_config;

TEST_CASE("l2_error: interpolated polynomials are exact") {
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  for (int r : {1, 2, 3}) {
    const ReferenceBasis basis(r);
    const VectorField poly = [r](const Vec2& x) {
      return Vec2(std::pow(x.x(), r) + x.y(), std::pow(x.x(), r - 1) * x.y());
    };
    const std::vector<double> coeffs = oracle::interpolate(mesh, basis, poly);
    CHECK(l2_error(mesh, basis, coeffs, poly) <= 1e-10);
  }
}

TEST_CASE("l2_error of a constant offset over the square is 2|c|") {
  const Mesh mesh = build_structured(2, Rect{-1, -1, 1, 1});
  const ReferenceBasis basis(1);
  const double c = 0.37;
  const std::vector<double> coeffs =
      oracle::interpolate(mesh, basis, [c](const Vec2&) { return Vec2(c, 0.0); });
  const VectorField zero = [](const Vec2&) { return Vec2(Vec2::Zero()); };
  CHECK(l2_error(mesh, basis, coeffs, zero) == doctest::Approx(2.0 * c).epsilon(1e-12));
}

TEST_CASE("l2_error matches an order-10 brute-force evaluation") {
  const MmsCase mms = builtin_case_trig(kDefaultMaterial);
  const Mesh mesh = dgelast::testing::case_mesh(mms, 3);
  const ReferenceBasis basis(1);
  const std::vector<double> interpolant = oracle::interpolate(mesh, basis, mms.u);

  const TriangleRule high = triangle_rule(10);
  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    for (std::size_t q = 0; q < high.points.size(); ++q) {
      const Eigen::VectorXd phi = basis.eval(high.points[q]);
      Vec2 value = Vec2::Zero();
      for (int i = 0; i < basis.n_local(); ++i)
        for (int c = 0; c < 2; ++c) value(c) += interpolant[global_dof(e, basis.n_local(), i, c)] * phi(i);
      acc += high.weights[q] * geom.det * (mms.u(geom.to_physical(high.points[q])) - value).squaredNorm();
    }
  }
  const double brute_force = std::sqrt(acc);
  CHECK(l2_error(mesh, basis, interpolant, mms.u) == doctest::Approx(brute_force).epsilon(1e-6));
}

TEST_CASE("energy norm: zero field, continuous field, NIPG identity") {
  const MmsCase mms = builtin_case_trig(kDefaultMaterial);
  const Mesh mesh = dgelast::testing::case_mesh(mms, 2);
  const ReferenceBasis basis(1);
  const DgConfig config = make_config(1, 125.0, 0.0, 1);
  const int n = n_dof_total(mesh, basis);

  SUBCASE("zero field") {
    const std::vector<double> zero(n, 0.0);
    CHECK(energy_norm_squared(mesh, basis, config, {kDefaultMaterial}, zero) == 0.0);
  }

  SUBCASE("continuous interpolant vanishing on the boundary has no jump part") {
    const std::vector<double> coeffs = oracle::interpolate(mesh, basis, mms.u);
    const VectorField zero_fn = [](const Vec2&) { return Vec2(Vec2::Zero()); };
    const TensorField zero_grad = [](const Vec2&) { return Mat2(Mat2::Zero()); };
    // error against 0 isolates the field's own volume and jump parts
    const EnergyParts parts = energy_error_parts(mesh, basis, config, {kDefaultMaterial}, coeffs, zero_fn, zero_grad);
    CHECK(parts.jump_sq <= 1e-18 * parts.volume_sq);
  }

  SUBCASE("random field matches assembled NIPG quadratic form") {
    std::mt19937 rng(61);
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<double> w = oracle::random_field(n, rng);
      const double norm_sq = energy_norm_squared(mesh, basis, config, {kDefaultMaterial}, w);
      const double b = bilinear_apply(mesh, basis, config, {kDefaultMaterial}, w, w);
      CHECK(b == doctest::Approx(norm_sq).epsilon(1e-10));
    }
  }
}

TEST_CASE("energy norm under superpenalization uses the configured exponent") {
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  const ReferenceBasis basis(1);
  std::mt19937 rng(62);
  const std::vector<double> w = oracle::random_field(n_dof_total(mesh, basis), rng);

  // With all jumps scaled by h^-d, the difference of the two norms is
  // exactly the jump part rescaled.
  const DgConfig d1 = make_config(1, 125.0, 30.0, 1, 1);
  const DgConfig d3 = make_config(1, 125.0, 30.0, 1, 3);
  const double n1 = energy_norm_squared(mesh, basis, d1, {kDefaultMaterial}, w);
  const double n3 = energy_norm_squared(mesh, basis, d3, {kDefaultMaterial}, w);
  const double h = mesh.h_diameter;
  const VectorField zero_fn = [](const Vec2&) { return Vec2(Vec2::Zero()); };
  const TensorField zero_grad = [](const Vec2&) { return Mat2(Mat2::Zero()); };
  const EnergyParts parts1 = energy_error_parts(mesh, basis, d1, {kDefaultMaterial}, w, zero_fn, zero_grad);
  CHECK(n3 - n1 == doctest::Approx((1.0 / (h * h) - 1.0) * parts1.jump_sq).epsilon(1e-10));
}

TEST_CASE("energy_error: exact reproduction and the constant-strain value") {
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  const ReferenceBasis basis(1);
  const DgConfig config = make_config(-1, 125.0, 0.0, 1);

  SUBCASE("interpolated linear field has negligible error") {
    const MmsCase mms = builtin_case_linear(kDefaultMaterial);
    const std::vector<double> coeffs = oracle::interpolate(mesh, basis, mms.u);
    const EnergyParts parts = energy_error_parts(mesh, basis, config, {kDefaultMaterial}, coeffs, mms.u, mms.grad_u);
    CHECK(std::sqrt(parts.total()) <= 1e-9);
  }

  SUBCASE("u = (x, y) against the zero field: volume part is sqrt(4 (4 lambda + 4 mu))") {
    const MmsCase mms = builtin_case_linear(kDefaultMaterial);
    const std::vector<double> zero(n_dof_total(mesh, basis), 0.0);
    const EnergyParts parts = energy_error_parts(mesh, basis, config, {kDefaultMaterial}, zero, mms.u, mms.grad_u);
    // energy density 4 lambda + 4 mu = 0.26 over area 4
    CHECK(std::sqrt(parts.volume_sq) == doctest::Approx(std::sqrt(1.04)).epsilon(1e-12));
    CHECK(std::sqrt(parts.volume_sq) == doctest::Approx(1.019803902718557).epsilon(1e-12));
  }

  SUBCASE("report identity: energy = sqrt(volume^2 + jump^2)") {
    const MmsCase mms = builtin_case_trig(kDefaultMaterial);
    const Mesh fine = dgelast::testing::case_mesh(mms, 1);
    const auto solved =
        dgelast::testing::solve_problem(fine, basis, config, mms.problem_data(kDefaultMaterial), 1e-11);
    const EnergyParts parts =
        energy_error_parts(fine, basis, config, {kDefaultMaterial}, solved.coeffs, mms.u, mms.grad_u);
    const double total = std::sqrt(parts.total());
    CHECK(total * total == doctest::Approx(parts.volume_sq + parts.jump_sq).epsilon(1e-12));
    CHECK(parts.volume_sq >= 0.0);
    CHECK(parts.jump_sq >= 0.0);
  }
}

TEST_CASE("SIPG energy errors decrease monotonically across levels 1-3") {
  const MmsCase mms = builtin_case_trig(kDefaultMaterial);
  const ReferenceBasis basis(1);
  const DgConfig config = make_config(-1, 125.0, 0.0, 1);
  double previous = std::numeric_limits<double>::infinity();
  for (int level : {1, 2, 3}) {
    const Mesh mesh = dgelast::testing::case_mesh(mms, level);
    const auto solved = dgelast::testing::solve_problem(mesh, basis, config, mms.problem_data(kDefaultMaterial));
    REQUIRE(solved.report.converged);
    const EnergyParts parts =
        energy_error_parts(mesh, basis, config, {kDefaultMaterial}, solved.coeffs, mms.u, mms.grad_u);
    const double energy = std::sqrt(parts.total());
    CHECK(energy < previous);
    previous = energy;
  }
}

TEST_CASE("rates: halving, published-table anchors, error handling") {
  CHECK(rates(std::vector<double>{0.4, 0.1})[0] == doctest::Approx(2.0).epsilon(1e-14));

  // reference error sequences whose tail rates are 2.022 and exactly 1
  CHECK(rates(std::vector<double>{0.00199, 0.00049})[0] == doctest::Approx(2.022).epsilon(5e-4));
  CHECK(rates(std::vector<double>{0.02598, 0.01299})[0] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(rates(std::vector<double>{0.5}).empty());
  CHECK_THROWS_AS(rates(std::vector<double>{0.1, 0.0}), RateError);
  CHECK_THROWS_AS(rates(std::vector<double>{-0.1, 0.2}), RateError);
}

TEST_CASE("convergence table: expected exponents and rate array shapes") {
  std::vector<ErrorReport> rows(3);
  rows[0] = {1, 0.5, 10, 0.4, 0.8, 0.1, 0.79};
  rows[1] = {2, 0.25, 40, 0.1, 0.4, 0.05, 0.39};
  rows[2] = {3, 0.125, 160, 0.025, 0.2, 0.025, 0.19};
  const ConvergenceTable table = make_convergence_table(rows, 1);
  CHECK(table.l2_rates.size() == 2);
  CHECK(table.energy_rates.size() == 2);
  CHECK(table.expected_l2_rate == 2.0);
  CHECK(table.expected_energy_rate == 1.0);
  CHECK(table.l2_rates[0] == doctest::Approx(2.0));

  const ConvergenceTable limited = make_convergence_table(rows, 3, 2.0);
  CHECK(limited.expected_l2_rate == 2.0);
  CHECK(limited.expected_energy_rate == 1.0);
}

TEST_CASE("norm homogeneity and triangle inequality") {
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  const ReferenceBasis basis(2);
  const DgConfig config = make_config(1, 125.0, 30.0, 2);
  const int n = n_dof_total(mesh, basis);
  std::mt19937 rng(63);

  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a = oracle::random_field(n, rng);
    std::vector<double> b = oracle::random_field(n, rng);

    const double norm_a = std::sqrt(energy_norm_squared(mesh, basis, config, {kDefaultMaterial}, a));
    const double norm_b = std::sqrt(energy_norm_squared(mesh, basis, config, {kDefaultMaterial}, b));

    const double t = -2.5;
    std::vector<double> scaled = a;
    for (double& v : scaled) v *= t;
    const double norm_scaled = std::sqrt(energy_norm_squared(mesh, basis, config, {kDefaultMaterial}, scaled));
    CHECK(norm_scaled == doctest::Approx(std::abs(t) * norm_a).epsilon(1e-12));

    std::vector<double> sum = a;
    for (int i = 0; i < n; ++i) sum[i] += b[i];
    const double norm_sum = std::sqrt(energy_norm_squared(mesh, basis, config, {kDefaultMaterial}, sum));
    CHECK(norm_sum <= (norm_a + norm_b) * (1.0 + 1e-10));

    const double l2_a = l2_error(mesh, basis, a, [](const Vec2&) { return Vec2(Vec2::Zero()); });
    std::vector<double> scaled_l2 = a;
    for (double& v : scaled_l2) v *= t;
    CHECK(l2_error(mesh, basis, scaled_l2, [](const Vec2&) { return Vec2(Vec2::Zero()); }) ==
          doctest::Approx(std::abs(t) * l2_a).epsilon(1e-12));
  }
}

TEST_CASE("Galerkin orthogonality for SIPG") {
  const MmsCase mms = builtin_case_trig(kDefaultMaterial);
  const Mesh mesh = dgelast::testing::case_mesh(mms, 2);
  const ReferenceBasis basis(1);
  const DgConfig config = make_config(-1, 125.0, 0.0, 1);
  const SparseSystem system = assemble(mesh, basis, config, mms.problem_data(kDefaultMaterial));
  const SolveResult solved = solve_direct(system, 1e-11);
  REQUIRE(solved.report.converged);

  std::mt19937 rng(64);
  const std::vector<double> au = system.multiply(solved.x);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> v = oracle::random_field(system.n_dof, rng);
    // B(u, v) via quadrature of the exact field minus B(u_h, v)
    const double exact_side = oracle::bilinear_against_exact(mesh, basis, config, {kDefaultMaterial}, v, mms.grad_u,
                                                             oracle::ExactSlot::trial);
    double discrete_side = 0.0;
    for (int i = 0; i < system.n_dof; ++i) discrete_side += v[i] * au[i];
    CHECK(std::abs(exact_side - discrete_side) <= 1e-6);
  }
}
