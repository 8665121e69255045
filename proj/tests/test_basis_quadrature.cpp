#include <doctest.h>

#include <cmath>
#include <random>

#include "dgelast/basis.hpp"
#include "dgelast/errors.hpp"
#include "dgelast/mesh.hpp"
#include "dgelast/quadrature.hpp"
#include "oracles.hpp"

using namespace dgelast;

namespace {

Vec2 random_interior_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.05, 0.9);
  double x = dist(rng), y = dist(rng);
  if (x + y > 0.95) {
    x *= 0.4;
    y *= 0.4;
  }
  return {x, y};
}

} // namespace

TEST_CASE("P1 basis values are barycentric coordinates") {
  const ReferenceBasis basis(1);
  CHECK(basis.n_local() == 3);

  const Eigen::VectorXd at_origin = basis.eval({0.0, 0.0});
  CHECK(at_origin(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at_origin(1) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(at_origin(2) == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  const Eigen::VectorXd at_center = basis.eval({1.0 / 3.0, 1.0 / 3.0});
  for (int i = 0; i < 3; ++i) CHECK(at_center(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("nodal property at every lattice node, r = 1..4") {
  for (int r = 1; r <= 4; ++r) {
    const ReferenceBasis basis(r);
    CHECK(basis.n_local() == (r + 1) * (r + 2) / 2);
    for (int k = 0; k < basis.n_local(); ++k) {
      const Eigen::VectorXd values = basis.eval(basis.nodes()[k]);
      for (int i = 0; i < basis.n_local(); ++i)
        CHECK(std::abs(values(i) - (i == k ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("r=2 basis is nodal at the bottom mid-edge point") {
  const ReferenceBasis basis(2);
  int node = -1;
  for (int k = 0; k < basis.n_local(); ++k)
    if ((basis.nodes()[k] - Vec2(0.5, 0.0)).norm() < 1e-14) node = k;
  REQUIRE(node >= 0);
  const Eigen::VectorXd values = basis.eval({0.5, 0.0});
  for (int i = 0; i < basis.n_local(); ++i)
    CHECK(std::abs(values(i) - (i == node ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("partition of unity and gradient row sums") {
  std::mt19937 rng(21);
  for (int r = 1; r <= 4; ++r) {
    const ReferenceBasis basis(r);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec2 p = random_interior_point(rng);
      CHECK(std::abs(basis.eval(p).sum() - 1.0) <= 1e-10);
      const auto grad = basis.eval_grad(p);
      CHECK(std::abs(grad.col(0).sum()) <= 1e-10);
      CHECK(std::abs(grad.col(1).sum()) <= 1e-10);
    }
  }
}

TEST_CASE("P1 gradients are the constant barycentric gradients") {
  const ReferenceBasis basis(1);
  for (const Vec2& p : {Vec2(0.2, 0.3), Vec2(0.7, 0.1)}) {
    const auto grad = basis.eval_grad(p);
    CHECK((Vec2(grad.row(0)) - Vec2(-1.0, -1.0)).norm() <= 1e-12);
    CHECK((Vec2(grad.row(1)) - Vec2(1.0, 0.0)).norm() <= 1e-12);
    CHECK((Vec2(grad.row(2)) - Vec2(0.0, 1.0)).norm() <= 1e-12);
  }
}

TEST_CASE("r=2 gradients match central differences") {
  const ReferenceBasis basis(2);
  std::mt19937 rng(22);
  const double step = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 p = random_interior_point(rng);
    const auto grad = basis.eval_grad(p);
    for (int dim = 0; dim < 2; ++dim) {
      Vec2 dp = Vec2::Zero();
      dp(dim) = step;
      const Eigen::VectorXd fd = (basis.eval(p + dp) - basis.eval(p - dp)) / (2.0 * step);
      for (int i = 0; i < basis.n_local(); ++i) CHECK(std::abs(fd(i) - grad(i, dim)) <= 1e-5);
    }
  }
}

TEST_CASE("interpolation reproduces polynomials of matching degree") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int r = 1; r <= 4; ++r) {
    const ReferenceBasis basis(r);
    // random polynomial of total degree <= r
    std::vector<std::array<int, 2>> exps;
    std::vector<double> poly;
    for (int a = 0; a <= r; ++a)
      for (int b = 0; a + b <= r; ++b) {
        exps.push_back({a, b});
        poly.push_back(coeff(rng));
      }
    const auto eval_poly = [&](const Vec2& p) {
      double acc = 0.0;
      for (std::size_t m = 0; m < poly.size(); ++m)
        acc += poly[m] * std::pow(p.x(), exps[m][0]) * std::pow(p.y(), exps[m][1]);
      return acc;
    };

    Eigen::VectorXd nodal(basis.n_local());
    for (int k = 0; k < basis.n_local(); ++k) nodal(k) = eval_poly(basis.nodes()[k]);

    for (int trial = 0; trial < 50; ++trial) {
      const Vec2 p = random_interior_point(rng);
      CHECK(std::abs(basis.eval(p).dot(nodal) - eval_poly(p)) <= 1e-9);
    }
  }
}

TEST_CASE("basis degree limits") {
  CHECK_THROWS_AS(ReferenceBasis(0), CapabilityError);
  CHECK_THROWS_AS(ReferenceBasis(5), CapabilityError);
}

TEST_CASE("order-1 triangle rule is the centroid rule") {
  const TriangleRule rule = triangle_rule(1);
  REQUIRE(rule.points.size() == 1);
  CHECK((rule.points[0] - Vec2(1.0 / 3.0, 1.0 / 3.0)).norm() <= 1e-14);
  CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("triangle rules: positive weights, correct sum, monomial exactness") {
  for (int r = 1; r <= 4; ++r) {
    const int order = 2 * r + 2;
    const TriangleRule rule = triangle_rule(order);
    REQUIRE(rule.exactness >= order);

    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 0.5) <= 1e-14);

    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
          acc += rule.weights[q] * std::pow(rule.points[q].x(), a) * std::pow(rule.points[q].y(), b);
        const double exact = oracle::monomial_integral(a, b);
        CHECK(std::abs(acc - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      }
  }
}

TEST_CASE("edge rules integrate monomials on [0,1]") {
  const EdgeRule quadratic = edge_rule(2);
  double acc = 0.0;
  for (std::size_t q = 0; q < quadratic.points.size(); ++q)
    acc += quadratic.weights[q] * quadratic.points[q] * quadratic.points[q];
  CHECK(std::abs(acc - 1.0 / 3.0) <= 1e-14);

  for (int order : {1, 3, 5, 9, 11}) {
    const EdgeRule rule = edge_rule(order);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-14);
    for (int k = 0; k <= order; ++k) {
      double val = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) val += rule.weights[q] * std::pow(rule.points[q], k);
      CHECK(std::abs(val - 1.0 / (k + 1)) <= 1e-13);
    }
  }
}

TEST_CASE("quadrature order limits") {
  CHECK_THROWS_AS(triangle_rule(0), CapabilityError);
  CHECK_THROWS_AS(triangle_rule(99), CapabilityError);
  CHECK_THROWS_AS(edge_rule(-1), CapabilityError);
}

TEST_CASE("trace points: midpoint, reversal, cross-element agreement") {
  const EdgeRule one_point = edge_rule(1);
  const auto mid = trace_points(0, one_point);
  REQUIRE(mid.size() == 1);
  CHECK((mid[0] - Vec2(0.5, 0.0)).norm() <= 1e-15);

  const EdgeRule rule = edge_rule(5);
  for (int k = 0; k < 3; ++k) {
    const auto forward = trace_points(k, rule, false);
    const auto backward = trace_points(k, rule, true);
    REQUIRE(forward.size() == backward.size());
    for (std::size_t q = 0; q < forward.size(); ++q)
      CHECK((forward[q] - backward[forward.size() - 1 - q]).norm() <= 1e-14);
  }

  // Both sides of every interior edge must see the same physical points.
  const Mesh mesh = build_structured(1, Rect{-1, -1, 1, 1});
  for (const Edge& edge : mesh.edges) {
    if (edge.is_boundary()) continue;
    const auto points_of = [&](int element) {
      const LocalEdge local = find_local_edge(mesh, element, edge.endpoints[0], edge.endpoints[1]);
      const ElementGeometry geom = element_geometry(mesh, element);
      std::vector<Vec2> physical;
      for (const Vec2& ref : trace_points(local.index, rule, local.reversed))
        physical.push_back(geom.to_physical(ref));
      return physical;
    };
    const auto plus = points_of(edge.plus_element);
    const auto minus = points_of(edge.minus_element);
    REQUIRE(plus.size() == minus.size());
    for (std::size_t q = 0; q < plus.size(); ++q) CHECK((plus[q] - minus[q]).norm() <= 1e-13);
  }

  CHECK_THROWS_AS(trace_points(3, rule), ContractError);
}
