#include "dgelast/mms.hpp"

#include <cmath>
#include <numbers>

namespace dgelast {

MmsCase builtin_case_trig(const Material& material) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double lambda = material.lambda;
  const double mu = material.mu;

  const auto zeta1 = [=](const Vec2& x) { return std::cos(half_pi * x.x() + half_pi * x.y()); };
  const auto zeta2 = [=](const Vec2& x) { return std::cos(half_pi * x.x()) * std::cos(half_pi * x.y()); };

  MmsCase mms;
  mms.domain = Rect{-1.0, -1.0, 1.0, 1.0};
  mms.u = [=](const Vec2& x) {
    const double z = zeta2(x);
    return Vec2(z, z);
  };
  mms.grad_u = [=](const Vec2& x) {
    const double dx = -half_pi * std::sin(half_pi * x.x()) * std::cos(half_pi * x.y());
    const double dy = -half_pi * std::cos(half_pi * x.x()) * std::sin(half_pi * x.y());
    Mat2 g;
    g << dx, dy, dx, dy;
    return g;
  };
  mms.body_force = [=](const Vec2& x) {
    const double pi2 = half_pi * half_pi; // pi^2 / 4
    const double z1 = zeta1(x);
    const double z2 = zeta2(x);
    const double component = lambda * pi2 * z1 + 2.0 * mu * (pi2 * z2 + 0.5 * pi2 * z1);
    return Vec2(component, component);
  };
  mms.dirichlet = mms.u;
  mms.neumann = [=, u_grad = mms.grad_u](const Vec2& x, const Vec2& n) {
    return Vec2(stress(material, strain(u_grad(x))) * n);
  };
  mms.dirichlet_region = [](const Vec2&) { return true; };
  return mms;
}

MmsCase builtin_case_linear(const Material& material) {
  MmsCase mms;
  mms.domain = Rect{-1.0, -1.0, 1.0, 1.0};
  mms.u = [](const Vec2& x) { return x; };
  mms.grad_u = [](const Vec2&) { return Mat2(Mat2::Identity()); };
  mms.body_force = [](const Vec2&) { return Vec2(Vec2::Zero()); };
  mms.dirichlet = mms.u;
  mms.neumann = [=](const Vec2&, const Vec2& n) {
    return Vec2((2.0 * material.lambda + 2.0 * material.mu) * n);
  };
  mms.dirichlet_region = [](const Vec2&) { return true; };
  return mms;
}

} // namespace dgelast
