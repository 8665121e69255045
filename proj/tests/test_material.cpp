#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "dgelast/errors.hpp"
#include "dgelast/material.hpp"

using namespace dgelast;

namespace {

const Material kDefaultMaterial{0.03, 0.035};

Mat2 random_symmetric(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat2 eps;
  const double a = dist(rng), b = dist(rng), c = dist(rng);
  eps << a, b, b, c;
  return eps;
}

} // namespace

TEST_CASE("strain is the symmetric gradient") {
  CHECK((strain(Mat2::Identity()) - Mat2::Identity()).norm() == 0.0);

  Mat2 shear;
  shear << 0, 1, 0, 0;
  Mat2 expected;
  expected << 0, 0.5, 0.5, 0;
  CHECK((strain(shear) - expected).norm() == 0.0);

  Mat2 rotation;
  rotation << 0, 1, -1, 0;
  CHECK(strain(rotation).norm() == 0.0);
}

TEST_CASE("stress of the identity strain, reference constants") {
  // lambda tr(I) I + 2 mu I = (2 lambda + 2 mu) I = 0.13 I
  const Mat2 sigma = stress(kDefaultMaterial, Mat2::Identity());
  CHECK((sigma - 0.13 * Mat2::Identity()).norm() <= 1e-15);

  CHECK(stress(kDefaultMaterial, Mat2::Zero()).norm() == 0.0);

  Mat2 shear;
  shear << 0, 0.3, 0.3, 0;
  const Mat2 tau = stress(kDefaultMaterial, shear);
  CHECK(tau(0, 0) == 0.0);
  CHECK(tau(1, 1) == 0.0);
  CHECK(tau(0, 1) == doctest::Approx(2.0 * 0.035 * 0.3).epsilon(1e-15));
  CHECK(tau.trace() == 0.0);
}

TEST_CASE("stress rejects asymmetric input, preserves symmetry otherwise") {
  Mat2 bad;
  bad << 1, 0.5, 0.1, 1;
  CHECK_THROWS_AS(stress(kDefaultMaterial, bad), ContractError);

  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 sigma = stress(kDefaultMaterial, random_symmetric(rng));
    CHECK(std::abs(sigma(0, 1) - sigma(1, 0)) <= 1e-15);
  }
}

TEST_CASE("energy pairing: trace identity, major symmetry, positivity") {
  const double lambda = kDefaultMaterial.lambda, mu = kDefaultMaterial.mu;
  CHECK(energy_pairing(kDefaultMaterial, Mat2::Identity(), Mat2::Identity()) ==
        doctest::Approx(4.0 * lambda + 4.0 * mu).epsilon(1e-15));

  std::mt19937 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 a = random_symmetric(rng);
    const Mat2 b = random_symmetric(rng);
    CHECK(energy_pairing(kDefaultMaterial, a, b) ==
          doctest::Approx(energy_pairing(kDefaultMaterial, b, a)).epsilon(1e-13));
    if (a.squaredNorm() > 1e-10) CHECK(energy_pairing(kDefaultMaterial, a, a) > 0.0);
  }
}

TEST_CASE("pairing bounded below by the smallest eigenvalue of the elastic tensor") {
  // Represent the isotropic tensor in an orthonormal basis of symmetric
  // 2x2 tensors and read off its eigenvalues.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat2 basis_tensors[3];
  basis_tensors[0] << inv_sqrt2, 0, 0, inv_sqrt2;
  basis_tensors[1] << inv_sqrt2, 0, 0, -inv_sqrt2;
  basis_tensors[2] << 0, inv_sqrt2, inv_sqrt2, 0;

  Eigen::Matrix3d rep;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rep(i, j) = energy_pairing(kDefaultMaterial, basis_tensors[i], basis_tensors[j]);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(rep);
  const double min_eig = eig.eigenvalues().minCoeff();
  CHECK(min_eig == doctest::Approx(2.0 * kDefaultMaterial.mu).epsilon(1e-12));

  std::mt19937 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 eps = random_symmetric(rng);
    CHECK(energy_pairing(kDefaultMaterial, eps, eps) >= (min_eig - 1e-12) * eps.squaredNorm());
    CHECK(energy_pairing(kDefaultMaterial, eps, eps) >= 2.0 * kDefaultMaterial.mu * eps.squaredNorm() - 1e-12);
  }
}

TEST_CASE("stress is linear and 1-homogeneous in the strain") {
  std::mt19937 rng(34);
  const Mat2 a = random_symmetric(rng);
  const Mat2 b = random_symmetric(rng);
  CHECK((stress(kDefaultMaterial, a + b) - stress(kDefaultMaterial, a) - stress(kDefaultMaterial, b)).norm() <= 1e-15);
  CHECK((stress(kDefaultMaterial, 3.5 * a) - 3.5 * stress(kDefaultMaterial, a)).norm() <= 1e-15);
}
