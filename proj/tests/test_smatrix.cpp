#include <doctest.h>

#include <complex>
#include <random>

#include "scatent/smatrix.hpp"

using namespace scatent;
using cplx = std::complex<double>;

TEST_CASE("basis indexing") {
  CHECK(harmonic_index(0, 0) == 0);
  CHECK(harmonic_index(1, -1) == 1);
  CHECK(harmonic_index(1, 0) == 2);
  CHECK(harmonic_index(1, 1) == 3);
  CHECK(harmonic_index(2, -2) == 4);
  CHECK(harmonic_count(3) == 16);
  CHECK(cartesian_l1_index(2) == harmonic_index(1, 0));
  CHECK_THROWS(cartesian_l1_index(3));
}

TEST_CASE("build") {
  const auto free = LowEnergySMatrix::build(0.0);
  CHECK(free.sigma1.isZero(0.0));
  CHECK(free.sigma2.isZero(0.0));
  CHECK(free.matrix(0.7).isApprox(Eigen::MatrixXcd::Identity(4, 4)));

  const auto one = LowEnergySMatrix::build(1.0, Vec3::Zero(), 1);
  CHECK(one.sigma1(0, 0) == -2.0);
  CHECK(one.sigma2(0, 0) == 2.0);
  CHECK(one.sigma1.cwiseAbs().sum() == 2.0);
  CHECK(one.sigma2.cwiseAbs().sum() == 2.0);

  const auto tilted = LowEnergySMatrix::build(1.0, Vec3(0, 0, 0.1));
  CHECK(tilted.sigma2(0, harmonic_index(1, 0)) == 0.1);
  CHECK(tilted.sigma2(harmonic_index(1, 0), 0) == -0.1);

  CHECK_THROWS_AS(LowEnergySMatrix::build(1.0, Vec3::Zero(), 0), std::invalid_argument);
}

TEST_CASE("apply") {
  const auto sm = LowEnergySMatrix::build(1.0, Vec3(0.2, -0.1, 0.3), 2);
  Eigen::VectorXcd u = Eigen::VectorXcd::Random(9);
  CHECK(sm.apply(0.0, u).isApprox(u));

  const auto plain = LowEnergySMatrix::build(1.0);
  Eigen::VectorXcd e00 = Eigen::VectorXcd::Zero(4);
  e00[0] = 1.0;
  const Eigen::VectorXcd out = plain.apply(0.1, e00);
  CHECK(std::abs(out[0] - cplx(1.0 - 0.02, -0.2)) < 1e-15);
  CHECK(out.tail(3).isZero(0.0));

  CHECK_THROWS_AS(sm.apply(0.1, Eigen::VectorXcd::Zero(4)), DimensionMismatch);
}

TEST_CASE("apply is linear and leaves l >= 2 untouched") {
  const auto sm = LowEnergySMatrix::build(0.8, Vec3(0.1, 0.4, -0.2), 3);
  const Eigen::VectorXcd u = Eigen::VectorXcd::Random(16);
  const Eigen::VectorXcd v = Eigen::VectorXcd::Random(16);
  const cplx alpha(0.3, -1.2);
  const Eigen::VectorXcd lhs = sm.apply(0.37, alpha * u + v);
  const Eigen::VectorXcd rhs = alpha * sm.apply(0.37, u) + sm.apply(0.37, v);
  CHECK((lhs - rhs).norm() < 1e-14);
  const Eigen::VectorXcd high = sm.apply(0.9, u);
  CHECK((high.tail(12) - u.tail(12)).norm() == 0.0);
}

TEST_CASE("norm change is O(k^4) for Y1 = 0") {
  const double c0 = 1.3;
  const auto sm = LowEnergySMatrix::build(c0);
  Eigen::VectorXcd u = Eigen::VectorXcd::Random(4);
  u.normalize();
  for (double k : {0.1, 0.05, 0.025}) {
    const double change = sm.apply(k, u).squaredNorm() - 1.0;
    // |1 - 2 i c0 k - 2 c0^2 k^2|^2 = 1 + 4 c0^4 k^4 on the l = 0 component
    CHECK(change == doctest::Approx(4 * std::pow(c0, 4) * std::pow(k, 4) * std::norm(u[0])).epsilon(1e-8));
  }
}

TEST_CASE("unitarity identity") {
  CHECK(LowEnergySMatrix::build(1.0).unitarity_defect() == 0.0);
  CHECK(LowEnergySMatrix::build(0.7, Vec3(0.1, -0.2, 0.05)).unitarity_defect() < 1e-15);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-10, 10);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto sm = LowEnergySMatrix::build(d(rng), Vec3(d(rng), d(rng), d(rng)), 1 + i % 3);
    worst = std::max(worst, sm.unitarity_defect());
    // Sigma2 - Sigma2^T holds only the Y1 couplings
    const Eigen::MatrixXd anti = sm.sigma2 - sm.sigma2.transpose();
    CHECK(anti.cwiseAbs().sum() == doctest::Approx(4 * sm.y1.cwiseAbs().sum()));
  }
  CHECK(worst < 1e-12);
}
