#include <doctest.h>

#include <cmath>
#include <random>

#include "scatent/model.hpp"

using namespace scatent;

TEST_CASE("mass split") {
  const MassSplit ms(3.0, 1.0);
  CHECK(ms.mu1() == 0.75);
  CHECK(ms.mu1() + ms.mu2() == 1.0);
  CHECK(ms.reduced_mass() == doctest::Approx(0.75));
  const MassSplit unit = MassSplit::from_fraction(0.3);
  CHECK(unit.mu1() == 0.3);
  CHECK(unit.total() == 1.0);
  CHECK_THROWS_AS(MassSplit(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(MassSplit(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(MassSplit::from_fraction(1.0), std::invalid_argument);
  CHECK_THROWS_AS(MassSplit::from_fraction(0.0), std::invalid_argument);
}

TEST_CASE("physical scales") {
  PhysicalScales sc{2.0, 0.1, Vec3(0, 0, 0.4)};
  CHECK(sc.k0() == doctest::Approx(0.2));
  CHECK(sc.s() == doctest::Approx(0.05));
  sc.hbar = 0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}

TEST_CASE("in-state construction") {
  const ProductInState rest = make_in_state(Vec3::Zero(), 1.0);
  CHECK(rest.packet1.mean.isZero());
  CHECK(rest.packet2.mean.isZero());
  const ProductInState moving = make_in_state(Vec3(0, 0, 0.3), 1.0);
  CHECK(moving.packet1.mean == Vec3(0, 0, 0.3));
  CHECK(moving.packet2.mean == Vec3(0, 0, -0.3));
  CHECK(moving.mean_relative_momentum(MassSplit::from_fraction(0.5)).isApprox(Vec3(0, 0, 0.3)));
  CHECK(moving.mean_relative_momentum(MassSplit::from_fraction(0.8)).isApprox(Vec3(0, 0, 0.3)));
  CHECK_THROWS_AS(make_in_state(Vec3::Zero(), 0.0), std::invalid_argument);
  CHECK(rest(Vec3::Zero(), Vec3::Zero()) == doctest::Approx(std::pow(std::numbers::pi, -1.5)));
}

TEST_CASE("packet normalization across scales") {
  for (double sigma : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
    const GaussianPacket packet{Vec3(0.2 * sigma, -sigma, 3 * sigma), sigma};
    const Estimate norm = packet_norm_numeric(packet);
    CHECK(std::abs(norm.value - 1.0) < 1e-10);
  }
}

TEST_CASE("kinematics") {
  const Vec3 p(0.3, -0.1, 2.0);
  CHECK(relative_momentum(p, -p, MassSplit::from_fraction(0.5)).isApprox(p));
  CHECK(relative_momentum(Vec3(1, 0, 0), Vec3::Zero(), MassSplit::from_fraction(0.25)).isApprox(Vec3(0.75, 0, 0)));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-3, 3);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const MassSplit ms = MassSplit::from_fraction(0.01 + 0.98 * (d(rng) + 3) / 6);
    const Vec3 p1(d(rng), d(rng), d(rng));
    const Vec3 p2(d(rng), d(rng), d(rng));
    const auto [q1, q2] = particle_momenta(total_momentum(p1, p2), relative_momentum(p1, p2, ms), ms);
    worst = std::max({worst, (q1 - p1).norm(), (q2 - p2).norm()});
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("in-state distance closed form") {
  CHECK(in_state_distance(Vec3::Zero(), 1.0) == 0.0);
  CHECK(in_state_distance(Vec3(0, 0, 100), 1.0) == doctest::Approx(std::sqrt(2.0)));
  for (double p : {0.1, 0.7, 3.0}) {
    const Vec3 p0 = Vec3(1, -1, 0.5).normalized() * p;
    CHECK(std::abs(in_state_distance(p0, 1.0) - in_state_distance_quad(p0, 1.0).value) < 1e-8);
  }
  CHECK_THROWS_AS(in_state_distance(Vec3::Zero(), -1.0), std::invalid_argument);
}

TEST_CASE("in-state distance: bound with C = 2 and scale invariance") {
  for (int i = 0; i < 20; ++i) {
    const double ratio = std::pow(10.0, -3.0 + 5.0 * i / 19.0);
    const double base = in_state_distance(Vec3(0, 0, ratio), 1.0);
    for (double sigma : {1e-3, 0.5, 40.0}) {
      const double d = in_state_distance(Vec3(ratio * sigma, 0, 0), sigma);
      CHECK(d <= 2.0 * std::min(ratio, 1.0));
      CHECK(std::abs(d - base) <= 1e-12 * base);
    }
  }
}

TEST_CASE("momentum-weighted distance") {
  CHECK(momentum_weighted_distance(Vec3::Zero(), 1.0).value == 0.0);

  SUBCASE("linear bound near zero with an empirical constant") {
    double c_emp = 0;
    double prev = 0;
    std::vector<double> ratios;
    for (int i = 0; i < 12; ++i) {
      const double p = std::pow(10.0, -4.0 + 3.0 * i / 11.0);
      const double v = momentum_weighted_distance(Vec3(0, 0, p), 1.0).value;
      CHECK(v > prev);
      prev = v;
      ratios.push_back(v / p);
      c_emp = std::max(c_emp, v / p);
    }
    // ratio converges to a finite limit as p0 -> 0
    CHECK(std::abs(ratios.front() - ratios[1]) / ratios.front() < 1e-3);
    for (double p : {1e-5, 1e-3, 0.05, 0.2}) {
      CHECK(momentum_weighted_distance(Vec3(p, 0, 0), 1.0).value <= 1.5 * c_emp * p);
    }
  }

  SUBCASE("two resolutions agree at p0 = 0.5 sigma") {
    QuadratureSpec coarse;
    coarse.radial_nodes = 40;
    QuadratureSpec fine;
    fine.radial_nodes = 96;
    const Estimate a = momentum_weighted_distance(Vec3(0, 0, 0.5), 1.0, coarse);
    const Estimate b = momentum_weighted_distance(Vec3(0, 0, 0.5), 1.0, fine);
    CHECK(std::abs(a.value - b.value) <= a.abs_err + b.abs_err + 1e-14);
  }

  SUBCASE("scales with sigma") {
    const double a = momentum_weighted_distance(Vec3(0, 0, 0.5), 1.0).value;
    const double b = momentum_weighted_distance(Vec3(0, 0, 5.0), 10.0).value;
    CHECK(b == doctest::Approx(10.0 * a).epsilon(1e-10));
  }
}
