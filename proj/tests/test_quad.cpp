#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scatent/quad.hpp"

using namespace scatent;

TEST_CASE("two-point rule") {
  const auto rule = gauss_rule<double>(2);
  CHECK(rule.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rule.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rule.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rule.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("three-point rule integrates x^4 exactly") {
  const auto rule = gauss_rule<double>(3);
  double sum = 0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 4);
  CHECK(std::abs(sum - 0.4) < 1e-15);
}

TEST_CASE("degree exactness for n = 2..64") {
  double worst = 0;
  for (int n = 2; n <= 64; ++n) {
    const auto rule = gauss_rule<double>(n);
    CHECK(rule.weights.minCoeff() > 0);
    CHECK(std::abs(rule.weights.sum() - 2.0) < 1e-13);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0;
      for (Eigen::Index i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
      worst = std::max(worst, std::abs(sum - exact));
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("rule size limits") {
  CHECK_THROWS_AS(gauss_rule<double>(1), std::invalid_argument);
  CHECK_THROWS_AS(gauss_rule<double>(kMaxGaussNodes + 1), std::domain_error);
  CHECK_NOTHROW(gauss_rule<double>(kMaxGaussNodes));
}

TEST_CASE("long double rule") {
  const auto rule = gauss_rule<long double>(20);
  long double sum = 0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) sum += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
  CHECK(std::abs(static_cast<double>(sum) - 2.0 / 3.0) < 1e-17);
}

TEST_CASE("half-line Gaussian, a = 1 and a = 2.5") {
  for (double a : {1.0, 2.5}) {
    const auto rule = mapped_rule(gauss_rule<double>(64), 0.0, 8.0);
    double sum = 0;
    for (Eigen::Index i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::exp(-a * rule.nodes[i] * rule.nodes[i]);
    CHECK(std::abs(sum - 0.5 * std::sqrt(std::numbers::pi / a)) < 1e-12);
  }
}

TEST_CASE("radial-angular engine against closed forms") {
  const QuadratureSpec spec;
  SUBCASE("x^2 Gaussian moment") {
    const double a = 1.7;
    const Estimate e = integrate_radial_angular([&](double r, double) { return r * r * std::exp(-a * r * r); }, spec);
    const double exact = 2.0 * std::sqrt(std::numbers::pi / a) / (4.0 * a);
    CHECK(std::abs(e.value - exact) / exact < 1e-10);
    CHECK(e.converged);
    CHECK(e.method == Method::Quadrature);
  }
  SUBCASE("shifted Gaussian on the half line, erfc form") {
    const double a = 1.0, b = 1.0;
    const Estimate e =
        integrate_radial_angular([&](double r, double) { return std::exp(-a * r * r - 2.0 * b * r); }, spec);
    const double exact = 2.0 * 0.5 * std::sqrt(std::numbers::pi / a) * std::exp(b * b / a) * std::erfc(b / std::sqrt(a));
    CHECK(std::abs(e.value - exact) / exact < 1e-10);
  }
  SUBCASE("full-line shifted Gaussian via r in [0, R] and u = +-1 symmetry") {
    // int_{-inf}^{inf} e^{-a x^2 - 2 b x} = int_0^inf (e^{-a r^2 - 2br} + e^{-a r^2 + 2br}) dr
    const double a = 2.0, b = 0.7;
    const Estimate e = integrate_radial_angular(
        [&](double r, double) { return 0.5 * (std::exp(-a * r * r - 2 * b * r) + std::exp(-a * r * r + 2 * b * r)); },
        spec);
    const double exact = std::sqrt(std::numbers::pi / a) * std::exp(b * b / a);
    CHECK(std::abs(e.value - exact) / exact < 1e-10);
  }
  SUBCASE("zero integrand") {
    const Estimate e = integrate_radial_angular([](double, double) { return 0.0; }, spec);
    CHECK(e.value == 0.0);
    CHECK(e.abs_err == 0.0);
  }
  SUBCASE("angular dependence") {
    const Estimate e = integrate_radial_angular([](double r, double u) { return u * u * std::exp(-r * r); }, spec);
    CHECK(std::abs(e.value - (2.0 / 3.0) * std::sqrt(std::numbers::pi) / 2.0) < 1e-12);
  }
}

TEST_CASE("derivative of erf(sqrt z)^2 as a finite integral") {
  for (double z : {0.3, 1.0, 4.0}) {
    const auto rule = mapped_rule(gauss_rule<double>(40), 0.0, 1.0);
    double rhs = 0;
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      const double y = rule.nodes[i];
      rhs += rule.weights[i] * std::exp(-z * (y * y + 1.0));
    }
    rhs *= 4.0 / std::numbers::pi;
    const double lhs = 2.0 * std::erf(std::sqrt(z)) * std::exp(-z) / std::sqrt(std::numbers::pi * z);
    CHECK(std::abs(lhs - rhs) / lhs < 1e-12);
  }
}

TEST_CASE("nested radial-radial-angular engine") {
  const Estimate e = integrate_radial2_angular(
      [](double r1, double r2, double) { return std::exp(-r1 * r1 - r2 * r2); }, QuadratureSpec{});
  CHECK(std::abs(e.value - 2.0 * std::numbers::pi / 4.0) < 1e-12);
}

TEST_CASE("non-convergence is flagged, not hidden") {
  QuadratureSpec spec;
  spec.radial_nodes = 2;
  spec.angular_nodes = 2;
  spec.max_refinements = 1;
  spec.target_rel_err = 1e-14;
  const Estimate e = integrate_radial_angular([](double r, double) { return std::cos(5 * r) * std::exp(-r); }, spec);
  CHECK_FALSE(e.converged);
  CHECK(e.abs_err > 0);
}

TEST_CASE("spec validation") {
  QuadratureSpec q;
  q.radial_nodes = 1;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q = {};
  q.target_rel_err = 0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q = {};
  q.radial_cutoff = -1;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  MCSpec m;
  m.samples = 0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = {};
  m.chunk_size = 0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("Monte-Carlo engine") {
  MCSpec spec;
  spec.samples = 200000;
  spec.chunk_size = 4096;
  SUBCASE("constant") {
    const Estimate e = mc_gaussian([](std::span<const double>) { return 1.0; }, 3, spec);
    CHECK(e.value == 1.0);
    CHECK(e.abs_err == 0.0);
    CHECK(e.method == Method::MonteCarlo);
  }
  SUBCASE("second moment") {
    const Estimate e = mc_gaussian([](std::span<const double> z) { return z[0] * z[0]; }, 3, spec);
    CHECK(std::abs(e.value - 1.0) < 3 * e.abs_err);
  }
  SUBCASE("chi-3 mean") {
    const Estimate e = mc_gaussian(
        [](std::span<const double> z) { return std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]); }, 3, spec);
    CHECK(std::abs(e.value - 2.0 * std::sqrt(2.0 / std::numbers::pi)) < 3 * e.abs_err);
  }
}

TEST_CASE("Monte-Carlo results do not depend on thread count") {
  MCSpec spec;
  spec.samples = 100003;
  spec.chunk_size = 1000;
  auto f = [](std::span<const double> z) { return std::exp(0.3 * z[0]) * std::cos(z[1]); };
  spec.threads = 1;
  const Estimate one = mc_gaussian(f, 2, spec);
  spec.threads = 4;
  const Estimate four = mc_gaussian(f, 2, spec);
  spec.threads = 7;
  const Estimate seven = mc_gaussian(f, 2, spec);
  CHECK(one.value == four.value);
  CHECK(one.abs_err == four.abs_err);
  CHECK(one.value == seven.value);
  spec.seed += 1;
  CHECK(mc_gaussian(f, 2, spec).value != one.value);
}

TEST_CASE("Monte-Carlo standard error scales as 1/sqrt(samples)") {
  auto f = [](std::span<const double> z) { return z[0] * z[0] + z[1]; };
  MCSpec small;
  small.samples = 10000;
  MCSpec large = small;
  large.samples = 1000000;
  const double ratio = mc_gaussian(f, 2, small).abs_err / mc_gaussian(f, 2, large).abs_err;
  CHECK(ratio > 5.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("non-finite sample aborts with its index") {
  MCSpec spec;
  spec.samples = 5000;
  spec.chunk_size = 1000;
  spec.threads = 1;
  std::atomic<int> calls{0};
  auto f = [&](std::span<const double>) { return ++calls == 1234 ? std::nan("") : 1.0; };
  try {
    mc_gaussian(f, 1, spec);
    FAIL("expected NonFiniteSample");
  } catch (const NonFiniteSample& err) {
    CHECK(err.index() == 1233);
  }
}

TEST_CASE("thread count from the environment") {
  setenv("SCATENT_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  setenv("SCATENT_THREADS", "junk", 1);
  CHECK(default_thread_count() >= 1);
  unsetenv("SCATENT_THREADS");
}
