#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scatent/coeff.hpp"

using namespace scatent;

TEST_CASE("J golden values") {
  CHECK(std::abs(j_integral(0.5, 0.5).value - 0.663497) < 1e-5);
  CHECK(std::abs(j_integral(1.0, 0.0).value - 0.32627) < 1e-5);
  // from E(1) = 2.0287 with J(1, 0) = 0.32627
  CHECK(std::abs(j_integral(0.0, 1.0).value - 0.38490) < 2e-5);
}

TEST_CASE("J reports convergence and a meaningful error") {
  const Estimate base = j_integral(0.7, 0.3);
  CHECK(base.converged);
  CHECK(base.method == Method::Quadrature);
  QuadratureSpec doubled;
  doubled.radial_nodes *= 2;
  doubled.angular_nodes *= 2;
  const Estimate fine = j_integral(0.7, 0.3, doubled);
  CHECK(std::abs(fine.value - base.value) <= base.abs_err);
  CHECK_THROWS_AS(j_integral(1.2, 0.1), std::invalid_argument);
}

TEST_CASE("L closed form") {
  CHECK(l_closed(0.5).value == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-15));
  CHECK(l_closed(1.0).value == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(l_closed(0.3).value == doctest::Approx(l_closed(0.7).value).epsilon(1e-15));
  CHECK(l_closed(0.5).abs_err == 0.0);
  CHECK(l_closed(0.5).method == Method::ClosedForm);
}

TEST_CASE("N closed form, including the equal-mass limit") {
  CHECK(n_closed(0.5).value == 0.75);
  CHECK(n_closed(1.0).value == doctest::Approx(0.5 / std::sqrt(2.0) * (2.0 * std::sqrt(2.0) - 1.0)).epsilon(1e-15));
  CHECK(n_closed(0.6).value == doctest::Approx(n_closed(0.4).value).epsilon(1e-15));
  // continuity across the series branch at |2 mu1 - 1| = 1e-4
  const double inside = n_closed(0.5 + 0.49999e-4).value;
  const double outside = n_closed(0.5 + 0.50001e-4).value;
  CHECK(std::abs(inside - outside) < 1e-11);
}

TEST_CASE("quadrature matches closed forms for L and N over nine mass fractions") {
  for (int i = 0; i <= 8; ++i) {
    const double mu = i / 8.0;
    const double lc = l_closed(mu).value;
    const double nc = n_closed(mu).value;
    CHECK(std::abs(l_quad(mu, 1 - mu).value - lc) / lc < 1e-8);
    CHECK(std::abs(n_quad(mu, 1 - mu).value - nc) / nc < 1e-8);
  }
  CHECK(std::abs(n_quad(0.5, 0.5).value - 0.75) < 1e-8);
}

TEST_CASE("entanglement coefficient") {
  CHECK(std::abs(entanglement_coefficient(0.5).e.value - 0.4770) < 5e-4);
  CHECK(std::abs(entanglement_coefficient(1.0).e.value - 2.0287) < 5e-3);
  CHECK(std::abs(entanglement_coefficient(0.75).e.value - 0.9179) < 5e-3);

  const CoeffResult r = entanglement_coefficient(0.65);
  const double l = r.l.value;
  CHECK(r.e.value == doctest::Approx(8 * (l * l + r.n.value - r.j_fwd.value - r.j_rev.value)).epsilon(1e-15));
  CHECK(r.e.abs_err == doctest::Approx(8 * (r.j_fwd.abs_err + r.j_rev.abs_err)));
  CHECK(std::isfinite(r.j_fwd.value));
  CHECK(std::isfinite(r.j_rev.value));
}

TEST_CASE("equal-mass identity between the two assembly forms") {
  const double j = j_integral(0.5, 0.5).value;
  const CoeffResult r = entanglement_coefficient(0.5);
  CHECK(r.e.value == doctest::Approx(16.0 / std::numbers::pi + 6.0 - 16.0 * j).epsilon(1e-13));
}

TEST_CASE("exchange symmetry") {
  for (double mu : {0.1, 0.2, 0.3, 0.4}) {
    const Estimate a = entanglement_coefficient(mu).e;
    const Estimate b = entanglement_coefficient(1 - mu).e;
    CHECK(std::abs(a.value - b.value) < a.abs_err + b.abs_err);
  }
}

TEST_CASE("tables") {
  const auto grid = table1_grid();
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == 0.5);
  CHECK(grid.back() == 1.0);
  CHECK(grid[12] == 0.8);

  const auto rows = coefficient_table(grid, {}, 2);
  double prev = 0;
  for (const auto& row : rows) {
    REQUIRE(row.result);
    CHECK(row.result->e.value >= prev);
    prev = row.result->e.value;
  }

  const auto single = coefficient_table({0.5});
  REQUIRE(single.size() == 1);
  CHECK(std::abs(single[0].result->e.value - 0.4770) < 5e-4);

  const auto pair = coefficient_table({0.3, 0.7});
  CHECK(std::abs(pair[0].result->e.value - pair[1].result->e.value) < 1e-10);

  const auto mixed = coefficient_table({0.5, 1.5, 0.9});
  CHECK(mixed[0].result.has_value());
  CHECK_FALSE(mixed[1].result.has_value());
  CHECK_FALSE(mixed[1].error.empty());
  CHECK(mixed[2].result.has_value());
}

TEST_CASE("figure grid shares the table abscissae exactly") {
  const auto dense = mu1_grid(0.5, 1.0, 0.005);
  const auto coarse = table1_grid();
  REQUIRE(dense.size() == 101);
  for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(dense[5 * i] == coarse[i]);
  CHECK(mu1_grid(0.5, 0.5, 0.025).size() == 1);
  CHECK_THROWS_AS(mu1_grid(0.5, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mu1_grid(0.9, 0.5, 0.1), std::invalid_argument);
}
