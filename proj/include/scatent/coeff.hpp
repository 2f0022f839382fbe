#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scatent/estimate.hpp"
#include "scatent/quad.hpp"

// The purity-expansion integrals J, L, N and the entanglement coefficient
// E(mu1) = 8 [L^2 + N - J(mu1, 1-mu1) - J(1-mu1, mu1)].
namespace scatent {

struct CoeffResult {
  double mu1 = 0.5;
  Estimate j_fwd;  // J(mu1, 1 - mu1)
  Estimate j_rev;  // J(1 - mu1, mu1)
  Estimate l;
  Estimate n;
  Estimate e;
};

// Six-dimensional J integral, reduced by rotational invariance to three
// nested 1D Gauss rules. The inner angular variable is |mu2 q1 - mu1 q2|
// itself, so the modulus kink never sits inside a rule.
Estimate j_integral(double mu1, double mu2, const QuadratureSpec& spec = {});

// sqrt(2/pi) (1 + (2 mu1 - 1)^2)^{-1/2}
Estimate l_closed(double mu1);
Estimate l_quad(double mu1, double mu2, const QuadratureSpec& spec = {});

// (1 / (2 d)) (1 + d)^{-1/2} [(1 + d)^{3/2} - 1] with d = (2 mu1 - 1)^2,
// continued by its series at d -> 0 (value 3/4).
Estimate n_closed(double mu1);
Estimate n_quad(double mu1, double mu2, const QuadratureSpec& spec = {});

CoeffResult entanglement_coefficient(double mu1, const QuadratureSpec& spec = {});

struct TableRow {
  double mu1 = 0;
  std::optional<CoeffResult> result;
  std::string error;
};

// Evaluated in parallel; a failing point records its error and the rest
// still run.
std::vector<TableRow> coefficient_table(const std::vector<double>& mu1_grid,
                                        const QuadratureSpec& spec = {}, unsigned threads = 0);

// Decimal grid from..to (inclusive) in steps of `step`; values are rounded to
// 12 decimals so that coinciding abscissae of different grids are identical.
std::vector<double> mu1_grid(double from, double to, double step);
// 0.5, 0.525, ..., 1.0
std::vector<double> table1_grid();

}  // namespace scatent
