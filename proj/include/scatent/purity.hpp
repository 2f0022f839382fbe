#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scatent/estimate.hpp"
#include "scatent/model.hpp"
#include "scatent/quad.hpp"
#include "scatent/smatrix.hpp"

// Purity Tr(rho_1^2) of the outgoing two-body state S phi_in.
namespace scatent {

enum class PurityMethod { Formula, ExpansionQuadrature, MonteCarlo };
std::string_view to_string(PurityMethod method);

struct PurityParams {
  double mu1 = 0.5;
  double c0 = 0.0;
  double s = 0.0;  // sigma / hbar
  Vec3 p0_over_hbar = Vec3::Zero();
};

struct PurityResult {
  double value = 1.0;
  double abs_err = 0.0;
  PurityMethod method = PurityMethod::Formula;
  PurityParams params;
  // Order of the neglected remainder in s: "O(s^3)" for beta > 7, "o(s^2)"
  // for beta > 5, otherwise "unknown".
  std::string remainder_order = "O(s^3)";
  std::vector<std::string> warnings;
};

std::string remainder_order_for(double beta);

// 1 - (c0 s)^2 E
PurityResult purity_formula(double mu1, double c0, double s, const Estimate& e_coeff,
                            double beta = std::numeric_limits<double>::infinity());

// Second-order purity terms per unit (c0 s)^2:
// P11 = -8 J(mu1, mu2), P12 = -8 J(mu2, mu1), P13 = 8 L^2, P2 = 8 N.
struct ExpansionTerms {
  Estimate p11;
  Estimate p12;
  Estimate p13;
  Estimate p2;

  // P13 + P2 + P11 + P12, i.e. E(mu1).
  Estimate sum() const;
};

ExpansionTerms expansion_terms(double mu1, const QuadratureSpec& spec = {});

// Direct Monte-Carlo of the 12-dimensional purity integral for
// S phi_in,p0 with the truncated S-matrix acting on the relative momentum.
PurityResult purity_mc(double mu1, const LowEnergySMatrix& sm, double s, const Vec3& p0_over_hbar,
                       const MCSpec& mc = {});

struct P0Scan {
  PurityResult reference;  // p0 = 0
  std::vector<double> p0_magnitudes;
  std::vector<PurityResult> points;
  // Least-squares slope of log|P(p0) - P(0)| against log|p0/hbar|; empty when
  // fewer than two usable points.
  std::optional<double> exponent;
};

// p0 along the z axis with the given |p0/hbar| values; every point uses the
// same MC stream.
P0Scan p0_scan(double mu1, const LowEnergySMatrix& sm, double s,
               const std::vector<double>& p0_magnitudes, const MCSpec& mc = {});

}  // namespace scatent
