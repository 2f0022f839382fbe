#include "scatent/purity.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "scatent/coeff.hpp"
#include "scatent/special.hpp"

namespace scatent {

namespace {

using cplx = std::complex<double>;

// Sampling mixture per 3-vector: N(0, I/2) with probability 1 - eps, N(0, 2I)
// otherwise. The component is picked by one extra standard normal falling
// below kWideThreshold, so eps = Phi(kWideThreshold) = 0.2.
constexpr double kWideThreshold = -0.8416212335729143;
const double kWideFraction = 0.5 * std::erfc(-kWideThreshold / std::numbers::sqrt2);

// |psi|^2 / mixture density at offset x from the packet centre.
double importance_weight(double r2) {
  return 1.0 / ((1.0 - kWideFraction) + kWideFraction * 0.125 * std::exp(0.75 * r2));
}

struct RatioModel {
  double mu1;
  double mu2;
  double delta;
  double s;
  Vec3 q0;
  double a00;  // Sigma1 on l = 0
  double b00;  // Sigma2 on l = 0
  Vec3 row;    // Sigma2 (l=0 <- l=1), Cartesian
  Vec3 col;    // Sigma2 (l=1 <- l=0), Cartesian

  // phi_out / phi_in at (q1, q2). The relative-momentum Gaussian is
  // projected onto l = 0, 1 along w = 2 q0 - delta P in closed form.
  cplx operator()(const Vec3& q1, const Vec3& q2) const {
    const Vec3 total = q1 + q2;
    const Vec3 rel = mu2 * q1 - mu1 * q2;
    const Vec3 w = 2.0 * q0 - delta * total;
    const double n_rel = rel.norm();
    const double n_w = w.norm();
    const double kappa = n_rel * n_w;
    const double envelope = std::exp(-rel.dot(w) + special::log_sinhc(kappa));
    const Vec3 w_hat = n_w > 0 ? Vec3(w / n_w) : Vec3::Zero();
    const Vec3 rel_hat = n_rel > 0 ? Vec3(rel / n_rel) : Vec3::Zero();
    const double k = s * n_rel;
    const double second =
        b00 + std::sqrt(3.0) * (special::langevin(kappa) * row.dot(w_hat) + col.dot(rel_hat));
    return 1.0 + envelope * cplx(-k * k * second, k * a00);
  }
};

Vec3 cartesian_block(const LowEnergySMatrix& sm, bool row) {
  Vec3 out;
  for (int axis = 0; axis < 3; ++axis) {
    const int idx = cartesian_l1_index(axis);
    out[axis] = row ? sm.sigma2(0, idx) : sm.sigma2(idx, 0);
  }
  return out;
}

}  // namespace

std::string_view to_string(PurityMethod method) {
  switch (method) {
    case PurityMethod::Formula: return "formula";
    case PurityMethod::ExpansionQuadrature: return "expansion-quadrature";
    case PurityMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

std::string remainder_order_for(double beta) {
  if (beta > 7) return "O(s^3)";
  if (beta > 5) return "o(s^2)";
  return "unknown";
}

PurityResult purity_formula(double mu1, double c0, double s, const Estimate& e_coeff, double beta) {
  if (!(s > 0)) throw std::invalid_argument("purity_formula: s must be > 0");
  if (!(mu1 >= 0 && mu1 <= 1)) throw std::invalid_argument("purity_formula: mu1 must lie in [0, 1]");
  PurityResult out;
  out.method = PurityMethod::Formula;
  out.params = {mu1, c0, s, Vec3::Zero()};
  out.remainder_order = remainder_order_for(beta);
  const double strength = (c0 * s) * (c0 * s);
  const double deficit = strength * e_coeff.value;
  out.value = 1.0 - deficit;
  out.abs_err = strength * e_coeff.abs_err;
  if (deficit > 0.1) {
    std::ostringstream msg;
    msg << "(c0 s)^2 E = " << deficit << " > 0.1: leading-order formula not trustworthy";
    out.warnings.push_back(msg.str());
  }
  if (out.remainder_order == "unknown") out.warnings.push_back("beta <= 5: remainder order unknown");
  return out;
}

Estimate ExpansionTerms::sum() const {
  Estimate out;
  out.value = p13.value + p2.value + p11.value + p12.value;
  out.abs_err = p13.abs_err + p2.abs_err + p11.abs_err + p12.abs_err;
  out.method = Method::Quadrature;
  out.converged = p11.converged && p12.converged && p13.converged && p2.converged;
  return out;
}

ExpansionTerms expansion_terms(double mu1, const QuadratureSpec& spec) {
  if (!(mu1 >= 0 && mu1 <= 1)) throw std::invalid_argument("expansion_terms: mu1 must lie in [0, 1]");
  const double mu2 = 1.0 - mu1;
  auto scale = [](Estimate e, double factor) {
    e.value *= factor;
    e.abs_err *= std::abs(factor);
    return e;
  };
  ExpansionTerms t;
  t.p11 = scale(j_integral(mu1, mu2, spec), -8.0);
  t.p12 = scale(j_integral(mu2, mu1, spec), -8.0);
  const Estimate l = l_quad(mu1, mu2, spec);
  t.p13 = l;
  t.p13.value = 8.0 * l.value * l.value;
  t.p13.abs_err = 16.0 * std::abs(l.value) * l.abs_err;
  t.p2 = scale(n_quad(mu1, mu2, spec), 8.0);
  return t;
}

PurityResult purity_mc(double mu1, const LowEnergySMatrix& sm, double s, const Vec3& p0_over_hbar,
                       const MCSpec& mc) {
  if (!(mu1 >= 0 && mu1 <= 1)) throw std::invalid_argument("purity_mc: mu1 must lie in [0, 1]");
  if (!(s > 0)) throw std::invalid_argument("purity_mc: s must be > 0");
  PurityResult out;
  out.method = PurityMethod::MonteCarlo;
  out.params = {mu1, sm.c0, s, p0_over_hbar};
  if (s > 0.3) out.warnings.push_back("s > 0.3: truncated S-matrix expansion questionable");

  const RatioModel ratio{mu1,
                         1.0 - mu1,
                         2.0 * mu1 - 1.0,
                         s,
                         p0_over_hbar / s,
                         sm.sigma1(0, 0),
                         sm.sigma2(0, 0),
                         cartesian_block(sm, true),
                         cartesian_block(sm, false)};
  const Vec3 q0 = ratio.q0;

  // Coordinates: four blocks (x, y, z, selector) for q1, q1', q2, q2'.
  auto integrand = [&](std::span<const double> z) {
    std::array<Vec3, 4> offset;
    double weight = 1.0;
    for (int i = 0; i < 4; ++i) {
      const bool wide = z[4 * i + 3] < kWideThreshold;
      const double scale = wide ? std::numbers::sqrt2 : 1.0 / std::numbers::sqrt2;
      offset[i] = scale * Vec3(z[4 * i], z[4 * i + 1], z[4 * i + 2]);
      weight *= importance_weight(offset[i].squaredNorm());
    }
    double acc = 0;
    for (const double sign : {1.0, -1.0}) {
      const Vec3 a = q0 + sign * offset[0];
      const Vec3 a2 = q0 + sign * offset[1];
      const Vec3 b = -q0 + sign * offset[2];
      const Vec3 b2 = -q0 + sign * offset[3];
      const cplx prod = ratio(a, b) * std::conj(ratio(a2, b)) * ratio(a2, b2) * std::conj(ratio(a, b2));
      acc += prod.real() - 1.0;
    }
    return weight * 0.5 * acc;
  };
  const Estimate deficit = mc_gaussian(integrand, 16, mc);
  out.value = 1.0 + deficit.value;
  out.abs_err = deficit.abs_err;
  return out;
}

P0Scan p0_scan(double mu1, const LowEnergySMatrix& sm, double s,
               const std::vector<double>& p0_magnitudes, const MCSpec& mc) {
  for (double p : p0_magnitudes) {
    if (!(p >= 0)) throw std::invalid_argument("p0_scan: magnitudes must be >= 0");
  }
  P0Scan scan;
  scan.p0_magnitudes = p0_magnitudes;
  scan.reference = purity_mc(mu1, sm, s, Vec3::Zero(), mc);
  std::vector<double> xs, ys;
  for (double p : p0_magnitudes) {
    PurityResult r = p == 0 ? scan.reference : purity_mc(mu1, sm, s, Vec3(0, 0, p), mc);
    const double diff = std::abs(r.value - scan.reference.value);
    if (p > 0 && diff > 0) {
      xs.push_back(std::log(p));
      ys.push_back(std::log(diff));
    }
    scan.points.push_back(std::move(r));
  }
  if (xs.size() >= 2) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom > 0) scan.exponent = (n * sxy - sx * sy) / denom;
  }
  return scan;
}

}  // namespace scatent
