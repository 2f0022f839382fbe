#include "scatent/model.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scatent {

MassSplit::MassSplit(double m1, double m2) : m1_(m1), m2_(m2) {
  if (!(m1 > 0) || !(m2 > 0) || !std::isfinite(m1) || !std::isfinite(m2))
    throw std::invalid_argument("MassSplit: masses must be positive and finite");
  mu1_ = m1 / (m1 + m2);
  mu2_ = 1.0 - mu1_;
}

MassSplit MassSplit::from_fraction(double mu1) {
  if (!(mu1 > 0) || !(mu1 < 1)) throw std::invalid_argument("MassSplit: mu1 must lie in (0, 1)");
  return MassSplit(mu1, 1.0 - mu1);
}

void PhysicalScales::validate() const {
  if (!(hbar > 0)) throw std::invalid_argument("PhysicalScales: hbar must be > 0");
  if (!(sigma > 0)) throw std::invalid_argument("PhysicalScales: sigma must be > 0");
}

double GaussianPacket::normalization() const {
  return std::pow(sigma * sigma * std::numbers::pi, -0.75);
}

double GaussianPacket::operator()(const Vec3& p) const {
  return normalization() * std::exp(-(p - mean).squaredNorm() / (2.0 * sigma * sigma));
}

Vec3 ProductInState::mean_relative_momentum(const MassSplit& masses) const {
  return relative_momentum(packet1.mean, packet2.mean, masses);
}

ProductInState make_in_state(const Vec3& p0, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("make_in_state: sigma must be > 0");
  return {GaussianPacket{p0, sigma}, GaussianPacket{-p0, sigma}};
}

Vec3 relative_momentum(const Vec3& p1, const Vec3& p2, const MassSplit& masses) {
  return masses.mu2() * p1 - masses.mu1() * p2;
}

Vec3 total_momentum(const Vec3& p1, const Vec3& p2) { return p1 + p2; }

std::pair<Vec3, Vec3> particle_momenta(const Vec3& p_cm, const Vec3& p, const MassSplit& masses) {
  return {masses.mu1() * p_cm + p, masses.mu2() * p_cm - p};
}

double in_state_distance(const Vec3& p0, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("in_state_distance: sigma must be > 0");
  const double x = p0.squaredNorm() / (2.0 * sigma * sigma);
  return std::sqrt(-2.0 * std::expm1(-x));
}

Estimate in_state_distance_quad(const Vec3& p0, double sigma, const QuadratureSpec& spec) {
  if (!(sigma > 0)) throw std::invalid_argument("in_state_distance_quad: sigma must be > 0");
  spec.validate();
  const Vec3 q0 = p0 / sigma;
  const double half_width = spec.radial_cutoff + q0.cwiseAbs().maxCoeff();
  const double inv_quarter_pi = std::pow(std::numbers::pi, -0.25);
  auto psi = [&](double x) { return inv_quarter_pi * std::exp(-0.5 * x * x); };

  // ||A - B||^2 = <A, A> + <B, B> - 2 <A, B>, each a product of 1D overlaps
  // (two particles, three axes; the second particle's overlaps equal the first's).
  auto eval = [&](int factor) {
    const auto rule =
        mapped_rule(gauss_rule<double>(spec.radial_nodes * factor), -half_width, half_width);
    double aa = 1, bb = 1, ab = 1;
    for (int d = 0; d < 3; ++d) {
      double s_aa = 0, s_bb = 0, s_ab = 0;
      for (Eigen::Index i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes[i];
        const double a = psi(x - q0[d]);
        const double b = psi(x);
        s_aa += rule.weights[i] * a * a;
        s_bb += rule.weights[i] * b * b;
        s_ab += rule.weights[i] * a * b;
      }
      aa *= s_aa * s_aa;
      bb *= s_bb * s_bb;
      ab *= s_ab * s_ab;
    }
    return aa + bb - 2.0 * ab;
  };
  const Estimate squared = refine_until_converged(eval, spec);
  Estimate est = squared;
  const double root = std::sqrt(std::max(squared.value, 0.0));
  est.value = root;
  est.abs_err = root > 0 ? squared.abs_err / (2.0 * root) : std::sqrt(squared.abs_err);
  return est;
}

Estimate momentum_weighted_distance(const Vec3& p0, double sigma, const QuadratureSpec& spec,
                                    const MassSplit& masses) {
  if (!(sigma > 0)) throw std::invalid_argument("momentum_weighted_distance: sigma must be > 0");
  spec.validate();
  const Vec3 q0 = p0 / sigma;
  if (q0.squaredNorm() == 0.0) return {0.0, 0.0, Method::Quadrature, true};

  const double mu1 = masses.mu1();
  const double mu2 = masses.mu2();
  const double half_width = spec.radial_cutoff + q0.cwiseAbs().maxCoeff();
  const double inv_quarter_pi = std::pow(std::numbers::pi, -0.25);
  auto psi = [&](double x) { return inv_quarter_pi * std::exp(-0.5 * x * x); };

  // |A - B|^2 = A^2 + B^2 - 2AB with A, B products over Cartesian axes, so
  // every term reduces to 2D integrals over (q1_d, q2_d).
  auto eval = [&](int factor) {
    const auto rule =
        mapped_rule(gauss_rule<double>(spec.radial_nodes * factor), -half_width, half_width);
    constexpr std::array<double, 3> kSign{1.0, 1.0, -2.0};
    double total = 0;
    for (int term = 0; term < 3; ++term) {
      std::array<double, 3> plain{};
      std::array<double, 3> weighted{};
      for (int d = 0; d < 3; ++d) {
        const double shift = q0[d];
        double i0 = 0;
        double i2 = 0;
        for (Eigen::Index i = 0; i < rule.size(); ++i) {
          const double x1 = rule.nodes[i];
          const double a1 = psi(x1 - shift);
          const double b1 = psi(x1);
          for (Eigen::Index j = 0; j < rule.size(); ++j) {
            const double x2 = rule.nodes[j];
            const double a2 = psi(x2 + shift);
            const double b2 = psi(x2);
            double t = 0;
            if (term == 0) t = a1 * a1 * a2 * a2;
            else if (term == 1) t = b1 * b1 * b2 * b2;
            else t = a1 * b1 * a2 * b2;
            const double w = rule.weights[i] * rule.weights[j] * t;
            const double rel = mu2 * x1 - mu1 * x2;
            i0 += w;
            i2 += w * rel * rel;
          }
        }
        plain[d] = i0;
        weighted[d] = i2;
      }
      double sum = 0;
      for (int d = 0; d < 3; ++d) sum += weighted[d] * plain[(d + 1) % 3] * plain[(d + 2) % 3];
      total += kSign[term] * sum;
    }
    return total;
  };
  const Estimate squared = refine_until_converged(eval, spec);
  Estimate est = squared;
  const double root = std::sqrt(std::max(squared.value, 0.0));
  est.value = sigma * root;
  est.abs_err = root > 0 ? sigma * squared.abs_err / (2.0 * root) : sigma * std::sqrt(squared.abs_err);
  return est;
}

Estimate packet_norm_numeric(const GaussianPacket& packet, const QuadratureSpec& spec) {
  const double sigma = packet.sigma;
  auto f = [&](double r, double u) {
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
    const Vec3 p = packet.mean + sigma * r * Vec3(sin_theta, 0.0, u);
    const double value = packet(p);
    return 2.0 * std::numbers::pi * sigma * sigma * sigma * r * r * value * value;
  };
  return integrate_radial_angular(f, spec);
}

}  // namespace scatent
