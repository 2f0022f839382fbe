#pragma once

#include <Eigen/Core>

#include <utility>

#include "scatent/estimate.hpp"
#include "scatent/quad.hpp"

// Physical configuration: masses, scales, and the Gaussian incoming state.
namespace scatent {

using Vec3 = Eigen::Vector3d;

class MassSplit {
 public:
  MassSplit(double m1, double m2);
  // Unit total mass: m1 = mu1, m2 = 1 - mu1.
  static MassSplit from_fraction(double mu1);

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double mu1() const { return mu1_; }
  double mu2() const { return mu2_; }
  double total() const { return m1_ + m2_; }
  double reduced_mass() const { return m1_ * m2_ / (m1_ + m2_); }

 private:
  double m1_;
  double m2_;
  double mu1_;
  double mu2_;
};

struct PhysicalScales {
  double hbar = 1.0;
  double sigma = 1.0;
  Vec3 p0 = Vec3::Zero();

  void validate() const;
  // |p0| / hbar
  double k0() const { return p0.norm() / hbar; }
  // sigma / hbar
  double s() const { return sigma / hbar; }
};

// phi(p) = (sigma^2 pi)^{-3/4} exp(-(p - mean)^2 / (2 sigma^2))
struct GaussianPacket {
  Vec3 mean = Vec3::Zero();
  double sigma = 1.0;

  double normalization() const;
  double operator()(const Vec3& p) const;
};

struct ProductInState {
  GaussianPacket packet1;
  GaussianPacket packet2;

  double operator()(const Vec3& p1, const Vec3& p2) const { return packet1(p1) * packet2(p2); }
  Vec3 mean_relative_momentum(const MassSplit& masses) const;
};

ProductInState make_in_state(const Vec3& p0, double sigma);

// p = mu2 p1 - mu1 p2
Vec3 relative_momentum(const Vec3& p1, const Vec3& p2, const MassSplit& masses);
// p_cm = p1 + p2
Vec3 total_momentum(const Vec3& p1, const Vec3& p2);
// Inverse kinematics: p1 = mu1 p_cm + p, p2 = mu2 p_cm - p.
std::pair<Vec3, Vec3> particle_momenta(const Vec3& p_cm, const Vec3& p, const MassSplit& masses);

// ||phi_in,p0 - phi_in|| = sqrt(2 (1 - exp(-p0^2 / (2 sigma^2)))).
double in_state_distance(const Vec3& p0, double sigma);
// The same norm by quadrature: each packet overlap factorizes into six 1D
// Gauss integrals over the Cartesian momentum components.
Estimate in_state_distance_quad(const Vec3& p0, double sigma, const QuadratureSpec& spec = {});

// || |p| (phi_in,p0 - phi_in) || with p the relative momentum, by quadrature.
Estimate momentum_weighted_distance(const Vec3& p0, double sigma, const QuadratureSpec& spec = {},
                                    const MassSplit& masses = MassSplit::from_fraction(0.5));

// Squared L2 norm of a packet by radial-angular quadrature around its mean.
Estimate packet_norm_numeric(const GaussianPacket& packet, const QuadratureSpec& spec = {});

}  // namespace scatent
