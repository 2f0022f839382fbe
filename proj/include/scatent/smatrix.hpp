#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>

#include "scatent/model.hpp"

// Truncated low-energy scattering matrix S(k) ~ I + i k Sigma1 - k^2 Sigma2 on
// the real spherical harmonics up to lmax. Basis index of (l, m) is
// l^2 + l + m; for l = 1 the order is m = -1, 0, 1 ~ y, z, x.
namespace scatent {

inline int harmonic_index(int l, int m) { return l * l + l + m; }
inline int harmonic_count(int lmax) { return (lmax + 1) * (lmax + 1); }
// Basis index of the real l = 1 harmonic along Cartesian axis 0, 1, 2 (x, y, z).
int cartesian_l1_index(int axis);

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LowEnergySMatrix {
  double c0 = 0.0;
  Vec3 y1 = Vec3::Zero();  // Cartesian coefficients, see scatlen
  int lmax = 1;
  Eigen::MatrixXd sigma1;
  Eigen::MatrixXd sigma2;

  static LowEnergySMatrix build(double c0, const Vec3& y1 = Vec3::Zero(), int lmax = 1);

  int dim() const { return static_cast<int>(sigma1.rows()); }
  // (I + i k Sigma1 - k^2 Sigma2) coeffs
  Eigen::VectorXcd apply(double k, const Eigen::VectorXcd& coeffs) const;
  Eigen::MatrixXcd matrix(double k) const;
  // || Sigma2 + Sigma2^T - Sigma1^2 ||_F
  double unitarity_defect() const;
};

}  // namespace scatent
