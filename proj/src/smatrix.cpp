#include "scatent/smatrix.hpp"

#include <string>

namespace scatent {

int cartesian_l1_index(int axis) {
  switch (axis) {
    case 0: return harmonic_index(1, 1);
    case 1: return harmonic_index(1, -1);
    case 2: return harmonic_index(1, 0);
  }
  throw std::out_of_range("cartesian_l1_index: axis must be 0, 1 or 2");
}

LowEnergySMatrix LowEnergySMatrix::build(double c0, const Vec3& y1, int lmax) {
  if (lmax < 1) throw std::invalid_argument("LowEnergySMatrix: lmax must be >= 1");
  const int n = harmonic_count(lmax);
  LowEnergySMatrix sm;
  sm.c0 = c0;
  sm.y1 = y1;
  sm.lmax = lmax;
  sm.sigma1 = Eigen::MatrixXd::Zero(n, n);
  sm.sigma2 = Eigen::MatrixXd::Zero(n, n);
  sm.sigma1(0, 0) = -2.0 * c0;
  sm.sigma2(0, 0) = 2.0 * c0 * c0;
  // (., Y1) Y0 - (., Y0) Y1
  for (int axis = 0; axis < 3; ++axis) {
    const int idx = cartesian_l1_index(axis);
    sm.sigma2(0, idx) = y1[axis];
    sm.sigma2(idx, 0) = -y1[axis];
  }
  return sm;
}

Eigen::MatrixXcd LowEnergySMatrix::matrix(double k) const {
  const std::complex<double> ik(0.0, k);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(dim(), dim());
  s += ik * sigma1.cast<std::complex<double>>();
  s -= (k * k) * sigma2.cast<std::complex<double>>();
  return s;
}

Eigen::VectorXcd LowEnergySMatrix::apply(double k, const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != dim())
    throw DimensionMismatch("LowEnergySMatrix::apply: expected " + std::to_string(dim()) +
                            " coefficients, got " + std::to_string(coeffs.size()));
  const std::complex<double> ik(0.0, k);
  Eigen::VectorXcd out = coeffs;
  out += ik * (sigma1.cast<std::complex<double>>() * coeffs);
  out -= (k * k) * (sigma2.cast<std::complex<double>>() * coeffs);
  return out;
}

double LowEnergySMatrix::unitarity_defect() const {
  return (sigma2 + sigma2.transpose() - sigma1 * sigma1).norm();
}

}  // namespace scatent
