#pragma once

#include <cmath>

// Small special functions shared by the coefficient integrals and the purity
// Monte-Carlo. All are even in their argument where noted.
namespace scatent::special {

// sinh(x)/x, even in x.
template <typename Scalar>
Scalar sinhc(Scalar x) {
  using std::abs;
  const Scalar ax = abs(x);
  if (ax < Scalar(1e-4)) {
    const Scalar x2 = ax * ax;
    return Scalar(1) + x2 / Scalar(6) + x2 * x2 / Scalar(120) + x2 * x2 * x2 / Scalar(5040);
  }
  return std::sinh(ax) / ax;
}

// log(sinh(x)/x) without overflow for large |x|.
template <typename Scalar>
Scalar log_sinhc(Scalar x) {
  using std::abs;
  const Scalar ax = abs(x);
  if (ax < Scalar(1e-4)) {
    const Scalar x2 = ax * ax;
    return std::log1p(x2 / Scalar(6) + x2 * x2 / Scalar(120));
  }
  if (ax < Scalar(20)) return std::log(std::sinh(ax) / ax);
  return ax - std::log(Scalar(2) * ax) + std::log1p(-std::exp(Scalar(-2) * ax));
}

// Langevin function coth(x) - 1/x, i.e. i1(x)/i0(x) for the modified
// spherical Bessel functions. Odd in x.
template <typename Scalar>
Scalar langevin(Scalar x) {
  using std::abs;
  if (abs(x) < Scalar(1e-3)) {
    const Scalar x2 = x * x;
    return x / Scalar(3) - x * x2 / Scalar(45) + Scalar(2) * x * x2 * x2 / Scalar(945);
  }
  return Scalar(1) / std::tanh(x) - Scalar(1) / x;
}

}  // namespace scatent::special
