#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "scatent/estimate.hpp"

namespace scatent {

struct QuadratureSpec {
  int radial_nodes = 48;
  int angular_nodes = 24;
  // Upper limit of radial integrals in dimensionless (sigma) units.
  double radial_cutoff = 8.0;
  double target_rel_err = 1e-10;
  int max_refinements = 3;

  void validate() const;
  // Same spec with node counts multiplied by `factor`.
  QuadratureSpec scaled(int factor) const;
};

struct MCSpec {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0x5eed2011ULL;
  // Samples per chunk. Chunks are the unit of seeding and of reduction, so
  // results depend on (seed, samples, chunk_size) but never on thread count.
  std::uint64_t chunk_size = 1 << 16;
  // 0 selects default_thread_count().
  unsigned threads = 0;

  void validate() const;
};

template <typename Scalar>
struct GaussRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  Eigen::Index size() const { return nodes.size(); }
};

inline constexpr int kMaxGaussNodes = 2048;

// n-point Gauss-Legendre rule on [-1, 1], by Newton iteration on P_n.
template <typename Scalar = double>
GaussRule<Scalar> gauss_rule(int n) {
  if (n < 2) throw std::invalid_argument("gauss_rule: n must be >= 2");
  if (n > kMaxGaussNodes)
    throw std::domain_error("gauss_rule: n = " + std::to_string(n) + " exceeds stable limit " +
                            std::to_string(kMaxGaussNodes));
  const Scalar pi = std::numbers::pi_v<Scalar>;
  GaussRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar pk = ((Scalar(2 * k - 1)) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = pk;
      }
      dp = Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4)) break;
    }
    // Derivative at the converged node.
    Scalar p0 = 1;
    Scalar p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar pk = ((Scalar(2 * k - 1)) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
      p0 = p1;
      p1 = pk;
    }
    dp = Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

// Affine map of a [-1, 1] rule onto [a, b].
template <typename Scalar>
GaussRule<Scalar> mapped_rule(const GaussRule<Scalar>& rule, Scalar a, Scalar b) {
  const Scalar half = (b - a) / Scalar(2);
  const Scalar mid = (b + a) / Scalar(2);
  GaussRule<Scalar> out;
  out.nodes = (rule.nodes.array() * half + mid).matrix();
  out.weights = rule.weights * half;
  return out;
}

// Two-level refinement driver: evaluates `eval(k)` for node multipliers
// k = 1, 2, 4, ... and stops once consecutive levels agree to
// spec.target_rel_err. The finer value is returned with abs_err equal to the
// level difference plus a round-off floor.
Estimate refine_until_converged(const std::function<double(int)>& eval, const QuadratureSpec& spec);

// int_0^cutoff dr int_{-1}^{1} du f(r, u)
Estimate integrate_radial_angular(const std::function<double(double, double)>& f,
                                  const QuadratureSpec& spec);

// int_0^cutoff dr1 int_0^cutoff dr2 int_{-1}^{1} du f(r1, r2, u)
Estimate integrate_radial2_angular(const std::function<double(double, double, double)>& f,
                                   const QuadratureSpec& spec);

class NonFiniteSample : public std::runtime_error {
 public:
  NonFiniteSample(std::uint64_t index, double value);
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

// E[f(Z)] for Z ~ N(0, I_dims); abs_err is the sample standard error.
// f must be safe to call concurrently.
Estimate mc_gaussian(const std::function<double(std::span<const double>)>& f, int dims,
                     const MCSpec& spec);

// SCATENT_THREADS if set and positive, else hardware concurrency.
unsigned default_thread_count();

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace scatent
