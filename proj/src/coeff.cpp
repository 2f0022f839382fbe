#include "scatent/coeff.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "scatent/special.hpp"

namespace scatent {

namespace {

constexpr double kPi = std::numbers::pi;

void require_fraction(double mu, const char* what) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument(std::string(what) + ": mass fraction must lie in [0, 1]");
}

double mass_asymmetry_sq(double mu1) {
  const double d = 2.0 * mu1 - 1.0;
  return d * d;
}

}  // namespace

Estimate j_integral(double mu1, double mu2, const QuadratureSpec& spec) {
  require_fraction(mu1, "j_integral");
  require_fraction(mu2, "j_integral");
  spec.validate();
  const double a = mu1 * mu1 + mu2 * mu2;
  const double delta = mu1 - mu2;
  const double cutoff = spec.radial_cutoff;

  // g(rho) = int d^3q1 |Q| exp(-a P^2 / 2 - Q^2 - q1^2 / 2) sinhc(delta |P| |Q|)
  // with q2 = rho e_z, P = q1 + q2, Q = mu2 q1 - mu1 q2. In spherical
  // coordinates (r, u) around e_z the angular integral is rewritten over
  // v = |Q| in [|mu2 r - mu1 rho|, mu2 r + mu1 rho]; the r integral is split at
  // the kink r = mu1 rho / mu2.
  auto eval = [&](int factor) {
    const QuadratureSpec s = spec.scaled(factor);
    const auto base = gauss_rule<double>(s.radial_nodes);
    const auto outer = mapped_rule(base, 0.0, cutoff);
    const auto tau = mapped_rule(gauss_rule<double>(s.angular_nodes), 0.0, 1.0);

    auto radial_piece = [&](double rho, double lo, double hi) {
      const auto rr = mapped_rule(base, lo, hi);
      double piece = 0;
      for (Eigen::Index i = 0; i < rr.size(); ++i) {
        const double r = rr.nodes[i];
        const double v_hi = mu2 * r + mu1 * rho;
        const double v_lo = std::abs(mu2 * r - mu1 * rho);
        const double v_sum = v_hi + v_lo;
        if (v_sum == 0.0) continue;
        double inner = 0;
        for (Eigen::Index k = 0; k < tau.size(); ++k) {
          const double t = tau.nodes[k];
          const double v = v_lo + (v_hi - v_lo) * t;
          const double u = 1.0 - 2.0 * t * (v + v_lo) / v_sum;
          const double p_sq = std::max(0.0, r * r + rho * rho + 2.0 * r * rho * u);
          const double g = std::exp(-0.5 * a * p_sq - v * v - 0.5 * r * r) *
                           special::sinhc(delta * std::sqrt(p_sq) * v);
          inner += tau.weights[k] * v * v * g;
        }
        piece += rr.weights[i] * r * r * (4.0 / v_sum) * inner;
      }
      return piece;
    };

    double total = 0;
    for (Eigen::Index i = 0; i < outer.size(); ++i) {
      const double rho = outer.nodes[i];
      double g = 0;
      const double kink = mu2 > 0 ? mu1 * rho / mu2 : -1.0;
      if (kink > 0 && kink < cutoff) {
        g = radial_piece(rho, 0.0, kink) + radial_piece(rho, kink, cutoff);
      } else {
        g = radial_piece(rho, 0.0, cutoff);
      }
      g *= 2.0 * kPi;
      total += outer.weights[i] * rho * rho * g * g;
    }
    return 4.0 * kPi * std::pow(kPi, -4.5) * total;
  };
  return refine_until_converged(eval, spec);
}

Estimate l_closed(double mu1) {
  require_fraction(mu1, "l_closed");
  return Estimate::closed_form(std::sqrt(2.0 / kPi) / std::sqrt(1.0 + mass_asymmetry_sq(mu1)));
}

Estimate l_quad(double mu1, double mu2, const QuadratureSpec& spec) {
  require_fraction(mu1, "l_quad");
  require_fraction(mu2, "l_quad");
  if (!(mu1 + mu2 > 0)) throw std::invalid_argument("l_quad: mu1 + mu2 must be > 0");
  const double a = mu1 * mu1 + mu2 * mu2;
  const double delta = mu1 - mu2;
  // (P, Q) = (q1 + q2, mu2 q1 - mu1 q2); Jacobian 1 / (mu1 + mu2). The
  // relative angle between P and Q is the remaining angular variable.
  const double prefactor = 8.0 * kPi * kPi / (kPi * kPi * kPi * (mu1 + mu2));
  auto f = [&](double p, double q, double u) {
    return prefactor * p * p * q * q * q *
           std::exp(-a * p * p - 2.0 * q * q - delta * p * q * u) * special::sinhc(delta * p * q);
  };
  return integrate_radial2_angular(f, spec);
}

Estimate n_closed(double mu1) {
  require_fraction(mu1, "n_closed");
  const double d = mass_asymmetry_sq(mu1);
  if (std::abs(2.0 * mu1 - 1.0) < 1e-4) {
    return Estimate::closed_form(0.75 - 3.0 * d / 16.0 + 5.0 * d * d / 32.0);
  }
  const double grown = std::expm1(1.5 * std::log1p(d));  // (1 + d)^{3/2} - 1
  return Estimate::closed_form(grown / (2.0 * d * std::sqrt(1.0 + d)));
}

Estimate n_quad(double mu1, double mu2, const QuadratureSpec& spec) {
  require_fraction(mu1, "n_quad");
  require_fraction(mu2, "n_quad");
  const double a = mu1 * mu1 + mu2 * mu2;
  const double delta = mu1 - mu2;
  const double prefactor = 8.0 * kPi * kPi / (kPi * kPi * kPi);
  // Integration variables are |q_cm|, |q| and the cosine between them.
  auto f = [&](double cm, double q, double u) {
    return prefactor * cm * cm * q * q * q * q *
           std::exp(-a * cm * cm - 2.0 * q * q - delta * cm * q * u) * special::sinhc(delta * cm * q);
  };
  return integrate_radial2_angular(f, spec);
}

CoeffResult entanglement_coefficient(double mu1, const QuadratureSpec& spec) {
  require_fraction(mu1, "entanglement_coefficient");
  CoeffResult out;
  out.mu1 = mu1;
  const double mu2 = 1.0 - mu1;
  out.j_fwd = j_integral(mu1, mu2, spec);
  out.j_rev = j_integral(mu2, mu1, spec);
  out.l = l_closed(mu1);
  out.n = n_closed(mu1);
  const double l = out.l.value;
  out.e.value = 8.0 * (l * l + out.n.value - out.j_fwd.value - out.j_rev.value);
  out.e.abs_err = 8.0 * (out.j_fwd.abs_err + out.j_rev.abs_err);
  out.e.method = Method::Quadrature;
  out.e.converged = out.j_fwd.converged && out.j_rev.converged;
  return out;
}

std::vector<TableRow> coefficient_table(const std::vector<double>& grid, const QuadratureSpec& spec,
                                        unsigned threads) {
  std::vector<TableRow> rows(grid.size());
  parallel_for(grid.size(), threads == 0 ? default_thread_count() : threads, [&](std::size_t i) {
    rows[i].mu1 = grid[i];
    try {
      rows[i].result = entanglement_coefficient(grid[i], spec);
    } catch (const std::exception& err) {
      rows[i].error = err.what();
    }
  });
  return rows;
}

std::vector<double> mu1_grid(double from, double to, double step) {
  if (!(step > 0)) throw std::invalid_argument("mu1_grid: step must be > 0");
  if (to < from) throw std::invalid_argument("mu1_grid: empty range");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = from + static_cast<double>(i) * step;
    grid.push_back(std::round(x * 1e12) / 1e12);
  }
  return grid;
}

std::vector<double> table1_grid() { return mu1_grid(0.5, 1.0, 0.025); }

}  // namespace scatent
