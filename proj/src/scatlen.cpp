#include "scatent/scatlen.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace scatent {

namespace {

constexpr double kPi = std::numbers::pi;

// Chebyshev points of the first kind on [0, R] together with the spectral
// integration matrix S (S f)_i ~ int_0^{r_i} f and the full-interval
// Clenshaw-Curtis row.
struct ChebyshevGrid {
  Eigen::VectorXd r;
  Eigen::MatrixXd cumulative;
  Eigen::RowVectorXd total;
};

ChebyshevGrid chebyshev_grid(int n, double radius) {
  const Eigen::ArrayXd theta = (Eigen::ArrayXd::LinSpaced(n, 0, n - 1) + 0.5) * kPi / n;

  // values -> coefficients
  Eigen::MatrixXd coeffs(n, n);
  for (int k = 0; k < n; ++k) coeffs.row(k) = (2.0 / n) * (k * theta).cos().matrix().transpose();
  coeffs.row(0) *= 0.5;

  // coefficients of f -> coefficients of an antiderivative (degree n)
  Eigen::MatrixXd antideriv = Eigen::MatrixXd::Zero(n + 1, n);
  antideriv(1, 0) = 1.0;
  if (n > 1) antideriv(2, 1) = 0.25;
  for (int k = 2; k < n; ++k) {
    antideriv(k + 1, k) += 1.0 / (2.0 * (k + 1));
    antideriv(k - 1, k) -= 1.0 / (2.0 * (k - 1));
  }

  // evaluate at the nodes minus the value at x = -1
  Eigen::MatrixXd eval(n, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double at_minus_one = (k % 2 == 0) ? 1.0 : -1.0;
    eval.col(k) = (k * theta).cos().matrix().array() - at_minus_one;
  }

  ChebyshevGrid grid;
  grid.r = (radius * 0.5 * (theta.cos() + 1.0)).matrix();
  grid.cumulative = (0.5 * radius) * (eval * antideriv * coeffs);
  grid.total = Eigen::RowVectorXd::Zero(n);
  for (int k = 0; k < n; k += 2) grid.total += (2.0 / (1.0 - double(k) * k)) * coeffs.row(k);
  grid.total *= 0.5 * radius;
  return grid;
}

// K f = G0 W f for radial f, with the angle-averaged kernel r'^2 / max(r, r'):
// (K f)(r) = (1/r) int_0^r r'^2 W f + int_r^R r' W f.
Eigen::MatrixXd radial_kernel(const ChebyshevGrid& grid, const Eigen::VectorXd& w_pot) {
  const Eigen::VectorXd& r = grid.r;
  const Eigen::VectorXd r2w = r.array().square() * w_pot.array();
  const Eigen::VectorXd rw = r.array() * w_pot.array();
  Eigen::MatrixXd outer = (-grid.cumulative).rowwise() + grid.total;
  return r.cwiseInverse().asDiagonal() * grid.cumulative * r2w.asDiagonal() +
         outer * rw.asDiagonal();
}

double reciprocal_condition_check(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  const double rcond = lu.rcond();
  const double condition = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(condition <= kResonanceCondition)) throw ResonanceError(condition);
  return condition;
}

ZeroEnergySolution solve_radial(const Potential& pot, int n) {
  if (n < 16) throw std::invalid_argument("solve_zero_energy: grid_size must be >= 16");
  const ChebyshevGrid grid = chebyshev_grid(n, pot.support_radius);
  Eigen::VectorXd w_pot(n);
  for (int i = 0; i < n; ++i) w_pot[i] = pot.coupling() * pot.radial(grid.r[i]);

  ZeroEnergySolution out;
  out.nodes = grid.r;
  if (w_pot.isZero(0.0)) {
    out.w = Eigen::VectorXd::Ones(n);
    return out;
  }
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + radial_kernel(grid, w_pot);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  out.condition = reciprocal_condition_check(lu);
  out.w = lu.solve(Eigen::VectorXd::Ones(n));
  // (1/4pi) int W w d^3x = int r^2 W w dr
  out.c0 = grid.total.dot((grid.r.array().square() * w_pot.array() * out.w.array()).matrix());
  return out;
}

}  // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Zero: return "zero";
    case PotentialKind::SquareWell: return "square-well";
    case PotentialKind::GaussianWell: return "gaussian-well";
    case PotentialKind::YukawaCutoff: return "yukawa-cutoff";
    case PotentialKind::Tabulated: return "tabulated";
    case PotentialKind::AnisotropicGrid: return "anisotropic-grid";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view name) {
  for (auto kind : {PotentialKind::Zero, PotentialKind::SquareWell, PotentialKind::GaussianWell,
                    PotentialKind::YukawaCutoff, PotentialKind::Tabulated,
                    PotentialKind::AnisotropicGrid}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown potential kind '" + std::string(name) + "'");
}

Potential Potential::zero(double support_radius) {
  Potential p;
  p.support_radius = support_radius;
  p.validate();
  return p;
}

Potential Potential::square_well(double depth, double radius) {
  Potential p;
  p.kind = PotentialKind::SquareWell;
  p.params = {depth, radius};
  p.support_radius = radius;
  p.validate();
  return p;
}

Potential Potential::gaussian_well(double depth, double width) {
  Potential p;
  p.kind = PotentialKind::GaussianWell;
  p.params = {depth, width};
  p.support_radius = 6.0 * width;
  p.validate();
  return p;
}

Potential Potential::yukawa_cutoff(double g, double kappa, double rc) {
  Potential p;
  p.kind = PotentialKind::YukawaCutoff;
  p.params = {g, kappa, rc};
  p.support_radius = rc;
  p.validate();
  return p;
}

Potential Potential::tabulated(std::vector<double> r, std::vector<double> v) {
  Potential p;
  p.kind = PotentialKind::Tabulated;
  p.table_r = std::move(r);
  p.table_v = std::move(v);
  p.support_radius = p.table_r.empty() ? 0.0 : p.table_r.back();
  p.validate();
  return p;
}

Potential Potential::anisotropic(std::function<double(const Vec3&)> field, double support_radius,
                                 int cells) {
  Potential p;
  p.kind = PotentialKind::AnisotropicGrid;
  p.field = std::move(field);
  p.support_radius = support_radius;
  p.cells = cells;
  p.validate();
  return p;
}

Potential Potential::with_anisotropy(const Potential& radial, double eps, int cells) {
  if (!radial.is_radial()) throw std::invalid_argument("with_anisotropy: base potential must be radial");
  Potential p = radial;
  p.kind = PotentialKind::AnisotropicGrid;
  p.cells = cells;
  p.field = [radial, eps](const Vec3& x) {
    const double r = x.norm();
    const double tilt = r > 0 ? eps * x.z() / r : 0.0;
    return radial.radial(r) * (1.0 + tilt);
  };
  p.validate();
  return p;
}

void Potential::validate() const {
  if (!(support_radius > 0) || !std::isfinite(support_radius))
    throw std::invalid_argument("Potential: support_radius must be positive and finite");
  if (!(mass > 0)) throw std::invalid_argument("Potential: mass must be > 0");
  if (!(hbar > 0)) throw std::invalid_argument("Potential: hbar must be > 0");
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      std::ostringstream msg;
      msg << "Potential: " << to_string(kind) << " takes " << count << " parameters, got "
          << params.size();
      throw std::invalid_argument(msg.str());
    }
  };
  switch (kind) {
    case PotentialKind::Zero: break;
    case PotentialKind::SquareWell:
      need(2);
      if (!(params[1] > 0)) throw std::invalid_argument("Potential: square-well radius must be > 0");
      break;
    case PotentialKind::GaussianWell:
      need(2);
      if (!(params[1] > 0)) throw std::invalid_argument("Potential: gaussian-well width must be > 0");
      break;
    case PotentialKind::YukawaCutoff:
      need(3);
      if (!(params[2] > 0)) throw std::invalid_argument("Potential: yukawa cutoff must be > 0");
      break;
    case PotentialKind::Tabulated:
      if (table_r.size() < 2 || table_r.size() != table_v.size())
        throw std::invalid_argument("Potential: table needs >= 2 (r, V) pairs of equal length");
      if (table_r.front() < 0) throw std::invalid_argument("Potential: table radii must be >= 0");
      for (std::size_t i = 1; i < table_r.size(); ++i) {
        if (!(table_r[i] > table_r[i - 1]))
          throw std::invalid_argument("Potential: table radii must be strictly increasing");
      }
      for (double v : table_v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Potential: table values must be finite");
      }
      break;
    case PotentialKind::AnisotropicGrid:
      if (!field) throw std::invalid_argument("Potential: anisotropic-grid needs a field");
      if (cells < 4 || cells > kMaxCollocationCells)
        throw std::invalid_argument("Potential: cells per axis must lie in [4, " +
                                    std::to_string(kMaxCollocationCells) + "]");
      break;
  }
}

double Potential::radial(double r) const {
  switch (kind) {
    case PotentialKind::Zero: return 0.0;
    case PotentialKind::SquareWell: return r < params[1] ? -params[0] : 0.0;
    case PotentialKind::GaussianWell: return -params[0] * std::exp(-(r * r) / (params[1] * params[1]));
    case PotentialKind::YukawaCutoff: return r < params[2] ? -params[0] * std::exp(-params[1] * r) / r : 0.0;
    case PotentialKind::Tabulated: {
      if (r <= table_r.front()) return table_v.front();
      if (r > table_r.back()) return 0.0;
      const auto hi = std::upper_bound(table_r.begin(), table_r.end(), r);
      if (hi == table_r.end()) return table_v.back();
      const auto j = static_cast<std::size_t>(hi - table_r.begin());
      const double t = (r - table_r[j - 1]) / (table_r[j] - table_r[j - 1]);
      return (1.0 - t) * table_v[j - 1] + t * table_v[j];
    }
    case PotentialKind::AnisotropicGrid:
      throw std::logic_error("Potential::radial on an anisotropic potential");
  }
  return 0.0;
}

double Potential::operator()(const Vec3& x) const {
  if (kind == PotentialKind::AnisotropicGrid) return x.norm() < support_radius ? field(x) : 0.0;
  return radial(x.norm());
}

Potential Potential::scaled(double lambda) const {
  Potential p = *this;
  switch (kind) {
    case PotentialKind::Zero: break;
    case PotentialKind::SquareWell:
    case PotentialKind::GaussianWell:
    case PotentialKind::YukawaCutoff: p.params[0] *= lambda; break;
    case PotentialKind::Tabulated:
      for (double& v : p.table_v) v *= lambda;
      break;
    case PotentialKind::AnisotropicGrid: {
      auto base = field;
      p.field = [base, lambda](const Vec3& x) { return lambda * base(x); };
      break;
    }
  }
  return p;
}

namespace {
std::string resonance_message(double condition) {
  std::ostringstream msg;
  msg << "zero-energy resonance: condition number " << std::setprecision(3) << condition << " exceeds "
      << kResonanceCondition;
  return msg.str();
}
}  // namespace

ResonanceError::ResonanceError(double condition)
    : std::runtime_error(resonance_message(condition)), condition_(condition) {}

ZeroEnergySolution solve_zero_energy_3d(const Potential& pot, int cells) {
  pot.validate();
  if (cells < 4 || cells > kMaxCollocationCells)
    throw std::invalid_argument("solve_zero_energy_3d: cells must lie in [4, " +
                                std::to_string(kMaxCollocationCells) + "]");
  const double radius = pot.support_radius;
  const double h = 2.0 * radius / cells;

  std::vector<Vec3> centres;
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j)
      for (int k = 0; k < cells; ++k) {
        const Vec3 c(-radius + h * (i + 0.5), -radius + h * (j + 0.5), -radius + h * (k + 0.5));
        if (c.norm() < radius) centres.push_back(c);
      }
  const auto n = static_cast<Eigen::Index>(centres.size());

  Eigen::VectorXd w_pot(n);
  for (Eigen::Index i = 0; i < n; ++i) w_pot[i] = pot.coupling() * pot(centres[i]);

  ZeroEnergySolution out;
  out.nodes.resize(3 * n);
  for (Eigen::Index i = 0; i < n; ++i) out.nodes.segment<3>(3 * i) = centres[i];
  if (w_pot.isZero(0.0)) {
    out.w = Eigen::VectorXd::Ones(n);
    return out;
  }

  // Off-diagonal: point rule h^3 / (4 pi |x_i - x_j|); diagonal: exact cell
  // average h^2 C / (4 pi) of the singular kernel.
  Eigen::MatrixXd a(n, n);
  const double self = h * h * kUnitCubeInverseDistance / (4.0 * kPi);
  const double vol = h * h * h / (4.0 * kPi);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = i == j ? self : vol / (centres[i] - centres[j]).norm();
      a(i, j) = g * w_pot[j] + (i == j ? 1.0 : 0.0);
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  out.condition = reciprocal_condition_check(lu);
  out.w = lu.solve(Eigen::VectorXd::Ones(n));

  const double cell = h * h * h;
  Vec3 dipole = Vec3::Zero();
  double monopole = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ww = w_pot[i] * out.w[i] * cell;
    monopole += ww;
    dipole += ww * centres[i];
  }
  out.c0 = monopole / (4.0 * kPi);
  // Y1(nu) = (1 / 4 pi^{3/2}) (W w, x . nu), written against sqrt(3/4pi) nu_m
  out.y1 = dipole * (std::sqrt(4.0 * kPi / 3.0) / (4.0 * std::pow(kPi, 1.5)));
  return out;
}

ZeroEnergySolution solve_zero_energy(const Potential& pot, int grid_size) {
  pot.validate();
  if (pot.is_radial()) return solve_radial(pot, grid_size);
  return solve_zero_energy_3d(pot, grid_size);
}

Estimate scattering_length(const Potential& pot, int grid_size) {
  if (grid_size == 0) grid_size = pot.is_radial() ? 400 : kMaxCollocationCells;
  const ZeroEnergySolution fine = solve_zero_energy(pot, grid_size);
  const int coarse_size = pot.is_radial() ? std::max(16, grid_size / 2) : std::max(4, grid_size / 2);
  const ZeroEnergySolution coarse = solve_zero_energy(pot, coarse_size);
  Estimate est{fine.c0, std::abs(fine.c0 - coarse.c0), Method::Quadrature, true};
  const double tol = pot.is_radial() ? 1e-6 : 5e-2;
  if (est.abs_err > tol * std::abs(fine.c0)) est.converged = false;
  return est;
}

Vec3 y1_coefficients(const Potential& pot, int grid_size) {
  if (pot.is_radial()) {
    pot.validate();
    return Vec3::Zero();
  }
  if (grid_size == 0) grid_size = pot.cells;
  return solve_zero_energy_3d(pot, grid_size).y1;
}

std::pair<double, double> born_terms(const Potential& pot, int grid_size) {
  pot.validate();
  if (!pot.is_radial()) throw std::invalid_argument("born_terms: radial potentials only");
  const ChebyshevGrid grid = chebyshev_grid(grid_size, pot.support_radius);
  Eigen::VectorXd w_pot(grid_size);
  for (int i = 0; i < grid_size; ++i) w_pot[i] = pot.coupling() * pot.radial(grid.r[i]);
  const Eigen::VectorXd r2w = grid.r.array().square() * w_pot.array();
  const Eigen::VectorXd g0w = radial_kernel(grid, w_pot) * Eigen::VectorXd::Ones(grid_size);
  return {grid.total.dot(r2w), grid.total.dot(r2w.cwiseProduct(g0w))};
}

}  // namespace scatent
