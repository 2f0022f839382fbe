#pragma once

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatent/estimate.hpp"
#include "scatent/model.hpp"

// Scattering length c0 and the l = 1 anisotropy coefficients Y1 from the
// zero-energy Lippmann-Schwinger equation (1 + G0 W) w = 1, W = (2m/hbar^2) V.
namespace scatent {

enum class PotentialKind { Zero, SquareWell, GaussianWell, YukawaCutoff, Tabulated, AnisotropicGrid };

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

struct Potential {
  PotentialKind kind = PotentialKind::Zero;
  // square-well: {depth, radius}, V = -depth for r < radius
  // gaussian-well: {depth, width}, V = -depth exp(-r^2 / width^2)
  // yukawa-cutoff: {g, kappa, rc}, V = -g exp(-kappa r) / r for r < rc
  std::vector<double> params;
  double support_radius = 1.0;
  double mass = 0.5;  // reduced mass; with hbar = 1 the default gives W = V
  double hbar = 1.0;
  double beta = std::numeric_limits<double>::infinity();  // decay exponent, metadata only

  // Tabulated radial samples, linearly interpolated, zero beyond the last r.
  std::vector<double> table_r;
  std::vector<double> table_v;

  // Anisotropic potentials: V(x) on the collocation box [-R, R]^3.
  std::function<double(const Vec3&)> field;
  int cells = 16;

  static Potential zero(double support_radius = 1.0);
  static Potential square_well(double depth, double radius);
  static Potential gaussian_well(double depth, double width);
  static Potential yukawa_cutoff(double g, double kappa, double rc);
  static Potential tabulated(std::vector<double> r, std::vector<double> v);
  static Potential anisotropic(std::function<double(const Vec3&)> field, double support_radius,
                               int cells = 16);
  // V_radial(|x|) (1 + eps x3 / |x|) built from a radial potential.
  static Potential with_anisotropy(const Potential& radial, double eps, int cells = 16);

  void validate() const;
  bool is_radial() const { return kind != PotentialKind::AnisotropicGrid; }
  // 2m / hbar^2
  double coupling() const { return 2.0 * mass / (hbar * hbar); }
  double radial(double r) const;
  double operator()(const Vec3& x) const;
  // lambda V, same metadata.
  Potential scaled(double lambda) const;
};

struct ZeroEnergySolution {
  Eigen::VectorXd nodes;  // radii (radial path) or flattened cell centres x,y,z (3D path)
  Eigen::VectorXd w;
  double c0 = 0.0;
  Vec3 y1 = Vec3::Zero();  // Cartesian (x, y, z) coefficients against sqrt(3/4pi) nu_m
  double condition = 1.0;
};

class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(double condition);
  double condition() const { return condition_; }

 private:
  double condition_;
};

inline constexpr double kResonanceCondition = 1e8;
inline constexpr int kMaxCollocationCells = 20;

// Radial potentials: Chebyshev product-integration Nystrom on [0, support]
// with grid_size nodes (>= 16). Anisotropic potentials: 3D cell collocation
// with grid_size cells per axis (4..kMaxCollocationCells).
ZeroEnergySolution solve_zero_energy(const Potential& pot, int grid_size);

// Cell collocation for any potential; used directly to cross-check the radial path.
ZeroEnergySolution solve_zero_energy_3d(const Potential& pot, int cells);

// c0 at grid_size and grid_size / 2, abs_err = |difference|. converged is
// false (grid too coarse) when the two disagree beyond 1e-6 relative on the
// radial path or 5e-2 on the 3D path. grid_size 0 picks 400 radial nodes or
// kMaxCollocationCells cells.
Estimate scattering_length(const Potential& pot, int grid_size = 0);

Vec3 y1_coefficients(const Potential& pot, int grid_size = 0);

// Born terms B1 = (1/4pi) int W, B2 = (1/4pi) int W G0 W, radial potentials only.
std::pair<double, double> born_terms(const Potential& pot, int grid_size = 400);

// int_{[-1/2,1/2]^3} d^3y / |y|
inline constexpr double kUnitCubeInverseDistance = 2.3800773639795535;

}  // namespace scatent
