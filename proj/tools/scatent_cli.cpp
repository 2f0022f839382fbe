// scatent: entanglement coefficient, scattering length and purity from the
// command line. Exit codes: 0 ok, 1 usage/domain error, 2 tolerance or
// agreement warning, 3 zero-energy resonance.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "scatent/coeff.hpp"
#include "scatent/potential_io.hpp"
#include "scatent/purity.hpp"
#include "scatent/scatlen.hpp"
#include "scatent/smatrix.hpp"
#include "scatent/verify.hpp"

using json = nlohmann::ordered_json;
using namespace scatent;

namespace {

enum Exit { kOk = 0, kUsage = 1, kWarning = 2, kResonance = 3 };

struct Common {
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
  QuadratureSpec quad;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV numbers: 6 significant digits.
std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

void emit(const Common& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.output);
  if (!out) throw UsageError("cannot write " + common.output);
  out << text;
  if (!out) throw UsageError("write failed: " + common.output);
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::string out = "mu1,E,E_err\n";
  for (const auto& row : rows) {
    if (!row.result) continue;
    out += num(row.mu1) + "," + num(row.result->e.value) + "," + num(row.result->e.abs_err) + "\n";
  }
  return out;
}

json table_json(const std::vector<TableRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j{{"mu1", row.mu1}};
    if (row.result) {
      j["E"] = row.result->e.value;
      j["E_err"] = row.result->e.abs_err;
    } else {
      j["error"] = row.error;
    }
    arr.push_back(j);
  }
  return arr;
}

int report_table(const Common& common, const std::vector<TableRow>& rows) {
  int code = kOk;
  for (const auto& row : rows) {
    if (!row.result) {
      std::cerr << "mu1=" << row.mu1 << ": " << row.error << "\n";
      code = kWarning;
    } else if (!row.result->e.converged) {
      std::cerr << "mu1=" << row.mu1 << ": quadrature did not reach target accuracy\n";
      code = kWarning;
    }
  }
  emit(common, common.format == "json" ? table_json(rows).dump(2) + "\n" : table_csv(rows));
  return code;
}

int cmd_coeff(const Common& common, double mu1) {
  if (!(mu1 >= 0 && mu1 <= 1)) throw UsageError("--mu1 must lie in [0, 1]");
  const CoeffResult r = entanglement_coefficient(mu1, common.quad);
  const std::pair<const char*, const Estimate*> parts[] = {
      {"J_fwd", &r.j_fwd}, {"J_rev", &r.j_rev}, {"L", &r.l}, {"N", &r.n}, {"E", &r.e}};
  if (common.format == "json") {
    json j{{"mu1", mu1}};
    for (const auto& [name, est] : parts) {
      j[name] = est->value;
      j[std::string(name) + "_err"] = est->abs_err;
    }
    j["converged"] = r.e.converged;
    emit(common, j.dump(2) + "\n");
  } else {
    std::string header = "mu1";
    std::string line = num(mu1);
    for (const auto& [name, est] : parts) {
      header += std::string(",") + name + "," + name + "_err";
      line += "," + num(est->value) + "," + num(est->abs_err);
    }
    emit(common, header + "\n" + line + "\n");
  }
  if (!r.e.converged) {
    std::cerr << "warning: J quadrature did not reach target accuracy\n";
    return kWarning;
  }
  return kOk;
}

int cmd_scatlen(const Common& common, const std::string& path, int grid) {
  const Potential pot = load_potential(path);
  if (grid == 0) grid = pot.is_radial() ? 400 : pot.cells;
  const ZeroEnergySolution fine = solve_zero_energy(pot, grid);
  const int coarse_grid = pot.is_radial() ? std::max(16, grid / 2) : std::max(4, grid / 2);
  const ZeroEnergySolution coarse = solve_zero_energy(pot, coarse_grid);
  const double c0_err = std::abs(fine.c0 - coarse.c0);
  const Vec3 y1_err = (fine.y1 - coarse.y1).cwiseAbs();
  const double tol = pot.is_radial() ? 1e-6 : 5e-2;
  const bool converged = c0_err <= tol * std::abs(fine.c0);

  if (common.format == "json") {
    json j{{"c0", fine.c0},
           {"c0_err", c0_err},
           {"Y1", {fine.y1.x(), fine.y1.y(), fine.y1.z()}},
           {"Y1_err", {y1_err.x(), y1_err.y(), y1_err.z()}},
           {"condition", fine.condition},
           {"grid", grid},
           {"converged", converged}};
    emit(common, j.dump(2) + "\n");
  } else {
    emit(common, "c0,c0_err,Y1_x,Y1_y,Y1_z,condition\n" + num(fine.c0) + "," + num(c0_err) + "," +
                     num(fine.y1.x()) + "," + num(fine.y1.y()) + "," + num(fine.y1.z()) + "," +
                     num(fine.condition) + "\n");
  }
  if (!converged) {
    std::cerr << "warning: grid too coarse, c0 changed by " << c0_err << " between grids " << grid
              << " and " << coarse_grid << "\n";
    return kWarning;
  }
  return kOk;
}

struct PurityArgs {
  double mu1 = 0.5;
  double c0 = 1.0;
  double s = 0.05;
  std::vector<double> p0{0, 0, 0};
  std::vector<double> y1{0, 0, 0};
  double beta = std::numeric_limits<double>::infinity();
  MCSpec mc;
};

int cmd_purity(const Common& common, const PurityArgs& a) {
  if (!(a.mu1 >= 0 && a.mu1 <= 1)) throw UsageError("--mu1 must lie in [0, 1]");
  if (!(a.s > 0)) throw UsageError("--s must be > 0");
  const Vec3 p0(a.p0[0], a.p0[1], a.p0[2]);
  const Vec3 y1(a.y1[0], a.y1[1], a.y1[2]);
  const CoeffResult coeff = entanglement_coefficient(a.mu1, common.quad);
  const PurityResult formula = purity_formula(a.mu1, a.c0, a.s, coeff.e, a.beta);
  MCSpec mc = a.mc;
  mc.threads = common.threads;
  const PurityResult mcr = purity_mc(a.mu1, LowEnergySMatrix::build(a.c0, y1), a.s, p0, mc);
  const double slack = 3.0 * mcr.abs_err + 1e-4 + formula.abs_err;
  const bool agreement = std::abs(mcr.value - formula.value) <= slack;

  std::vector<std::string> warnings = formula.warnings;
  warnings.insert(warnings.end(), mcr.warnings.begin(), mcr.warnings.end());
  if (common.format == "json") {
    json j{{"mu1", a.mu1},
           {"c0", a.c0},
           {"s", a.s},
           {"p0_over_hbar", {p0.x(), p0.y(), p0.z()}},
           {"E", coeff.e.value},
           {"E_err", coeff.e.abs_err},
           {"purity_formula", formula.value},
           {"purity_formula_err", formula.abs_err},
           {"remainder_order", formula.remainder_order},
           {"purity_mc", mcr.value},
           {"stderr", mcr.abs_err},
           {"samples", mc.samples},
           {"seed", mc.seed},
           {"slack", slack},
           {"agreement", agreement},
           {"warnings", warnings}};
    emit(common, j.dump(2) + "\n");
  } else {
    emit(common, "mu1,c0,s,purity_formula,purity_formula_err,purity_mc,stderr,agreement\n" +
                     num(a.mu1) + "," + num(a.c0) + "," + num(a.s) + "," + num(formula.value) + "," +
                     num(formula.abs_err) + "," + num(mcr.value) + "," + num(mcr.abs_err) + "," +
                     (agreement ? "true" : "false") + "\n");
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return (!agreement || !warnings.empty()) ? kWarning : kOk;
}

int cmd_verify(const VerifyOptions& options, int only) {
  std::vector<CheckResult> results;
  if (only > 0) {
    results.push_back(run_criterion(only, options));
  } else {
    for (int c = 1; c <= kCriterionCount; ++c) {
      results.push_back(run_criterion(c, options));
      std::cout << format_check(results.back()) << std::endl;
    }
  }
  if (only > 0) std::cout << format_check(results.back()) << "\n";
  int failed = 0;
  for (const auto& r : results) failed += (!r.passed && !r.skipped);
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return failed == 0 ? kOk : kWarning;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement from low-energy two-body scattering"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("-o,--output", common.output, "Write output to this file instead of stdout");
  app.add_option("--threads", common.threads, "Worker threads (0: SCATENT_THREADS or all cores)");
  app.add_option("--radial-nodes", common.quad.radial_nodes, "Gauss nodes per radial axis")
      ->capture_default_str();
  app.add_option("--angular-nodes", common.quad.angular_nodes, "Gauss nodes per angular axis")
      ->capture_default_str();
  app.add_option("--cutoff", common.quad.radial_cutoff, "Radial cutoff in sigma units")->capture_default_str();
  app.add_option("--rel-tol", common.quad.target_rel_err, "Quadrature target relative error")
      ->capture_default_str();

  double mu1 = 0.5;
  auto* coeff = app.add_subcommand("coeff", "J, L, N and E(mu1)");
  coeff->add_option("--mu1", mu1, "Mass fraction m1/(m1+m2)")->required();

  double from = 0.5, to = 1.0, step = 0.025;
  auto* table = app.add_subcommand("table", "E(mu1) on a grid (CSV header mu1,E,E_err)");
  table->add_option("--from", from)->capture_default_str();
  table->add_option("--to", to)->capture_default_str();
  table->add_option("--step", step)->capture_default_str();

  int points = 101;
  auto* figure = app.add_subcommand("figure", "Dense E(mu1) samples on [0.5, 1]");
  figure->add_option("--points", points)->check(CLI::Range(2, 100001))->capture_default_str();

  std::string potential_file;
  int grid = 0;
  auto* scatlen = app.add_subcommand("scatlen", "Scattering length c0 and Y1 of a potential file");
  scatlen->add_option("potential", potential_file, "Potential definition file")->required();
  scatlen->add_option("--grid", grid, "Radial nodes or 3D cells per axis (0: default)");

  PurityArgs pa;
  auto* purity = app.add_subcommand("purity", "Leading-order formula vs Monte-Carlo purity");
  purity->add_option("--mu1", pa.mu1)->capture_default_str();
  purity->add_option("--c0", pa.c0, "Scattering length (c0 * s is dimensionless)")
      ->capture_default_str();
  purity->add_option("--s", pa.s, "sigma/hbar")->capture_default_str();
  purity->add_option("--p0", pa.p0, "Mean relative momentum p0/hbar (3 components)")->expected(3);
  purity->add_option("--y1", pa.y1, "Anisotropy coefficients (3 components)")->expected(3);
  purity->add_option("--beta", pa.beta, "Potential decay exponent (remainder order)");
  purity->add_option("--samples", pa.mc.samples)->capture_default_str();
  purity->add_option("--seed", pa.mc.seed)->capture_default_str();

  VerifyOptions vo;
  int only = 0;
  double j_tol = 0;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_flag("--quick", vo.quick, "Skip Monte-Carlo checks");
  verify->add_option("--samples", vo.mc_samples)->capture_default_str();
  verify->add_option("--seed", vo.seed)->capture_default_str();
  verify->add_option("--j-tol", j_tol, "Override the J golden-value tolerance");
  verify->add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    common.quad.validate();
    if (*coeff) return cmd_coeff(common, mu1);
    if (*table) {
      if (!(from >= 0 && to <= 1)) throw UsageError("grid must lie in [0, 1]");
      return report_table(common, coefficient_table(mu1_grid(from, to, step), common.quad, common.threads));
    }
    if (*figure) {
      return report_table(common,
                          coefficient_table(mu1_grid(0.5, 1.0, 0.5 / (points - 1)), common.quad, common.threads));
    }
    if (*scatlen) return cmd_scatlen(common, potential_file, grid);
    if (*purity) return cmd_purity(common, pa);
    if (*verify) {
      vo.threads = common.threads;
      if (j_tol > 0) vo.j_tol = j_tol;
      return cmd_verify(vo, only);
    }
  } catch (const ResonanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResonance;
  } catch (const PotentialFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
