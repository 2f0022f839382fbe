#include "scatent/potential_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace scatent {

PotentialFormatError::PotentialFormatError(std::string source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) { return s.substr(0, s.find('#')); }

std::optional<double> to_double(const std::string& token) {
  double v = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

}  // namespace

Potential load_radial_table(std::istream& in, const std::string& source) {
  std::vector<double> r;
  std::vector<double> v;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    std::istringstream fields(text);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra))
      throw PotentialFormatError(source, line, "expected two columns 'r V'");
    const auto ra = to_double(a);
    const auto vb = to_double(b);
    if (!ra || !vb) throw PotentialFormatError(source, line, "non-numeric value");
    if (!r.empty() && !(*ra > r.back()))
      throw PotentialFormatError(source, line, "radii must be strictly increasing");
    if (*ra < 0) throw PotentialFormatError(source, line, "radius must be >= 0");
    r.push_back(*ra);
    v.push_back(*vb);
  }
  if (r.size() < 2) throw PotentialFormatError(source, line, "table needs at least two rows");
  return Potential::tabulated(std::move(r), std::move(v));
}

Potential parse_potential(std::istream& in, const std::string& source,
                          const std::filesystem::path& base_dir) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw PotentialFormatError(source, line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    static const char* kKeys[] = {"kind", "parameters", "support_radius", "mass", "hbar",
                                  "beta", "table_file", "anisotropy", "cells"};
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw PotentialFormatError(source, line, "unknown key '" + key + "'");
    if (entries.count(key)) throw PotentialFormatError(source, line, "duplicate key '" + key + "'");
    if (value.empty()) throw PotentialFormatError(source, line, "empty value for '" + key + "'");
    entries[key] = {value, line};
  }

  auto number = [&](const std::string& key) -> std::optional<double> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    const auto v = to_double(it->second.value);
    if (!v) throw PotentialFormatError(source, it->second.line, "'" + key + "' is not a number");
    return v;
  };
  auto line_of = [&](const std::string& key) {
    const auto it = entries.find(key);
    return it == entries.end() ? line : it->second.line;
  };

  if (!entries.count("kind")) throw PotentialFormatError(source, line, "missing 'kind'");
  PotentialKind kind{};
  try {
    kind = potential_kind_from_string(entries["kind"].value);
  } catch (const std::invalid_argument& err) {
    throw PotentialFormatError(source, line_of("kind"), err.what());
  }
  if (kind == PotentialKind::AnisotropicGrid)
    throw PotentialFormatError(source, line_of("kind"),
                               "anisotropic potentials are declared with a radial kind plus 'anisotropy'");

  std::vector<double> params;
  if (entries.count("parameters")) {
    std::istringstream fields(entries["parameters"].value);
    std::string token;
    while (fields >> token) {
      const auto v = to_double(token);
      if (!v) throw PotentialFormatError(source, line_of("parameters"), "bad parameter '" + token + "'");
      params.push_back(*v);
    }
  }

  try {
    Potential pot;
    switch (kind) {
      case PotentialKind::Zero: pot = Potential::zero(); break;
      case PotentialKind::SquareWell:
      case PotentialKind::GaussianWell:
      case PotentialKind::YukawaCutoff: {
        const std::size_t want = kind == PotentialKind::YukawaCutoff ? 3 : 2;
        if (params.size() != want)
          throw PotentialFormatError(source, line_of("parameters"),
                                     std::string(to_string(kind)) + " expects " + std::to_string(want) +
                                         " parameters");
        if (kind == PotentialKind::SquareWell) pot = Potential::square_well(params[0], params[1]);
        else if (kind == PotentialKind::GaussianWell) pot = Potential::gaussian_well(params[0], params[1]);
        else pot = Potential::yukawa_cutoff(params[0], params[1], params[2]);
        break;
      }
      case PotentialKind::Tabulated: {
        if (!entries.count("table_file"))
          throw PotentialFormatError(source, line, "tabulated potential needs 'table_file'");
        const std::filesystem::path table = base_dir / entries["table_file"].value;
        std::ifstream tf(table);
        if (!tf)
          throw PotentialFormatError(source, line_of("table_file"), "cannot open " + table.string());
        pot = load_radial_table(tf, table.string());
        break;
      }
      case PotentialKind::AnisotropicGrid: break;
    }
    if (auto v = number("support_radius")) pot.support_radius = *v;
    if (auto v = number("mass")) pot.mass = *v;
    if (auto v = number("hbar")) pot.hbar = *v;
    if (auto v = number("beta")) pot.beta = *v;
    pot.validate();
    if (auto eps = number("anisotropy")) {
      int cells = 16;
      if (auto c = number("cells")) cells = static_cast<int>(*c);
      pot = Potential::with_anisotropy(pot, *eps, cells);
    }
    return pot;
  } catch (const PotentialFormatError&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw PotentialFormatError(source, line_of("kind"), err.what());
  }
}

Potential load_potential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PotentialFormatError(path.string(), 0, "cannot open file");
  return parse_potential(in, path.string(), path.parent_path());
}

}  // namespace scatent
