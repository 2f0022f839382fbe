#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "scatent/scatlen.hpp"

// Potential definition files:
//
//   # comment
//   kind = square-well          (zero | square-well | gaussian-well | yukawa-cutoff | tabulated)
//   parameters = 1.0 1.0        (per kind, whitespace separated)
//   support_radius = 1.0        (optional for analytic kinds)
//   mass = 0.5                  (reduced mass, default 0.5)
//   hbar = 1.0
//   beta = 12                   (decay metadata)
//   table_file = well.dat       (tabulated: two columns r V, relative to this file)
//   anisotropy = 0.1            (optional: V(|x|)(1 + eps x3/|x|) on the 3D grid)
//   cells = 16                  (3D grid cells per axis)
namespace scatent {

class PotentialFormatError : public std::runtime_error {
 public:
  PotentialFormatError(std::string source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

Potential parse_potential(std::istream& in, const std::string& source = "<input>",
                          const std::filesystem::path& base_dir = {});
Potential load_potential(const std::filesystem::path& path);

// Two-column (r, V) text; '#' starts a comment.
Potential load_radial_table(std::istream& in, const std::string& source = "<table>");

}  // namespace scatent
