#include "scatent/estimate.hpp"

namespace scatent {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Quadrature:
      return "quadrature";
    case Method::ClosedForm:
      return "closed-form";
    case Method::MonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

}  // namespace scatent
