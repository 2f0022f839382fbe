#pragma once

#include <string_view>

namespace scatent {

enum class Method { Quadrature, ClosedForm, MonteCarlo };

std::string_view to_string(Method method);

// A numeric value with an absolute error estimate. Closed-form values carry
// abs_err == 0. `converged` is false when a quadrature or MC engine stopped
// before reaching its target accuracy; the value is still the best available.
struct Estimate {
  double value = 0.0;
  double abs_err = 0.0;
  Method method = Method::ClosedForm;
  bool converged = true;

  static Estimate closed_form(double v) { return {v, 0.0, Method::ClosedForm, true}; }
};

}  // namespace scatent
