#pragma once

#include <vector>

namespace cochlea {

/// f(x) = a·e^{b·x} + c.
struct ExponentialFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual = 0.0;  ///< ‖f(x) − y‖₂
  int iterations = 0;

  double operator()(double x) const;
};

/// Levenberg–Marquardt least squares seeded by a log-linear fit of
/// ln|y − c₀| against x. Needs at least 4 points; throws FitError when the
/// iteration fails, with the iterate trace in the message.
ExponentialFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cochlea
