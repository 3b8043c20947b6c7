#include "cochlea/root_finding.hpp"

#include <cmath>

namespace cochlea {

MullerResult muller(const std::function<cplx(cplx)>& f, cplx x0, cplx x1, cplx x2,
                    const MullerOptions& options, const std::vector<cplx>& deflate) {
  auto g = [&](cplx z) {
    cplx v = f(z);
    for (cplx r : deflate) v /= (z - r);
    return v;
  };
  MullerResult res;
  cplx f0 = g(x0), f1 = g(x1), f2 = g(x2);
  res.trace = {x0, x1, x2};
  for (int it = 1; it <= options.max_iterations; ++it) {
    res.iterations = it;
    if (f2 == cplx(0.0)) {
      res.converged = true;
      break;
    }
    const cplx h1 = x1 - x0;
    const cplx h2 = x2 - x1;
    const cplx d1 = (f1 - f0) / h1;
    const cplx d2 = (f2 - f1) / h2;
    const cplx a = (d2 - d1) / (h2 + h1);
    const cplx b = a * h2 + d2;
    const cplx disc = std::sqrt(b * b - 4.0 * a * f2);
    cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    if (den == cplx(0.0)) den = 1e-3 * (std::abs(x2) + 1e-300);
    cplx step = -2.0 * f2 / den;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    const cplx x3 = x2 + step;
    res.trace.push_back(x3);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    x2 = x3;
    f2 = g(x2);
    if (std::abs(step) <= options.tolerance * std::abs(x2)) {
      res.converged = true;
      break;
    }
  }
  res.root = x2;
  res.value = f(x2);
  return res;
}

}  // namespace cochlea
