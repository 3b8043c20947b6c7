#pragma once

#include <functional>
#include <vector>

#include "cochlea/types.hpp"

namespace cochlea {

struct MullerOptions {
  double tolerance = 1e-12;  ///< relative step size at which to stop
  int max_iterations = 100;
};

struct MullerResult {
  cplx root = 0.0;
  cplx value = 0.0;  ///< f(root), undeflated
  int iterations = 0;
  bool converged = false;
  std::vector<cplx> trace;
};

/// Muller's method from three starting points. Roots listed in `deflate`
/// are divided out, so iteration cannot return to them.
MullerResult muller(const std::function<cplx(cplx)>& f, cplx x0, cplx x1, cplx x2,
                    const MullerOptions& options = {}, const std::vector<cplx>& deflate = {});

}  // namespace cochlea
