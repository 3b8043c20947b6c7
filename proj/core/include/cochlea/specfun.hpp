#pragma once

// Cylinder functions of complex argument and integer order, and the outgoing
// fundamental solution of the 2-D Helmholtz operator.
//
// Evaluation regions (|z| = modulus of the argument):
//   |z| < 8         ascending power series for J_n, Y_0, Y_1
//   8 <= |z| <= 30  Miller backward recurrence for J_n, Neumann series for Y_0, Y_1
//   |z| > 30        Hankel asymptotic expansion for orders 0 and 1, Miller for J_n
// Y_n and H_n for n >= 2 come from forward recurrence, which is stable for the
// dominant solution. All branches are principal.

#include <vector>

#include "cochlea/types.hpp"

namespace cochlea {

inline constexpr int kMaxBesselOrder = 60;
inline constexpr double kMaxBesselArgument = 1.0e4;

/// J_n(z), or J_n'(z) when `derivative` is set. Throws RangeError outside
/// |n| <= 60, |z| <= 1e4 or when the result overflows.
cplx cyl_bessel_j(int order, cplx z, bool derivative = false);

/// H_n^{(1)}(z) = J_n(z) + i Y_n(z), or its derivative. Throws
/// SingularArgumentError for z = 0.
cplx cyl_hankel1(int order, cplx z, bool derivative = false);

/// Values J_0..J_{max_order} and, when `hankel` is non-null, H_0..H_{max_order}.
/// This is the batch entry point used by operator assembly; orders up to 160
/// are accepted here.
void bessel_sequences(int max_order, cplx z, std::vector<cplx>* bessel,
                      std::vector<cplx>* hankel);

/// η_k = (ln k + γ − ln 2)/(2π) − i/4, the constant term of Γ^k near the origin.
cplx log_singularity_constant(cplx k);

/// Γ^k(x) = −(i/4) H_0^{(1)}(k|x|).
cplx fundamental_solution(cplx k, Vec2 x);

/// Directional derivative ∇Γ^k(x)·direction.
cplx fundamental_solution_derivative(cplx k, Vec2 x, Vec2 direction);

}  // namespace cochlea
