#pragma once

// Dense Nyström discretisation of S_D^k and K_D^{k,*}, used as an independent
// check of the multipole matrices. Diagonal blocks split the kernel as
// M1(t,τ) ln(4 sin²((t−τ)/2)) + M2(t,τ) and integrate the log part with
// Kress's product weights; off-diagonal blocks use the plain trapezoid rule.

#include <Eigen/Dense>

#include "cochlea/density.hpp"
#include "cochlea/geometry.hpp"

namespace cochlea {

struct NystromMatrices {
  int points_per_circle = 0;
  Eigen::MatrixXcd slp;  ///< S_D^k
  Eigen::MatrixXcd np;   ///< K_D^{k,*} (principal value)
};

/// Helmholtz operators at wavenumber k. points_per_circle must be even, >= 32.
NystromMatrices nystrom_matrix(const ResonatorArray& array, cplx k, int points_per_circle);
/// Laplace operators, kernel (1/2π) ln|x − y|.
NystromMatrices nystrom_laplace_matrix(const ResonatorArray& array, int points_per_circle);

/// Density values at t_l = 2πl/P on each circle, stacked disk by disk.
Eigen::VectorXcd sample_density(const BoundaryDensity& density, int points_per_circle);
/// Discrete Fourier projection of stacked samples onto orders −M..M.
BoundaryDensity project_samples(const Eigen::VectorXcd& samples, std::size_t num_disks,
                                int points_per_circle, int order);

}  // namespace cochlea
