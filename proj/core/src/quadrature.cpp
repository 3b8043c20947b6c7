#include "cochlea/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "cochlea/errors.hpp"

namespace cochlea {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature needs at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double beta = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = beta;
    jac(i - 1, i) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  QuadratureRule rule;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes.push_back(mid + half * es.eigenvalues()(i));
    rule.weights.push_back(2.0 * v0 * v0 * half);
  }
  return rule;
}

}  // namespace cochlea
