#include "cochlea/curve_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "cochlea/errors.hpp"

namespace cochlea {

double ExponentialFit::operator()(double x) const { return a * std::exp(b * x) + c; }

namespace {

struct ExpFunctor : Eigen::DenseFunctor<double> {
  const Eigen::VectorXd& x;
  const Eigen::VectorXd& y;
  ExpFunctor(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(xs.size())), x(xs), y(ys) {}

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& fvec) const {
    fvec = (p(0) * (p(1) * x.array()).exp() + p(2)).matrix() - y;
    return 0;
  }
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    const Eigen::ArrayXd e = (p(1) * x.array()).exp();
    jac.col(0) = e.matrix();
    jac.col(1) = (p(0) * x.array() * e).matrix();
    jac.col(2).setOnes();
    return 0;
  }
};

// ln|y − c₀| = ln|a| + b x with c₀ just below the data (a > 0) or just above
// it (a < 0). Monotone data fit either way, so both are tried.
Eigen::Vector3d log_linear_seed(const Eigen::VectorXd& x, const Eigen::VectorXd& y, bool below) {
  const double span = y.maxCoeff() - y.minCoeff();
  const double c0 = below ? y.minCoeff() - 0.05 * span : y.maxCoeff() + 0.05 * span;
  const double sign = below ? 1.0 : -1.0;
  Eigen::MatrixXd lhs(x.size(), 2);
  Eigen::VectorXd rhs(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    lhs(i, 0) = 1.0;
    lhs(i, 1) = x(i);
    rhs(i) = std::log(std::max(sign * (y(i) - c0), 1e-300));
  }
  const Eigen::Vector2d coef = lhs.colPivHouseholderQr().solve(rhs);
  return {sign * std::exp(coef(0)), coef(1), c0};
}

}  // namespace

ExponentialFit fit_exponential(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw FitError("x and y lengths differ");
  if (xs.size() < 4) throw FitError("at least 4 points are needed for a 3-parameter fit");
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xs.data(), xs.size());
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), ys.size());
  if (y.maxCoeff() == y.minCoeff()) throw FitError("data are constant; exponent is undetermined");

  ExpFunctor functor(x, y);
  Eigen::VectorXd best;
  double best_norm = std::numeric_limits<double>::infinity();
  int best_iterations = 0;
  std::ostringstream trace;
  for (bool below : {true, false}) {
    Eigen::VectorXd p = log_linear_seed(x, y, below);
    const Eigen::VectorXd seed = p;
    Eigen::LevenbergMarquardt<ExpFunctor> lm(functor);
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    lm.setGtol(0.0);
    lm.setMaxfev(2000);
    const auto status = lm.minimize(p);
    Eigen::VectorXd fvec(x.size());
    functor(p, fvec);
    const bool ok = p.allFinite() && fvec.allFinite() &&
                    status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters &&
                    status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation;
    trace << " seed (" << seed(0) << ", " << seed(1) << ", " << seed(2) << ") -> (" << p(0) << ", "
          << p(1) << ", " << p(2) << ") status " << static_cast<int>(status) << " after "
          << lm.iterations() << " iterations;";
    if (ok && fvec.norm() < best_norm) {
      best = p;
      best_norm = fvec.norm();
      best_iterations = static_cast<int>(lm.iterations());
    }
  }
  if (best.size() == 0) throw FitError("Levenberg-Marquardt failed:" + trace.str());
  const Eigen::VectorXd& p = best;
  ExponentialFit fit;
  fit.a = p(0);
  fit.b = p(1);
  fit.c = p(2);
  fit.residual = best_norm;
  fit.iterations = best_iterations;
  return fit;
}

}  // namespace cochlea
