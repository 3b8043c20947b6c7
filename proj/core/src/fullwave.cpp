#include "cochlea/fullwave.hpp"

#include <cmath>
#include <sstream>

#include "cochlea/diagnostics.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/parallel.hpp"
#include "cochlea/root_finding.hpp"

namespace cochlea {

OperatorMatrix assemble_A(const ResonatorArray& array, cplx omega, double delta, int order) {
  const cplx k = array.exterior_wavenumber(omega);
  const cplx kb = array.interior_wavenumber(omega);
  const Eigen::MatrixXcd sb = slp_matrix(array, kb, order).matrix;
  const Eigen::MatrixXcd s = slp_matrix(array, k, order).matrix;
  const Eigen::MatrixXcd kbi = np_matrix(array, kb, order, Side::kInterior).matrix;
  const Eigen::Index n = sb.rows();
  Eigen::MatrixXcd a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = sb;
  a.topRightCorner(n, n) = -s;
  a.bottomLeftCorner(n, n) = kbi;
  if (delta == 0.0) {
    a.bottomRightCorner(n, n).setZero();
  } else {
    a.bottomRightCorner(n, n) = -delta * np_matrix(array, k, order, Side::kExterior).matrix;
  }
  return {OperatorKind::kFullSystem, k, order, array.size(), std::move(a)};
}

namespace {

Eigen::VectorXcd stack(const BoundaryDensity& top, const BoundaryDensity& bottom) {
  Eigen::VectorXcd v(top.size() + bottom.size());
  v << top.coefficients(), bottom.coefficients();
  return v;
}

}  // namespace

ScatterSolution scatter(const ResonatorArray& array, double omega, double delta,
                        const IncidentWave& incident, int order) {
  if (!(omega > 0.0)) throw DomainError("scattering frequency must be positive");
  const OperatorMatrix a = assemble_A(array, omega, delta, order);
  const PlaneWaveTrace tr = plane_wave_trace(incident, array, omega, order);
  const Eigen::VectorXcd rhs = stack(tr.dirichlet, delta * tr.neumann);

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a.matrix);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13)) {
    std::ostringstream os;
    os << "boundary system is numerically singular at omega = " << omega << " (rcond " << rcond
       << ")";
    throw SolveError(os.str());
  }
  if (rcond < 1e-8) {
    std::ostringstream os;
    os << "boundary system is ill-conditioned at omega = " << omega << " (rcond " << rcond
       << "); a resonance is being excited";
    warn(os.str());
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  const Eigen::Index n = x.size() / 2;
  ScatterSolution sol;
  sol.omega = omega;
  sol.incident = incident;
  sol.phi = BoundaryDensity(array.size(), order, x.head(n));
  sol.psi = BoundaryDensity(array.size(), order, x.tail(n));
  const double bn = rhs.norm();
  sol.residual = bn > 0.0 ? (a.matrix * x - rhs).norm() / bn : 0.0;
  sol.rcond = rcond;
  return sol;
}

Eigen::MatrixXcd equilibrate(Eigen::MatrixXcd a) {
  for (int sweep = 0; sweep < 50; ++sweep) {
    double change = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const double nr = a.row(r).norm();
      if (nr > 0.0) a.row(r) /= nr;
      change = std::max(change, std::abs(nr - 1.0));
    }
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double nc = a.col(c).norm();
      if (nc > 0.0) a.col(c) /= nc;
      change = std::max(change, std::abs(nc - 1.0));
    }
    if (change < 1e-3) break;
  }
  return a;
}

double sigma_ratio(const ResonatorArray& array, cplx omega, double delta, int order) {
  const Eigen::MatrixXcd a = equilibrate(assemble_A(array, omega, delta, order).matrix);
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) / sv(0);
}

std::vector<SweepPoint> frequency_sweep(const ResonatorArray& array, double delta,
                                        const std::vector<double>& omegas,
                                        const IncidentWave& family, int order,
                                        const DiskQuadrature& quadrature) {
  std::vector<SweepPoint> out(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t g) {
    SweepPoint& pt = out[g];
    pt.omega = omegas[g];
    try {
      IncidentWave inc = family;
      inc.omega_in = omegas[g];
      const ScatterSolution sol = scatter(array, omegas[g], delta, inc, order);
      const InteriorExpansion ex = interior_expansion(array, sol.phi, omegas[g], quadrature.angular);
      const SampledInterior s = sample_interior(array, ex, quadrature.radial);
      pt.response_norm = std::sqrt(std::max(0.0, l2_inner_product(s, s).real()));
      pt.sigma_min_ratio = sigma_ratio(array, omegas[g], delta, order);
    } catch (const Error& e) {
      pt.error = e.what();
      pt.response_norm = std::nan("");
      pt.sigma_min_ratio = std::nan("");
    }
  });
  return out;
}

RefinedResonance refine_resonance(const ResonatorArray& array, double delta, const Resonance& seed,
                                  int order, double tolerance) {
  const cplx w0 = seed.omega;
  if (!(w0.real() > 0.0)) throw DomainError("refinement seed must have positive real part");
  auto log_det = [&](cplx w) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(assemble_A(array, w, delta, order).matrix);
    const auto& m = lu.matrixLU();
    cplx s = std::log(cplx(double(lu.permutationP().determinant())));
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += std::log(m(i, i));
    return s;
  };
  const cplx ref = log_det(w0);
  auto f = [&](cplx w) { return std::exp(log_det(w) - ref); };

  MullerOptions opts;
  opts.tolerance = tolerance;
  opts.max_iterations = 100;
  const double h = 1e-3;
  const MullerResult r =
      muller(f, w0 * (1.0 - h), w0 * (1.0 + h), w0 * cplx(1.0, -0.5 * h), opts);
  if (!r.converged) {
    std::ostringstream os;
    os << "refinement from " << w0 << " did not converge in " << r.iterations
       << " iterations; iterates:";
    for (cplx z : r.trace) os << ' ' << z;
    throw RefinementError(os.str());
  }
  const Eigen::MatrixXcd a = assemble_A(array, r.root, delta, order).matrix;
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index last = sv.size() - 1;
  const Eigen::VectorXcd v = svd.matrixV().col(last);
  const Eigen::Index n = v.size() / 2;

  RefinedResonance out;
  out.resonance.omega = r.root;
  out.resonance.method = Resonance::Method::kFullwave;
  out.resonance.residual = sigma_ratio(array, r.root, delta, order);
  out.resonance.relative_residual = out.resonance.residual;
  out.phi = BoundaryDensity(array.size(), order, v.head(n));
  out.psi = BoundaryDensity(array.size(), order, v.tail(n));
  out.trace = r.trace;
  return out;
}

Eigenmode eigenmode_fullwave(const ResonatorArray& array, const RefinedResonance& refined,
                             const DiskQuadrature& quadrature) {
  Eigenmode mode;
  mode.resonance = refined.resonance;
  mode.phi = refined.phi;
  mode.psi = refined.psi;
  normalize_mode(array, mode, quadrature);
  return mode;
}

}  // namespace cochlea
