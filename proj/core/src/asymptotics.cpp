#include "cochlea/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cochlea/boundary_ops.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/root_finding.hpp"

namespace cochlea {

namespace {

Eigen::Index flat0(std::size_t disk, int order) {
  return static_cast<Eigen::Index>(disk) * (2 * order + 1) + order;
}

Eigen::MatrixXcd indicator_columns(std::size_t n, int order) {
  Eigen::MatrixXcd chi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * (2 * order + 1),
                                                static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) chi(flat0(i, order), static_cast<Eigen::Index>(i)) = 1.0;
  return chi;
}

}  // namespace

std::string to_string(Resonance::Method method) {
  return method == Resonance::Method::kAsymptotic ? "asymptotic" : "fullwave";
}

Eigen::MatrixXcd KernelBasis::matrix() const {
  if (densities.empty()) return {};
  Eigen::MatrixXcd m(densities.front().size(), static_cast<Eigen::Index>(densities.size()));
  for (std::size_t j = 0; j < densities.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = densities[j].coefficients();
  }
  return m;
}

KernelBasis kernel_basis(const ResonatorArray& array, cplx k0, int order) {
  const OperatorMatrix shat = shat_matrix(array, k0, order);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(shat.matrix);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e13)) {
    std::ostringstream os;
    os << "modified single layer at k0 = " << k0 << " has condition number " << cond
       << "; choose a different k0";
    throw NumericalError(os.str());
  }
  const Eigen::MatrixXcd phi =
      shat.matrix.partialPivLu().solve(indicator_columns(array.size(), order));
  KernelBasis basis;
  basis.k0 = k0;
  basis.order = order;
  for (Eigen::Index j = 0; j < phi.cols(); ++j) {
    basis.densities.emplace_back(array.size(), order, phi.col(j));
  }
  return basis;
}

AsymptoticSystem::AsymptoticSystem(const ResonatorArray& array, const KernelBasis& basis)
    : array_(&array), basis_(&basis) {
  const std::size_t n = array.size();
  const int order = basis.order;
  if (basis.densities.size() != n) throw DomainError("kernel basis does not match the array");
  laplace_ = laplace_slp_matrix(array, order).matrix;
  const Eigen::MatrixXcd phi = basis.matrix();
  const Eigen::MatrixXcd sphi = laplace_ * phi;
  const Eigen::Index nn = static_cast<Eigen::Index>(n);
  I_ = (integral_weights(array, order) * phi).transpose();
  Q_.resize(nn, nn);
  S_.resize(nn, nn);
  const int p = 2 * order + 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::Index ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      Q_(ii, jj) = array.disk(i).perimeter() * phi(flat0(i, order), jj);
      // Mean of the trace over 2M+1 equispaced samples is its order-0
      // coefficient; the spread measures how far S_D[φ_j] is from constant.
      const cplx mean = sphi(flat0(i, order), jj);
      S_(ii, jj) = mean;
      double spread = 0.0;
      for (int s = 0; s < p; ++s) {
        const double t = 2.0 * kPi * s / p;
        cplx v = 0.0;
        for (int m = -order; m <= order; ++m) {
          v += sphi(static_cast<Eigen::Index>(i) * p + m + order, jj) * std::polar(1.0, m * t);
        }
        spread = std::max(spread, std::abs(v - mean));
      }
      if (std::abs(mean) > 0.0) trace_variation_ = std::max(trace_variation_, spread / std::abs(mean));
    }
  }
}

BoundaryDensity AsymptoticSystem::shat_inverse_chi(cplx omega) const {
  const int order = basis_->order;
  const cplx k = array_->exterior_wavenumber(omega);
  const Eigen::MatrixXcd shat = shat_from_laplace(*array_, laplace_, order, k);
  Eigen::VectorXcd chi = indicator_columns(array_->size(), order).rowwise().sum();
  return BoundaryDensity(array_->size(), order, shat.partialPivLu().solve(chi));
}

Eigen::VectorXcd AsymptoticSystem::p_vector(cplx omega) const {
  const BoundaryDensity y = shat_inverse_chi(omega);
  Eigen::VectorXcd p(static_cast<Eigen::Index>(array_->size()));
  for (std::size_t i = 0; i < array_->size(); ++i) {
    p(static_cast<Eigen::Index>(i)) = boundary_integral(*array_, y, i);
  }
  return p;
}

Eigen::MatrixXcd AsymptoticSystem::b_matrix(cplx omega, double delta) const {
  if (omega == cplx(0.0)) throw DomainError("B is undefined at omega = 0");
  const ResonatorArray& a = *array_;
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  const cplx w2 = omega * omega;
  const cplx c_coef = 1.0 + kC1 / kB1 - std::log(a.vb());
  const cplx row_common = w2 * std::log(omega) + c_coef * w2;
  const double log_ratio = std::log(a.v() / a.vb());
  Eigen::VectorXcd p;
  if (log_ratio != 0.0 && delta != 0.0) p = p_vector(omega);

  Eigen::MatrixXcd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double area = a.disk(static_cast<std::size_t>(i)).area();
    const double dcoef = a.vb() * a.vb() / (4.0 * kB1 * area);
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx q = Q_(i, j);
      if (p.size()) q += log_ratio / (2.0 * kPi) * I_(j) * p(i);
      b(i, j) = I_(j) * row_common - S_(i, j) * w2 / (4.0 * kB1) - dcoef * q * delta;
    }
  }
  return b;
}

cplx AsymptoticSystem::scaled_determinant(cplx omega, double delta) const {
  Eigen::MatrixXcd b = b_matrix(omega, delta);
  const double d = delta > 0.0 ? delta : 1.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const double area = array_->disk(static_cast<std::size_t>(i)).area();
    b.row(i) *= 4.0 * std::abs(kB1) * area / (array_->vb() * array_->vb() * d);
  }
  return b.partialPivLu().determinant();
}

std::vector<cplx> AsymptoticSystem::linearised_seeds(double delta, int iterations) const {
  const ResonatorArray& a = *array_;
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  const cplx c_coef = 1.0 + kC1 / kB1 - std::log(a.vb());
  Eigen::MatrixXcd e(n, n), f(n, n), g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double area = a.disk(static_cast<std::size_t>(i)).area();
    for (Eigen::Index j = 0; j < n; ++j) {
      e(i, j) = I_(j);
      f(i, j) = I_(j) * c_coef - S_(i, j) / (4.0 * kB1);
      g(i, j) = a.vb() * a.vb() * Q_(i, j) / (4.0 * kB1 * area);
    }
  }
  std::vector<cplx> ell(static_cast<std::size_t>(n), std::log(cplx(0.01)));
  std::vector<cplx> roots(static_cast<std::size_t>(n));
  for (int it = 0; it < iterations; ++it) {
    for (Eigen::Index m = 0; m < n; ++m) {
      const Eigen::MatrixXcd lhs = ell[static_cast<std::size_t>(m)] * e + f;
      const Eigen::MatrixXcd op = lhs.partialPivLu().solve(delta * g);
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op, false);
      std::vector<cplx> om;
      for (Eigen::Index k = 0; k < n; ++k) {
        cplx w = std::sqrt(es.eigenvalues()(k));
        if (w.real() < 0.0) w = -w;
        om.push_back(w);
      }
      std::sort(om.begin(), om.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
      });
      roots[static_cast<std::size_t>(m)] = om[static_cast<std::size_t>(m)];
    }
    double change = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
      const cplx r = roots[static_cast<std::size_t>(m)];
      if (r == cplx(0.0)) continue;
      const cplx next = std::log(r);
      change = std::max(change, std::abs(next - ell[static_cast<std::size_t>(m)]));
      ell[static_cast<std::size_t>(m)] = next;
    }
    if (change < 1e-12) break;
  }
  return roots;
}

cplx b_entry(const ResonatorArray& array, const BoundaryDensity& phi_j, std::size_t i, cplx omega,
             double delta) {
  if (i >= array.size()) throw std::out_of_range("disk index out of range");
  if (phi_j.num_disks() != array.size()) throw DomainError("density does not match the array");
  if (omega == cplx(0.0)) throw DomainError("B is undefined at omega = 0");
  const int order = phi_j.order();
  const Eigen::MatrixXcd laplace = laplace_slp_matrix(array, order).matrix;
  const Eigen::VectorXcd sphi = laplace * phi_j.coefficients();
  const cplx total = total_boundary_integral(array, phi_j);
  const cplx on_i = boundary_integral(array, phi_j, i);
  const cplx trace = sphi(flat0(i, order));
  const cplx w2 = omega * omega;
  cplx q = on_i;
  const double log_ratio = std::log(array.v() / array.vb());
  if (log_ratio != 0.0 && delta != 0.0) {
    const cplx k = array.exterior_wavenumber(omega);
    const Eigen::MatrixXcd shat = shat_from_laplace(array, laplace, order, k);
    const Eigen::VectorXcd chi = indicator_columns(array.size(), order).rowwise().sum();
    const BoundaryDensity y(array.size(), order, shat.partialPivLu().solve(chi));
    q += log_ratio / (2.0 * kPi) * total * boundary_integral(array, y, i);
  }
  return total * (w2 * std::log(omega) + (1.0 + kC1 / kB1 - std::log(array.vb())) * w2) -
         trace * w2 / (4.0 * kB1) -
         array.vb() * array.vb() / (4.0 * kB1 * array.disk(i).area()) * q * delta;
}

namespace {

bool in_window(cplx w, const ResonanceSearch& s) {
  return w.real() > 0.0 && w.real() <= s.omega_max && w.imag() <= 0.0 && w.imag() > s.min_imag;
}

bool is_duplicate(cplx w, const std::vector<cplx>& found) {
  for (cplx r : found) {
    if (std::abs(w - r) <= 1e-8 * std::abs(r)) return true;
  }
  return false;
}

}  // namespace

std::vector<Resonance> find_resonances_asymptotic(const AsymptoticSystem& system, double delta,
                                                  const ResonanceSearch& search,
                                                  ResonanceDiagnostics* diagnostics) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(search.omega_min > 0.0) || !(search.omega_max > search.omega_min) ||
      search.points_per_decade < 1) {
    throw DomainError("invalid resonance search window");
  }
  const std::size_t n = system.array().size();
  auto det = [&](cplx w) { return system.scaled_determinant(w, delta); };

  const double decades = std::log10(search.omega_max / search.omega_min);
  const std::size_t count =
      static_cast<std::size_t>(std::ceil(decades * search.points_per_decade)) + 1;
  std::vector<double> grid(count), mag(count);
  for (std::size_t s = 0; s < count; ++s) {
    grid[s] = search.omega_min * std::pow(10.0, decades * double(s) / double(count - 1));
    mag[s] = std::abs(det(grid[s]));
  }
  std::vector<double> sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + count / 2, sorted.end());
  const double median = sorted[count / 2];

  std::vector<std::size_t> minima;
  for (std::size_t s = 1; s + 1 < count; ++s) {
    if (mag[s] < mag[s - 1] && mag[s] <= mag[s + 1]) minima.push_back(s);
  }

  ResonanceDiagnostics diag;
  diag.scan_points = count;
  diag.scan_minima = minima.size();
  diag.scan_median = median;

  MullerOptions opts;
  opts.tolerance = search.tolerance;
  std::vector<cplx> found;
  const std::vector<cplx> none;
  auto polish = [&](cplx seed, double h, bool deflate) {
    if (found.size() >= n) return false;
    const MullerResult r = muller(det, seed * (1.0 - h), seed * (1.0 + h),
                                  seed * cplx(1.0, -0.5 * h), opts, deflate ? found : none);
    if (!r.converged || !in_window(r.root, search) || is_duplicate(r.root, found)) return false;
    found.push_back(r.root);
    return true;
  };
  // The linearised seeds sit within O(δ ω² ln ω) of the roots, so they are
  // polished first and without deflation. Scan minima catch anything the
  // linearisation misplaces; for long arrays the dips of |det B| on the real
  // axis are much narrower than the scan step, so the scan alone is not enough.
  for (cplx seed : system.linearised_seeds(delta)) {
    if (seed.real() <= 0.0) continue;
    if (polish(seed, 1e-3, false)) ++diag.from_linearised;
  }
  const double step = std::pow(10.0, 1.0 / search.points_per_decade) - 1.0;
  for (std::size_t s : minima) {
    if (polish(grid[s], step, true)) ++diag.from_scan;
  }
  if (diagnostics) *diagnostics = diag;
  if (found.size() < n) {
    std::ostringstream os;
    os << "found " << found.size() << " of " << n << " resonances (" << diag.scan_points
       << " scan points, " << diag.scan_minima << " scan minima, " << diag.from_scan
       << " polished from the scan, " << diag.from_linearised << " from linearised seeds)";
    throw SearchError(os.str());
  }
  std::sort(found.begin(), found.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  std::vector<Resonance> out;
  for (cplx w : found) {
    Resonance r;
    r.omega = w;
    r.method = Resonance::Method::kAsymptotic;
    r.residual = std::abs(det(w));
    r.relative_residual = median > 0.0 ? r.residual / median : r.residual;
    out.push_back(r);
  }
  return out;
}

std::vector<Resonance> find_resonances_asymptotic(const ResonatorArray& array, int order,
                                                  const ResonanceSearch& search) {
  const KernelBasis basis = kernel_basis(array, 1.0, order);
  const AsymptoticSystem system(array, basis);
  return find_resonances_asymptotic(system, array.delta(), search);
}

std::vector<cplx> Eigenmode::field(const ResonatorArray& array, const std::vector<Vec2>& points,
                                   BoundaryPolicy policy) const {
  return evaluate_field(array, phi, psi, resonance.omega, nullptr, points, policy);
}

void normalize_mode(const ResonatorArray& array, Eigenmode& mode, const DiskQuadrature& quad) {
  InteriorExpansion ex = interior_expansion(array, mode.phi, mode.resonance.omega, quad.angular);
  const SampledInterior s = sample_interior(array, ex, quad.radial);
  const double norm = std::sqrt(std::max(0.0, l2_inner_product(s, s).real()));
  if (!(norm > 0.0)) throw NumericalError("eigenmode has zero L2 norm");
  const cplx centre = ex.value(array, 0, array.disk(0).center);
  const cplx phase = std::abs(centre) > 0.0 ? std::conj(centre) / std::abs(centre) : cplx(1.0);
  const cplx scale = phase / norm;

  mode.phi *= scale;
  mode.psi *= scale;
  if (mode.a.size()) mode.a *= scale;
  for (auto& t : ex.trace) t *= scale;
  mode.normalization.raw_norm = norm;
  mode.normalization.scale = scale;

  double worst = 0.0;
  const int samples = 64;
  for (std::size_t i = 0; i < array.size(); ++i) {
    std::vector<double> mags;
    double mean = 0.0;
    for (int a = 0; a < samples; ++a) {
      const double t = 2.0 * kPi * a / samples;
      cplx v = 0.0;
      for (int m = -ex.order; m <= ex.order; ++m) v += ex.trace[i](m + ex.order) * std::polar(1.0, m * t);
      mags.push_back(std::abs(v));
      mean += std::abs(v) / samples;
    }
    double var = 0.0;
    for (double m : mags) var += (m - mean) * (m - mean) / samples;
    if (mean > 0.0) worst = std::max(worst, std::sqrt(var) / mean);
  }
  mode.normalization.max_disk_variation = worst;
  mode.interior = std::move(ex);
}

Eigenmode eigenmode_asymptotic(const AsymptoticSystem& system, const Resonance& resonance,
                               double delta, const DiskQuadrature& quadrature) {
  const ResonatorArray& array = system.array();
  const Eigen::MatrixXcd b = system.b_matrix(resonance.omega, delta);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index n = sv.size();
  if (n >= 2 && sv(n - 2) < 1e-8 * sv(0)) {
    std::ostringstream os;
    os << "two singular values of B below tolerance at omega = " << resonance.omega << ": "
       << sv(n - 2) << " and " << sv(n - 1) << " (sigma_max " << sv(0) << ")";
    throw DegeneracyError(os.str());
  }
  Eigenmode mode;
  mode.resonance = resonance;
  mode.a = svd.matrixV().col(n - 1);
  const int order = system.basis().order;
  mode.phi = BoundaryDensity(array.size(), order, system.basis().matrix() * mode.a);
  mode.psi = mode.phi;
  const double log_ratio = std::log(array.v() / array.vb());
  if (log_ratio != 0.0) {
    mode.psi += (log_ratio / (2.0 * kPi) * total_boundary_integral(array, mode.phi)) *
                system.shat_inverse_chi(resonance.omega);
  }
  normalize_mode(array, mode, quadrature);
  return mode;
}

}  // namespace cochlea
