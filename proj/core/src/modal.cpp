#include "cochlea/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cochlea/errors.hpp"
#include "cochlea/diagnostics.hpp"
#include "cochlea/fullwave.hpp"
#include "cochlea/parallel.hpp"

namespace cochlea {

namespace {

const InteriorExpansion& expansion_for(const ResonatorArray& array, const Eigenmode& m,
                                       const DiskQuadrature& q, InteriorExpansion& scratch) {
  if (m.interior.trace.size() == array.size() && 2 * m.interior.order + 1 >= q.angular - 1 &&
      2 * m.interior.order + 1 <= q.angular) {
    return m.interior;
  }
  scratch = interior_expansion(array, m.phi, m.resonance.omega, q.angular);
  return scratch;
}

}  // namespace

cplx l2_inner_product(const ResonatorArray& array, const Eigenmode& u, const Eigenmode& v,
                      const DiskQuadrature& quadrature) {
  InteriorExpansion su, sv;
  const SampledInterior a =
      sample_interior(array, expansion_for(array, u, quadrature, su), quadrature.radial);
  const SampledInterior b =
      sample_interior(array, expansion_for(array, v, quadrature, sv), quadrature.radial);
  return l2_inner_product(a, b);
}

namespace {

GramMatrix gram_from_samples(const std::vector<SampledInterior>& s, const DiskQuadrature& q) {
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  if (n == 0) throw DomainError("Gram matrix needs at least one mode");
  GramMatrix g;
  g.quadrature = q;
  g.gamma.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const cplx v = l2_inner_product(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
      g.gamma(i, j) = v;
      g.gamma(j, i) = std::conj(v);
    }
    g.gamma(i, i) = g.gamma(i, i).real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.gamma, Eigen::EigenvaluesOnly);
  g.min_eigenvalue = es.eigenvalues().minCoeff();
  if (!(g.min_eigenvalue > 1e-12)) {
    std::ostringstream os;
    os << "Gram matrix is numerically singular (smallest eigenvalue " << g.min_eigenvalue << ")";
    throw DegeneracyError(os.str());
  }
  return g;
}

std::vector<SampledInterior> sample_modes(const ResonatorArray& array,
                                          const std::vector<Eigenmode>& modes,
                                          const DiskQuadrature& q) {
  std::vector<SampledInterior> s(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    InteriorExpansion scratch;
    s[i] = sample_interior(array, expansion_for(array, modes[i], q, scratch), q.radial);
  }
  return s;
}

}  // namespace

GramMatrix gram_matrix(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                       const DiskQuadrature& quadrature) {
  return gram_from_samples(sample_modes(array, modes, quadrature), quadrature);
}

ModalProjector::ModalProjector(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                               const DiskQuadrature& quadrature)
    : array_(&array), quadrature_(quadrature) {
  samples_ = sample_modes(array, modes, quadrature);
  for (const auto& m : modes) omegas_.push_back(m.resonance.omega);
  gram_ = gram_from_samples(samples_, quadrature);
  conj_gamma_lu_.compute(gram_.gamma.conjugate());
}

SampledInterior ModalProjector::sample(const BoundaryDensity& phi, cplx omega) const {
  return sample_interior(*array_, interior_expansion(*array_, phi, omega, quadrature_.angular),
                         quadrature_.radial);
}

Eigen::VectorXcd ModalProjector::coordinates(const SampledInterior& u) const {
  Eigen::VectorXcd b(static_cast<Eigen::Index>(samples_.size()));
  for (std::size_t n = 0; n < samples_.size(); ++n) {
    b(static_cast<Eigen::Index>(n)) = l2_inner_product(u, samples_[n]);
  }
  return conj_gamma_lu_.solve(b);
}

Eigen::VectorXcd ModalProjector::alphas(const SampledInterior& u, double omega) const {
  Eigen::VectorXcd c = coordinates(u);
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    c(n) *= (omega - omegas_[static_cast<std::size_t>(n)]) / kI;
  }
  return c;
}

ModalDecomposition decompose(const ResonatorArray& array, const ModalProjector& projector,
                             const IncidentWave& incident, const std::vector<double>& omega_grid,
                             int order) {
  for (std::size_t g = 1; g < omega_grid.size(); ++g) {
    if (!(omega_grid[g] > omega_grid[g - 1])) throw DomainError("omega grid must be increasing");
  }
  const std::size_t n = projector.size();
  ModalDecomposition out;
  out.omegas = omega_grid;
  out.alphas.resize(static_cast<Eigen::Index>(omega_grid.size()), static_cast<Eigen::Index>(n));
  out.coefficients.resize(static_cast<Eigen::Index>(n));
  const double delta = array.delta();

  parallel_for(omega_grid.size() + n, [&](std::size_t task) {
    if (task < omega_grid.size()) {
      const double w = omega_grid[task];
      const ScatterSolution sol = scatter(array, w, delta, incident, order);
      out.alphas.row(static_cast<Eigen::Index>(task)) =
          projector.alphas(projector.sample(sol.phi, w), w).transpose();
    } else {
      // α_n(ω_n) is taken on the real axis at Re ω_n.
      const std::size_t m = task - omega_grid.size();
      const double w = projector.omegas()[m].real();
      const ScatterSolution sol = scatter(array, w, delta, incident, order);
      out.coefficients(static_cast<Eigen::Index>(m)) =
          projector.alphas(projector.sample(sol.phi, w), w)(static_cast<Eigen::Index>(m));
    }
  });

  if (!omega_grid.empty()) {
    for (cplx wn : projector.omegas()) {
      if (wn.real() < omega_grid.front() || wn.real() > omega_grid.back()) continue;
      const auto it = std::lower_bound(omega_grid.begin(), omega_grid.end(), wn.real());
      const double spacing = it == omega_grid.begin() ? 0.0 : *it - *(it - 1);
      if (spacing > 0.0 && spacing > 10.0 * std::abs(wn.imag()) &&
          spacing > 0.05 * wn.real()) {
        std::ostringstream os;
        os << "omega grid spacing " << spacing << " near Re omega_n = " << wn.real()
           << " is too coarse to resolve the resonance";
        warn(os.str());
      }
    }
  }
  return out;
}

Eigen::MatrixXcd carrier_weights(const ResonatorArray& array, const ModalProjector& projector,
                                 const IncidentWave& family, const std::vector<double>& carriers,
                                 int order) {
  const std::size_t n = projector.size();
  IncidentWave unit = family;
  unit.kind = IncidentWave::Kind::kPlaneWave;
  unit.amplitude = 1.0;
  Eigen::VectorXcd base(static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t m) {
    const double w = projector.omegas()[m].real();
    const ScatterSolution sol = scatter(array, w, array.delta(), unit, order);
    base(static_cast<Eigen::Index>(m)) =
        projector.alphas(projector.sample(sol.phi, w), w)(static_cast<Eigen::Index>(m));
  });
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(carriers.size()), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < carriers.size(); ++c) {
    IncidentWave inc = family;
    inc.omega_in = carriers[c];
    for (std::size_t m = 0; m < n; ++m) {
      const double w = projector.omegas()[m].real();
      out(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(m)) =
          base(static_cast<Eigen::Index>(m)) * inc.spectrum(w);
    }
  }
  return out;
}

Eigen::MatrixXcd mode_samples(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                              const std::vector<Vec2>& points) {
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(points.size()),
                     static_cast<Eigen::Index>(modes.size()));
  for (std::size_t n = 0; n < modes.size(); ++n) {
    const std::vector<cplx> v = modes[n].field(array, points, BoundaryPolicy::kInterior);
    for (std::size_t p = 0; p < points.size(); ++p) {
      u(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n)) = v[p];
    }
  }
  return u;
}

namespace {

Eigen::MatrixXcd synthesise(const Eigen::MatrixXcd& u, const std::vector<cplx>& omegas,
                            const Eigen::VectorXcd& coefficients, const std::vector<double>& times) {
  Eigen::MatrixXcd p(static_cast<Eigen::Index>(times.size()), u.rows());
  for (std::size_t t = 0; t < times.size(); ++t) {
    Eigen::VectorXcd w(coefficients.size());
    for (Eigen::Index n = 0; n < coefficients.size(); ++n) {
      w(n) = coefficients(n) * std::exp(-kI * omegas[static_cast<std::size_t>(n)] * times[t]);
    }
    p.row(static_cast<Eigen::Index>(t)) = (u * w).transpose();
  }
  return p;
}

std::vector<cplx> mode_omegas(const std::vector<Eigenmode>& modes) {
  std::vector<cplx> w;
  for (const auto& m : modes) w.push_back(m.resonance.omega);
  return w;
}

}  // namespace

Eigen::MatrixXcd reconstruct_time(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                                  const Eigen::VectorXcd& coefficients,
                                  const std::vector<double>& times, const std::vector<Vec2>& points) {
  if (coefficients.size() != static_cast<Eigen::Index>(modes.size())) {
    throw DomainError("one coefficient per mode is required");
  }
  return synthesise(mode_samples(array, modes, points), mode_omegas(modes), coefficients, times);
}

Eigen::VectorXcd uniform_excitation(std::size_t modes) {
  return Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(modes), kI);
}

std::vector<double> line_grid(const ResonatorArray& array, std::size_t count, double margin) {
  if (count < 2) throw DomainError("line grid needs at least two points");
  const double len = array.length();
  const double a = array.left_edge() - margin * len;
  const double b = array.right_edge() + margin * len;
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = a + (b - a) * double(i) / double(count - 1);
  return x;
}

SpaceTimeField travelling_wave(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                               const Eigen::VectorXcd& coefficients, const std::vector<double>& x,
                               const std::vector<double>& times) {
  std::vector<Vec2> pts;
  for (double xi : x) pts.push_back({xi, 0.0});
  const Eigen::MatrixXcd p = reconstruct_time(array, modes, coefficients, times, pts);
  SpaceTimeField f;
  f.x = x;
  f.t = times;
  f.pressure = p.real();
  f.envelope = p.cwiseAbs();
  std::vector<double> edges;
  for (std::size_t i = 0; i + 1 < array.size(); ++i) {
    const Disk& a = array.disk(i);
    const Disk& b = array.disk(i + 1);
    edges.push_back(0.5 * (a.center.x + a.radius + b.center.x - b.radius));
  }
  for (Eigen::Index t = 0; t < p.rows(); ++t) {
    Eigen::Index arg = 0;
    const double amp = f.pressure.row(t).cwiseAbs().maxCoeff(&arg);
    const double xp = x.empty() ? 0.0 : x[static_cast<std::size_t>(arg)];
    f.peak_x.push_back(xp);
    f.amplitude.push_back(amp);
    f.peak_resonator.push_back(static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), xp) - edges.begin()));
  }
  return f;
}

double rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw DomainError("rank correlation needs paired data");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t s = 0; s < idx.size();) {
      std::size_t e = s;
      while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[s]]) ++e;
      const double avg = 0.5 * double(s + e);
      for (std::size_t k = s; k <= e; ++k) r[idx[k]] = avg;
      s = e + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return (saa > 0.0 && sbb > 0.0) ? sab / std::sqrt(saa * sbb) : 0.0;
}

TonotopicFit tonotopic_fit(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                           const std::vector<double>& line, const Exclusion& exclusion) {
  const std::size_t n = modes.size();
  std::vector<Vec2> pts;
  for (double x : line) pts.push_back({x, 0.0});
  const Eigen::MatrixXcd u = mode_samples(array, modes, pts);

  TonotopicFit out;
  out.excluded.assign(n, false);
  for (std::size_t m = 0; m < n; ++m) {
    Eigen::Index arg = 0;
    u.col(static_cast<Eigen::Index>(m)).cwiseAbs().maxCoeff(&arg);
    out.x_peak.push_back(line[static_cast<std::size_t>(arg)]);
    out.re_omega.push_back(modes[m].resonance.omega.real());
  }

  if (!exclusion.indices.empty() || !exclusion.automatic) {
    for (std::size_t i : exclusion.indices) {
      if (i >= n) throw DomainError("excluded mode index out of range");
      out.excluded[i] = true;
    }
  } else {
    // Walk from the highest frequency down; once x_peak stops increasing,
    // every lower-frequency mode is part of the excluded tail.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return out.re_omega[a] > out.re_omega[b]; });
    bool broken = false;
    for (std::size_t s = 1; s < n; ++s) {
      if (!broken && !(out.x_peak[order[s]] > out.x_peak[order[s - 1]])) broken = true;
      if (broken) out.excluded[order[s]] = true;
    }
  }

  std::vector<double> xs, ys;
  for (std::size_t m = 0; m < n; ++m) {
    if (out.excluded[m]) continue;
    xs.push_back(out.x_peak[m]);
    ys.push_back(out.re_omega[m]);
  }
  if (xs.size() < 4) {
    throw FitError("only " + std::to_string(xs.size()) +
                   " modes remain after exclusion; at least 4 are needed");
  }
  out.fit = fit_exponential(xs, ys);
  out.rank_correlation = rank_correlation(xs, ys);
  return out;
}

}  // namespace cochlea
