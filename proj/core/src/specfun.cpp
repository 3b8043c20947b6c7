#include "cochlea/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cochlea/errors.hpp"

namespace cochlea {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesRadius = 8.0;
constexpr double kAsymptoticRadius = 30.0;
constexpr int kMaxSequenceOrder = 160;
constexpr double kRescaleThreshold = 1.0e250;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(cplx value, const char* what, int order, cplx z) {
  if (!finite(value)) {
    throw RangeError(std::string(what) + " overflow at order " + std::to_string(order) +
                     ", z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  }
}

// Ascending series for J_n(z), n >= 0.
cplx j_series(int n, cplx z) {
  const cplx half = 0.5 * z;
  cplx lead = 1.0;
  for (int k = 1; k <= n; ++k) lead *= half / static_cast<double>(k);
  if (lead == 0.0) return 0.0;
  const cplx q = -half * half;
  const double peak = std::abs(half);
  cplx term = lead;
  cplx sum = lead;
  for (int m = 1; m < 400; ++m) {
    term *= q / (static_cast<double>(m) * static_cast<double>(m + n));
    sum += term;
    if (m > peak && std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
  }
  return sum;
}

// Ascending series for Y_0 and Y_1 given J_0 and J_1.
void y01_series(cplx z, cplx j0, cplx j1, cplx& y0, cplx& y1) {
  const cplx half = 0.5 * z;
  const cplx q = -half * half;
  const cplx log_term = std::log(half) + kEulerGamma;
  const double peak = std::abs(half);

  // Y_0 = (2/π)(ln(z/2)+γ) J_0 − (2/π) Σ_{k≥1} H_k q^k / (k!)^2
  cplx term0 = 1.0;
  cplx sum0 = 0.0;
  // Y_1 tail: Σ_{k≥0} (H_k + H_{k+1}) q^k / (k!(k+1)!)
  cplx term1 = 1.0;
  cplx sum1 = 1.0;  // k = 0 term: (H_0 + H_1) = 1
  double harmonic = 0.0;
  for (int k = 1; k < 400; ++k) {
    const double dk = static_cast<double>(k);
    harmonic += 1.0 / dk;
    term0 *= q / (dk * dk);
    term1 *= q / (dk * (dk + 1.0));
    const cplx add0 = harmonic * term0;
    const cplx add1 = (2.0 * harmonic + 1.0 / (dk + 1.0)) * term1;
    sum0 += add0;
    sum1 += add1;
    if (k > peak && std::abs(add0) <= 0.25 * kEps * std::abs(sum0) &&
        std::abs(add1) <= 0.25 * kEps * std::abs(sum1)) {
      break;
    }
  }
  y0 = (2.0 / kPi) * (log_term * j0 - sum0);
  y1 = -2.0 / (kPi * z) + (2.0 / kPi) * log_term * j1 - (1.0 / kPi) * half * sum1;
}

// Backward recurrence J_{n-1} = (2n/z) J_n − J_{n+1}; returns unnormalised values
// for orders 0..start together with the even-order normalisation sum.
std::vector<cplx> miller_unnormalised(int max_order, cplx z, cplx& norm_sum) {
  const double az = std::abs(z);
  int start = static_cast<int>(std::max<double>(max_order, az) + 15.0 * std::cbrt(az) + 30.0);
  start += start % 2;
  std::vector<cplx> v(static_cast<std::size_t>(start) + 2, 0.0);
  v[start + 1] = 0.0;
  v[start] = 1.0e-30;
  norm_sum = 0.0;
  for (int n = start; n >= 1; --n) {
    v[n - 1] = (2.0 * n / z) * v[n] - v[n + 1];
    if (std::abs(v[n - 1]) > kRescaleThreshold) {
      for (int m = n - 1; m <= start + 1; ++m) v[m] /= kRescaleThreshold;
      norm_sum /= kRescaleThreshold;
    }
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm_sum += 2.0 * v[n - 1];
  }
  norm_sum += v[0];
  return v;
}

void hankel_asymptotic(double nu, cplx z, cplx& h1, cplx& h2) {
  const double mu = 4.0 * nu * nu;
  const cplx inv = 1.0 / z;
  cplx power = 1.0;
  double coeff = 1.0;
  cplx sum1 = 1.0;
  cplx sum2 = 1.0;
  cplx ik = 1.0;  // i^k
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    coeff *= (mu - odd * odd) / (8.0 * k);
    power *= inv;
    ik *= kI;
    const cplx t = coeff * power;
    const double mag = std::abs(t);
    if (mag > last) break;  // asymptotic series started to diverge
    sum1 += ik * t;
    sum2 += std::conj(ik) * t;
    last = mag;
    if (mag <= 0.25 * kEps) break;
  }
  const cplx phase = z - 0.5 * nu * kPi - 0.25 * kPi;
  const cplx pref = std::sqrt(2.0 / (kPi * z));
  h1 = pref * std::exp(kI * phase) * sum1;
  h2 = pref * std::exp(-kI * phase) * sum2;
}

void check_argument(cplx z) {
  if (!finite(z)) throw RangeError("non-finite Bessel argument");
  if (std::abs(z) > kMaxBesselArgument) {
    throw RangeError("Bessel argument modulus " + std::to_string(std::abs(z)) +
                     " exceeds supported range");
  }
}

void check_order(int order) {
  if (std::abs(order) > kMaxBesselOrder) {
    throw RangeError("Bessel order " + std::to_string(order) + " exceeds supported range");
  }
}

double reflection_sign(int order) { return (order < 0 && (order % 2 != 0)) ? -1.0 : 1.0; }

}  // namespace

void bessel_sequences(int max_order, cplx z, std::vector<cplx>* bessel,
                      std::vector<cplx>* hankel) {
  if (max_order < 0 || max_order > kMaxSequenceOrder) {
    throw RangeError("Bessel sequence order " + std::to_string(max_order) + " out of range");
  }
  check_argument(z);
  const std::size_t count = static_cast<std::size_t>(max_order) + 1;
  const double az = std::abs(z);
  const bool need_h = hankel != nullptr;
  if (need_h && z == 0.0) throw SingularArgumentError("Hankel function evaluated at z = 0");

  std::vector<cplx> j(std::max<std::size_t>(count, 2));
  cplx y0 = 0.0;
  cplx y1 = 0.0;
  // In the asymptotic region H_0, H_1 are formed directly; J + iY cancels
  // when Im z is large and positive.
  bool direct_hankel = false;
  cplx h0 = 0.0;
  cplx h1 = 0.0;

  if (az < kSeriesRadius) {
    for (std::size_t n = 0; n < j.size(); ++n) j[n] = j_series(static_cast<int>(n), z);
    if (need_h) y01_series(z, j[0], j[1], y0, y1);
  } else if (az <= kAsymptoticRadius) {
    cplx norm = 0.0;
    std::vector<cplx> v = miller_unnormalised(max_order + 1, z, norm);
    for (auto& x : v) x /= norm;
    for (std::size_t n = 0; n < j.size(); ++n) j[n] = v[n];
    if (need_h) {
      const cplx log_term = std::log(0.5 * z) + kEulerGamma;
      cplx s0 = 0.0;
      cplx s1 = 0.0;
      const int top = static_cast<int>(v.size()) - 2;
      for (int k = 1; 2 * k + 1 <= top; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s0 += sign * v[2 * k] / static_cast<double>(k);
        s1 += sign * (v[2 * k - 1] - v[2 * k + 1]) / static_cast<double>(k);
      }
      y0 = (2.0 / kPi) * log_term * v[0] - (4.0 / kPi) * s0;
      y1 = -(2.0 / kPi) * v[0] / z + (2.0 / kPi) * log_term * v[1] + (2.0 / kPi) * s1;
    }
  } else {
    cplx h10, h20, h11, h21;
    hankel_asymptotic(0.0, z, h10, h20);
    hankel_asymptotic(1.0, z, h11, h21);
    const cplx j0 = 0.5 * (h10 + h20);
    const cplx j1 = 0.5 * (h11 + h21);
    direct_hankel = true;
    h0 = h10;
    h1 = h11;
    cplx unused = 0.0;
    std::vector<cplx> v = miller_unnormalised(max_order + 1, z, unused);
    const cplx scale = (std::abs(j0) >= std::abs(j1)) ? j0 / v[0] : j1 / v[1];
    for (std::size_t n = 0; n < j.size(); ++n) j[n] = v[n] * scale;
    j[0] = j0;
    j[1] = j1;
  }

  for (std::size_t n = 0; n < count; ++n) require_finite(j[n], "Bessel J", static_cast<int>(n), z);
  if (bessel) bessel->assign(j.begin(), j.begin() + static_cast<std::ptrdiff_t>(count));

  if (need_h) {
    // Forward recurrence is stable for the dominant solution (Y_n, H_n).
    std::vector<cplx> y(std::max<std::size_t>(count, 2));
    y[0] = direct_hankel ? h0 : y0;
    y[1] = direct_hankel ? h1 : y1;
    for (std::size_t n = 1; n + 1 < y.size(); ++n) {
      y[n + 1] = (2.0 * static_cast<double>(n) / z) * y[n] - y[n - 1];
    }
    hankel->resize(count);
    for (std::size_t n = 0; n < count; ++n) {
      (*hankel)[n] = direct_hankel ? y[n] : j[n] + kI * y[n];
      require_finite((*hankel)[n], "Hankel H1", static_cast<int>(n), z);
    }
  }
}

cplx cyl_bessel_j(int order, cplx z, bool derivative) {
  check_order(order);
  check_argument(z);
  const int n = std::abs(order);
  std::vector<cplx> j;
  bessel_sequences(n + 1, z, &j, nullptr);
  cplx value;
  if (!derivative) {
    value = j[n];
  } else {
    value = (n == 0) ? -j[1] : 0.5 * (j[n - 1] - j[n + 1]);
  }
  return reflection_sign(order) * value;
}

cplx cyl_hankel1(int order, cplx z, bool derivative) {
  check_order(order);
  check_argument(z);
  if (z == 0.0) throw SingularArgumentError("Hankel function evaluated at z = 0");
  const int n = std::abs(order);
  std::vector<cplx> h;
  bessel_sequences(n + 1, z, nullptr, &h);
  cplx value;
  if (!derivative) {
    value = h[n];
  } else {
    value = (n == 0) ? -h[1] : 0.5 * (h[n - 1] - h[n + 1]);
  }
  return reflection_sign(order) * value;
}

cplx log_singularity_constant(cplx k) {
  if (k == 0.0) throw DomainError("wavenumber must be nonzero");
  return (std::log(k) + kEulerGamma - std::log(2.0)) / (2.0 * kPi) - 0.25 * kI;
}

cplx fundamental_solution(cplx k, Vec2 x) {
  if (k == 0.0) throw DomainError("wavenumber must be nonzero");
  const double r = x.norm();
  if (r == 0.0) throw SingularArgumentError("fundamental solution evaluated at the origin");
  return -0.25 * kI * cyl_hankel1(0, k * r);
}

cplx fundamental_solution_derivative(cplx k, Vec2 x, Vec2 direction) {
  if (k == 0.0) throw DomainError("wavenumber must be nonzero");
  const double r = x.norm();
  if (r == 0.0) throw SingularArgumentError("fundamental solution evaluated at the origin");
  // ∇Γ = −(i/4) k H_0'(kr) x/r = (i/4) k H_1(kr) x/r
  return 0.25 * kI * k * cyl_hankel1(1, k * r) * (x.dot(direction) / r);
}

}  // namespace cochlea
