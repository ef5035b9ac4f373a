#include "hurwitz/specfun/bessel.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace hurwitz::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kAsymptoticRadius = 12.0;
constexpr double kIntegralImag = 1.0;
constexpr cplx kI(0.0, 1.0);

void check_domain(double nu, cplx z) {
  if (!(nu >= 0.0)) fail(ErrorCode::DomainError, "Bessel order must be real and >= 0");
  if (z == cplx(0.0)) fail(ErrorCode::DomainError, "Bessel argument z = 0");
  if (z.imag() < -1e-14 * std::abs(z)) fail(ErrorCode::DomainError, "Bessel argument below real axis");
}

Scaled sum_scaled(const Scaled& a, const Scaled& b) {
  const double la = std::log(std::abs(a.mantissa)) + a.log_scale.real();
  const double lb = std::log(std::abs(b.mantissa)) + b.log_scale.real();
  const cplx target = (a.mantissa == cplx(0.0) || (b.mantissa != cplx(0.0) && lb > la)) ? b.log_scale : a.log_scale;
  return {a.rescaled(target).mantissa + b.rescaled(target).mantissa, target};
}

double log_abs(const Scaled& s) { return std::log(std::abs(s.mantissa)) + s.log_scale.real(); }

// J_nu(z) = (z/2)^nu / Gamma(nu+1) * sum_k (-z^2/4)^k / (k! (nu+1)_k)
Scaled series_j(double nu, cplx z) {
  const cplx q = -z * z / 4.0;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(z)) break;
  }
  return {sum, nu * std::log(z / 2.0) - std::lgamma(nu + 1.0)};
}

// Y_n for integer n >= 0, scaled by (z/2)^{-n} (n-1)! when n >= 1.
Scaled series_y_integer(int n, cplx z) {
  const cplx lz = std::log(z / 2.0);
  const cplx q = -z * z / 4.0;
  const Scaled jn = series_j(n, z);
  // sum_k (psi(k+1) + psi(n+k+1)) q^k / (k! (n+k)!) * n!
  double psi_k = -kEulerGamma, psi_nk = -kEulerGamma;
  for (int j = 1; j <= n; ++j) psi_nk += 1.0 / j;
  cplx term = 1.0, sum = psi_k + psi_nk;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    psi_k += 1.0 / k;
    psi_nk += 1.0 / (n + k);
    const cplx t = term * (psi_k + psi_nk);
    sum += t;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(z)) break;
  }
  if (n == 0) {
    const cplx m = (2.0 / kPi) * lz * jn.mantissa - sum / kPi;
    return {m, 0.0};
  }
  const cplx scale = -static_cast<double>(n) * lz + std::lgamma(static_cast<double>(n));
  cplx finite = 0.0, a = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) a *= (z * z / 4.0) / (static_cast<double>(k) * (n - k));
    finite += a;
  }
  const cplx rel = std::exp(2.0 * n * lz - std::lgamma(static_cast<double>(n)) - std::lgamma(n + 1.0));
  const cplx m = -finite / kPi + rel * ((2.0 / kPi) * lz * jn.mantissa - sum / kPi);
  return {m, scale};
}

// Y_nu for nu away from integers: J_nu cot(nu pi) - Gamma(nu)/pi (z/2)^{-nu} S_-.
Scaled series_y_fractional(double nu, cplx z) {
  const cplx lz = std::log(z / 2.0);
  const cplx q = -z * z / 4.0;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k - nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(z) && k > nu) break;
  }
  const Scaled j = series_j(nu, z);
  const cplx sy = -nu * lz + std::lgamma(nu);
  const double cot = std::cos(nu * kPi) / std::sin(nu * kPi);
  const cplx m = -sum / kPi + cot * j.rescaled(sy).mantissa;
  return {m, sy};
}

Scaled series_y(double nu, cplx z, BesselFlags* flags) {
  const double m = std::round(nu);
  const double d = nu - m;
  if (d == 0.0) return series_y_integer(static_cast<int>(m), z);
  if (std::abs(d) > 1e-6) return series_y_fractional(nu, z);
  // Second-order Taylor expansion in the order around the integer m.
  if (flags) flags->near_integer_fallback = true;
  const double delta = 1e-3;
  const Scaled ym = series_y_integer(static_cast<int>(m), z);
  const Scaled yp = series_y_fractional(m + delta, z);
  Scaled ylo;
  if (m == 0.0) {
    const Scaled yd = series_y_fractional(delta, z);
    const Scaled jd = series_j(delta, z);
    ylo = sum_scaled({std::cos(delta * kPi) * yd.mantissa, yd.log_scale},
                     {std::sin(delta * kPi) * jd.mantissa, jd.log_scale});
  } else {
    ylo = series_y_fractional(m - delta, z);
  }
  const cplx s = ym.log_scale;
  const cplx a = ym.mantissa, b = yp.rescaled(s).mantissa, c = ylo.rescaled(s).mantissa;
  const cplx d1 = (b - c) / (2.0 * delta);
  const cplx d2 = (b - 2.0 * a + c) / (delta * delta);
  return {a + d * d1 + 0.5 * d * d * d2, s};
}

// Large-argument expansions at orders mu and mu+1 sharing one log scale.
std::pair<Scaled, Scaled> asymptotic_pair(double mu, cplx z, int kind) {
  const double sgn = kind == 1 ? 1.0 : -1.0;
  const cplx omega = z - mu * kPi / 2.0 - kPi / 4.0;
  const cplx pref = std::sqrt(2.0 / (kPi * z));
  auto series = [&](double nu) {
    cplx a = 1.0, sum = 1.0;
    double last = 1.0;
    const cplx step = sgn * kI / z;
    cplx pw = 1.0;
    for (int k = 1; k < 80; ++k) {
      a *= (4.0 * nu * nu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k);
      pw *= step;
      const cplx t = a * pw;
      const double mag = std::abs(t);
      if (mag > last && k > nu) break;
      sum += t;
      last = mag;
      if (mag < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  };
  const cplx scale = sgn * kI * omega;
  const Scaled h0{pref * series(mu), scale};
  const Scaled h1{pref * series(mu + 1.0) * (-sgn * kI), scale};
  return {h0, h1};
}

// K_nu(w) = int_0^inf exp(-w cosh t) cosh(nu t) dt, Re w > 0, by the trapezoid rule.
cplx k_integral(double nu, cplx w) {
  const double strip = 0.5 * std::atan2(w.real(), std::abs(w.imag()));
  const double h = std::min(0.1, 2.0 * kPi * strip / 40.0);
  cplx sum = 0.5;
  const double base = w.real();
  for (int k = 1; k < 200000; ++k) {
    const double t = k * h;
    const cplx f = std::exp(-w * std::cosh(t) + w) * std::cosh(nu * t);
    sum += f;
    if (base * (std::cosh(t) - 1.0) - nu * t > 45.0) break;
  }
  return sum * h * std::exp(-w);
}

std::pair<Scaled, Scaled> integral_pair(double mu, cplx z) {
  const cplx w = -kI * z;
  auto h = [&](double nu) {
    return 2.0 / (kPi * kI) * std::exp(-kI * nu * kPi / 2.0) * k_integral(nu, w);
  };
  return {Scaled{h(mu), 0.0}, Scaled{h(mu + 1.0), 0.0}};
}

// Forward recurrence C_{nu+1} = (2 nu / z) C_nu - C_{nu-1}, renormalized.
std::pair<Scaled, Scaled> recur(std::pair<Scaled, Scaled> p, double mu, cplx z, int steps) {
  cplx scale = p.first.log_scale;
  cplx a = p.first.mantissa, b = p.second.rescaled(scale).mantissa;
  for (int s = 0; s < steps; ++s) {
    const double nu = mu + s + 1.0;
    const cplx c = (2.0 * nu / z) * b - a;
    a = b;
    b = c;
    const double mag = std::abs(b);
    if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
      a /= mag;
      b /= mag;
      scale += std::log(mag);
    }
  }
  return {Scaled{a, scale}, Scaled{b, scale}};
}

std::pair<Scaled, Scaled> hankel_pair(double nu, cplx z, BesselFlags* flags) {
  const double mu = nu - std::floor(nu);
  const int steps = static_cast<int>(std::floor(nu));
  if (std::abs(z) >= kAsymptoticRadius) {
    if (flags) flags->regime = "asymptotic";
    return recur(asymptotic_pair(mu, z, 1), mu, z, steps);
  }
  if (flags) flags->regime = "integral";
  return recur(integral_pair(mu, z), mu, z, steps);
}

bool use_recurrence(cplx z) { return std::abs(z) >= kAsymptoticRadius || z.imag() >= kIntegralImag; }

Scaled series_hankel(double nu, cplx z, BesselFlags* flags) {
  const Scaled j = series_j(nu, z);
  const Scaled y = series_y(nu, z, flags);
  const Scaled h = sum_scaled(j, {kI * y.mantissa, y.log_scale});
  if (flags && log_abs(h) < std::max(log_abs(j), log_abs(y)) + std::log(1e-6)) flags->loss_of_precision = true;
  return h;
}

}  // namespace

cplx Scaled::value() const { return mantissa * std::exp(log_scale); }
cplx Scaled::log() const { return std::log(mantissa) + log_scale; }
Scaled Scaled::rescaled(cplx new_log_scale) const {
  if (mantissa == cplx(0.0)) return {0.0, new_log_scale};
  return {mantissa * std::exp(log_scale - new_log_scale), new_log_scale};
}

cplx ratio(const Scaled& a, const Scaled& b) {
  return a.mantissa / b.mantissa * std::exp(a.log_scale - b.log_scale);
}

Scaled hankel1_scaled(double nu, cplx z, BesselFlags* flags) {
  check_domain(nu, z);
  if (use_recurrence(z)) return hankel_pair(nu, z, flags).first;
  if (flags) flags->regime = "series";
  return series_hankel(nu, z, flags);
}

Scaled bessel_j_scaled(double nu, cplx z, BesselFlags* flags) {
  check_domain(nu, z);
  if (std::abs(z) < kAsymptoticRadius || nu >= std::abs(z)) {
    if (flags) flags->regime = "series";
    if (flags && std::abs(z) >= kAsymptoticRadius && std::abs(z.imag()) > 20.0) flags->loss_of_precision = true;
    return series_j(nu, z);
  }
  if (flags) flags->regime = "asymptotic";
  const double mu = nu - std::floor(nu);
  const int steps = static_cast<int>(std::floor(nu));
  const Scaled h1 = recur(asymptotic_pair(mu, z, 1), mu, z, steps).first;
  const Scaled h2 = recur(asymptotic_pair(mu, z, 2), mu, z, steps).first;
  const Scaled s = sum_scaled(h1, h2);
  return {0.5 * s.mantissa, s.log_scale};
}

Scaled bessel_y_scaled(double nu, cplx z, BesselFlags* flags) {
  check_domain(nu, z);
  if (!use_recurrence(z)) return series_y(nu, z, flags);
  const Scaled h = hankel1_scaled(nu, z, flags);
  const Scaled j = bessel_j_scaled(nu, z, flags);
  const Scaled d = sum_scaled(h, {-j.mantissa, j.log_scale});
  return {-kI * d.mantissa, d.log_scale};
}

cplx hankel1(double nu, cplx z, BesselFlags* flags) { return hankel1_scaled(nu, z, flags).value(); }
cplx bessel_j(double nu, cplx z) { return bessel_j_scaled(nu, z).value(); }
cplx bessel_y(double nu, cplx z) { return bessel_y_scaled(nu, z).value(); }

cplx hankel1_ratio(double nu, cplx z) {
  check_domain(nu, z);
  if (use_recurrence(z)) {
    const auto p = hankel_pair(nu, z, nullptr);
    return ratio(p.second, p.first);
  }
  return ratio(series_hankel(nu + 1.0, z, nullptr), series_hankel(nu, z, nullptr));
}

cplx bessel_j_ratio(double nu, cplx z) {
  return ratio(bessel_j_scaled(nu + 1.0, z), bessel_j_scaled(nu, z));
}

cplx hankel1_prime(double nu, cplx z) {
  const Scaled h = hankel1_scaled(nu, z);
  return h.value() * (nu / z - hankel1_ratio(nu, z));
}

double bessel_regime_overlap(double nu, cplx z) {
  check_domain(nu, z);
  const double mu = nu - std::floor(nu);
  const int steps = static_cast<int>(std::floor(nu));
  const Scaled s = z.imag() >= kIntegralImag ? recur(integral_pair(mu, z), mu, z, steps).first
                                             : series_hankel(nu, z, nullptr);
  const Scaled a = recur(asymptotic_pair(mu, z, 1), mu, z, steps).first;
  return std::abs(ratio(s, a) - 1.0);
}

}  // namespace hurwitz::specfun
