#include "hurwitz/cone.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hurwitz/specfun/bessel.hpp"

namespace hurwitz::cone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta2 = kPi * kPi / 6.0;

cplx root_lambda(double lambda_sq) {
  if (lambda_sq == 0.0) fail(ErrorCode::DomainError, "lambda^2 = 0 is the threshold, use the zero spectrum");
  return lambda_sq < 0.0 ? cplx(0.0, std::sqrt(-lambda_sq)) : cplx(std::sqrt(lambda_sq), 0.0);
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

double ConeCircle::order(int n) const { return std::abs(static_cast<double>(n)) / (k * R); }

void ConeCircle::validate() const {
  if (k < 1) fail(ErrorCode::InvalidInput, "cone order k must be >= 1");
  if (!(R > 0.0)) fail(ErrorCode::InvalidInput, "cone radius R must be > 0");
}

cplx dtn_exterior_eigenvalue(int n, const ConeCircle& c, cplx lambda) {
  c.validate();
  if (lambda == cplx(0.0)) fail(ErrorCode::DomainError, "lambda = 0");
  const double nu = c.order(n);
  const cplx z = lambda * c.R;
  const specfun::Scaled h = specfun::hankel1_scaled(nu, z);
  if (h.mantissa == cplx(0.0)) fail(ErrorCode::HankelZero, "H^(1) vanishes at lambda R");
  // -lambda H'(z)/H(z) with H' = (nu/z) H - H_{nu+1}
  const cplx mu = -nu / c.R + lambda * specfun::hankel1_ratio(nu, z);
  if (!finite(mu)) fail(ErrorCode::HankelZero, "H^(1) ratio is not finite");
  return mu;
}

cplx dtn_interior_eigenvalue(int n, const ConeCircle& c, cplx lambda) {
  c.validate();
  if (lambda == cplx(0.0)) return c.order(n) / c.R;
  const double nu = c.order(n);
  const cplx mu = nu / c.R - lambda * specfun::bessel_j_ratio(nu, lambda * c.R);
  if (!finite(mu)) fail(ErrorCode::DomainError, "J_nu vanishes at lambda R (interior Dirichlet eigenvalue)");
  return mu;
}

cplx jump_eigenvalue(int n, const ConeCircle& c, cplx lambda) {
  return dtn_exterior_eigenvalue(n, c, lambda) + dtn_interior_eigenvalue(n, c, lambda);
}

ZeroSpectrum dtn_zero_spectrum(const ConeCircle& c, int nmax) {
  c.validate();
  ZeroSpectrum s;
  for (int n = 0; n <= nmax; ++n) {
    s.values.push_back(n / (c.k * c.R * c.R));
    s.multiplicities.push_back(n == 0 ? 1 : 2);
  }
  return s;
}

double zeta_det_linear_family(double a) {
  const double zeta0 = -0.5;
  const double zeta_prime0 = -0.5 * std::log(2.0 * kPi);
  const double family_zeta_prime0 = 2.0 * (-std::log(a) * zeta0 + zeta_prime0);
  return std::exp(-family_zeta_prime0);
}

double detstar_N0_model(const ConeCircle& c, Family family) {
  c.validate();
  const double a = (family == Family::Exterior ? 1.0 : 2.0) / (c.k * c.R * c.R);
  return zeta_det_linear_family(a);
}

DetResult detzeta_N_model(const ConeCircle& c, double lambda_sq, double tol) {
  c.validate();
  const cplx lambda = root_lambda(lambda_sq);
  const double a = 2.0 / (c.k * c.R * c.R);
  const double c2 = -lambda_sq * c.k * c.k * std::pow(c.R, 4) / 2.0;
  DetResult r;
  const cplx mu0 = jump_eigenvalue(0, c, lambda);
  r.log_mu0 = std::log(mu0);
  cplx sum = 0.0, prev = 0.0;
  int n = 1, target = 64;
  double max_phase = 0.0;
  for (;;) {
    for (; n <= target; ++n) {
      const cplx mu = jump_eigenvalue(n, c, lambda);
      const cplx lg = std::log(mu / (a * n));
      max_phase = std::max(max_phase, std::abs(lg.imag()));
      sum += 2.0 * (lg - c2 / (static_cast<double>(n) * n));
      if (n == target) r.tail_residual = std::abs(lg - c2 / (static_cast<double>(n) * n));
    }
    r.certificate = std::abs(sum - prev);
    if (target > 64 && r.certificate < tol) break;
    if (target >= (1 << 14)) break;
    prev = sum;
    target *= 2;
  }
  // the subtracted model must capture the leading 1/n^2 behaviour
  const double nn = static_cast<double>(target);
  if (r.tail_residual > 0.5 * std::abs(c2) / (nn * nn) + 1e-12)
    fail(ErrorCode::TailModelMismatch, "mode tail deviates from the 1/n^2 model");
  if (max_phase > kPi / 2.0) fail(ErrorCode::PhaseUnwrappingFailure, "mode phase exceeds pi/2");
  const cplx logdet = r.log_mu0 + std::log(kPi * c.k * c.R * c.R) + sum + 2.0 * c2 * kZeta2;
  r.log_det = logdet.real();
  r.phase = logdet.imag();
  r.modes = target;
  return r;
}

Mu0Fit mu0_asymptotic_fit(const ConeCircle& c, const std::vector<double>& t) {
  c.validate();
  const int m = static_cast<int>(t.size());
  if (m < 6) fail(ErrorCode::FitUnstable, "need at least six lambda samples");
  Eigen::MatrixXcd A(m, 3);
  Eigen::VectorXcd y(m);
  Mu0Fit f;
  double tmin = t[0];
  for (int j = 0; j < m; ++j) {
    const cplx lambda(0.0, t[j]);
    const cplx L = std::log(lambda);
    const cplx mu = dtn_exterior_eigenvalue(0, c, lambda);
    f.mu0.push_back(mu);
    y(j) = -mu * c.R * L;
    A(j, 0) = 1.0;
    A(j, 1) = 1.0 / L;
    A(j, 2) = 1.0 / (L * L);
    tmin = std::min(tmin, t[j]);
  }
  const Eigen::VectorXcd coef = A.colPivHouseholderQr().solve(y);
  f.fit_residual = (A * coef - y).cwiseAbs().maxCoeff();
  f.leading = coef(0);
  f.subleading = -coef(1);
  const cplx lmin(0.0, tmin);
  f.direct_constant = -1.0 / (c.R * dtn_exterior_eigenvalue(0, c, lmin)) - std::log(lmin);
  const cplx base(std::log(c.R / 2.0), -kPi / 2.0);
  f.printed_candidate = base + kPi * std::numbers::egamma / 2.0;
  f.bessel_candidate = base + std::numbers::egamma;
  f.distance_printed = std::abs(f.direct_constant - f.printed_candidate);
  f.distance_bessel = std::abs(f.direct_constant - f.bessel_candidate);
  f.selects_bessel = f.distance_bessel < f.distance_printed;
  f.leading_residual = std::abs(f.leading - 1.0);
  f.leading_envelope = 1.0 / std::abs(std::log(lmin));
  if (!std::isfinite(f.fit_residual) || f.fit_residual > 1e-2) fail(ErrorCode::FitUnstable, "mu0 regression residual too large");
  return f;
}

double spectral_shift(const ConeCircle& c, double lambda_sq) {
  return detzeta_N_model(c, lambda_sq).phase / kPi;
}

double spectral_shift(const std::vector<ConeCircle>& cones, double lambda_sq) {
  double s = 0.0;
  for (const auto& c : cones) s += spectral_shift(c, lambda_sq);
  return s;
}

ShiftFit spectral_shift_asymptotic(const std::vector<ConeCircle>& cones, const std::vector<double>& lambda_sq) {
  const int m = static_cast<int>(lambda_sq.size());
  if (m < 6) fail(ErrorCode::FitUnstable, "need at least six lambda samples");
  ShiftFit f;
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd y(m);
  double smallest = lambda_sq[0];
  int imin = 0;
  for (int j = 0; j < m; ++j) {
    if (!(lambda_sq[j] > 0.0)) fail(ErrorCode::InvalidInput, "spectral shift fit needs lambda^2 > 0");
    const double L = std::log(lambda_sq[j]);
    const double xi = spectral_shift(cones, lambda_sq[j]);
    f.lambda_sq.push_back(lambda_sq[j]);
    f.xi.push_back(xi);
    A(j, 0) = 1.0 / L;
    A(j, 1) = 1.0 / (L * L);
    y(j) = xi;
    if (lambda_sq[j] < smallest) {
      smallest = lambda_sq[j];
      imin = j;
    }
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
  f.fitted_leading = coef(0);
  f.fitted_second = coef(1);
  f.fit_residual = (A * coef - y).cwiseAbs().maxCoeff();
  f.pointwise_leading = f.xi[imin] * std::log(smallest);
  return f;
}

}  // namespace hurwitz::cone
