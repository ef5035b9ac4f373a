#include "hurwitz/variational.hpp"

#include <cmath>
#include <numbers>

namespace hurwitz::variational {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double cut_distance(const HyperellipticCurve& c, int m) {
  const auto& e = c.branch_points();
  if (m < 0 || m >= static_cast<int>(e.size())) fail(ErrorCode::InvalidInput, "branch index out of range");
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(e.size()); ++i)
    if (i != m) d = std::min(d, std::abs(e[i] - e[m]));
  return d;
}

// Trapezoid rule on |x| = r for a matrix-valued integrand, doubling nodes.
template <typename F>
CMatrix circle_matrix(F&& f, double r, int rows, int cols, double tol, int& nodes, double& cert) {
  CMatrix prev = CMatrix::Zero(rows, cols);
  for (int n = 16;; n *= 2) {
    CMatrix s = CMatrix::Zero(rows, cols);
    for (int j = 0; j < n; ++j) {
      const cplx x = r * std::exp(kI * (2.0 * kPi * j / n));
      s += f(x) * (kI * x);
    }
    s *= 2.0 * kPi / n;
    cert = (s - prev).cwiseAbs().maxCoeff();
    nodes = n;
    if ((n > 16 && cert < tol) || n >= 1024) return s;
    prev = s;
  }
}

double log_det_imag(const HyperellipticCurve& c) { return std::log(c.riemann().imag().determinant()); }

}  // namespace

HyperellipticCurve move_branch_point(const HyperellipticCurve& c, int m, cplx dz) {
  if (!c.canonical_marking()) fail(ErrorCode::InvalidInput, "moduli motion needs the canonical marking");
  auto e = c.branch_points();
  if (m < 0 || m >= static_cast<int>(e.size())) fail(ErrorCode::InvalidInput, "branch index out of range");
  e[m] += dz;
  return HyperellipticCurve(e);
}

double contour_radius(const HyperellipticCurve& c, int m) {
  const double d = cut_distance(c, m);
  const double r = std::sqrt(0.1 * d);
  if (r * r >= d) fail(ErrorCode::ContourTooLarge, "contour encloses another branch point");
  return r;
}

RauchResult rauch_check(const HyperellipticCurve& c, int m, double h) {
  const int g = c.genus();
  const Chart ch = c.branch_chart(m);
  RauchResult r;
  r.radius = contour_radius(c, m);
  // v_a v_b / df with df = 2x dx in the branch chart
  auto integrand = [&](cplx x) -> CMatrix {
    const CVector v = c.differentials(ch, x);
    return v * v.transpose() / (2.0 * x);
  };
  r.contour = circle_matrix(integrand, r.radius, g, g, 1e-13, r.nodes, r.certificate);
  r.symmetry = (r.contour - r.contour.transpose()).cwiseAbs().maxCoeff();
  const auto cp = move_branch_point(c, m, h), cm = move_branch_point(c, m, -h);
  r.fd = (cp.B() - cm.B()) / (2.0 * h);
  r.discrepancy = (r.fd - r.contour).cwiseAbs().maxCoeff();
  return r;
}

ImBResult det_imB_derivative(const HyperellipticCurve& c, int m, double h) {
  const int g = c.genus();
  const Chart ch = c.branch_chart(m);
  const Eigen::MatrixXcd yinv = c.riemann().imag_inverse().cast<cplx>();
  const double rad = contour_radius(c, m);
  ImBResult r;
  int nodes = 0;
  double cert = 0.0;
  const CMatrix dB = circle_matrix(
      [&](cplx x) -> CMatrix {
        const CVector v = c.differentials(ch, x);
        return v * v.transpose() / (2.0 * x);
      },
      rad, g, g, 1e-13, nodes, cert);
  r.trace = (dB * yinv).trace() / (2.0 * kI);
  const CMatrix s = circle_matrix(
      [&](cplx x) -> CMatrix {
        const CVector v = c.differentials(ch, x);
        CMatrix out(1, 1);
        out(0, 0) = cplx(v.transpose() * yinv * v) / (2.0 * x);
        return out;
      },
      rad, 1, 1, 1e-13, nodes, r.certificate);
  r.contour = s(0, 0) / (2.0 * kI);
  r.identity = std::abs(r.trace - r.contour);
  const double fxp = log_det_imag(move_branch_point(c, m, h)), fxm = log_det_imag(move_branch_point(c, m, -h));
  const double fyp = log_det_imag(move_branch_point(c, m, kI * h)), fym = log_det_imag(move_branch_point(c, m, -kI * h));
  const double dx = (fxp - fxm) / (2.0 * h), dy = (fyp - fym) / (2.0 * h);
  r.fd = 0.5 * cplx(dx, -dy);
  r.fd_conjugate = 0.5 * cplx(dx, dy);
  r.fd_discrepancy = std::abs(r.fd - r.trace);
  return r;
}

VardwaResult vardwa_rhs(const HyperellipticCurve& c, int m) {
  const Chart ch = c.branch_chart(m);
  const double rad = contour_radius(c, m);
  // S_f = -3/(2x^2) for z = e_m + x^2; df = 2x dx
  auto f = [&](cplx x) {
    const cplx sb = c.bergman_connection(ch, x).value;
    return (sb + 1.5 / (x * x)) / (2.0 * x);
  };
  VardwaResult r;
  r.contour = specfun::circle_integral(f, 0.0, rad, 1e-9, 16, 256);
  r.contour.value *= -1.0 / (12.0 * kPi * kI);
  r.contour.certificate /= 12.0 * kPi;
  r.residue = -c.bergman_connection(ch, 0.0).value / 12.0;
  return r;
}

ContourIntegralResult vardwa_rhs(const Rational& r, cplx w_m, double radius) {
  auto f = [&](cplx w) {
    const auto d = r.derivatives(w, 1);
    return specfun::schwarzian(r, w) / d[1];
  };
  auto res = specfun::circle_integral(f, w_m, radius, 1e-14, 32, 4096);
  res.value /= 12.0 * kPi * kI;
  res.certificate /= 12.0 * kPi;
  return res;
}

VarodinResult varodin_rhs(const HyperellipticCurve& c, int m) {
  const Chart ch = c.branch_chart(m);
  const auto sch = c.schiffer_connection(ch, 0.0);
  VarodinResult r;
  r.varodin = sch.value / 12.0;
  const auto vd = vardwa_rhs(c, m);
  r.vardwa = vd.contour.value;
  const auto ib = det_imB_derivative(c, m);
  r.imb = ib.trace;
  r.r_plus = r.varodin - (r.vardwa + r.imb);
  r.r_minus = r.varodin + (r.vardwa + r.imb);
  r.certificate = std::max({sch.certificate / 12.0, vd.contour.certificate, ib.certificate});
  return r;
}

SMatrixBlock smatrix_hh_zero(const HyperellipticCurve& c, const Chart& chart, int ell) {
  if (ell < 2) fail(ErrorCode::InvalidInput, "S-matrix block needs ell >= 2");
  const int q = ell - 1;
  const double r1 = 0.5 * chart.scale, r2 = 0.25 * chart.scale;
  auto H = [&](cplx x, cplx y) {
    const cplx d = x - y;
    return c.bidifferential_raw(chart, x, chart, y) - 1.0 / (d * d);
  };
  // h_{ab} = [x^a y^b] H on the polydisk |x| = r1, |y| = r2
  auto coefficients = [&](int n) {
    CMatrix samples(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        samples(j, k) = H(r1 * std::exp(kI * (2.0 * kPi * j / n)), r2 * std::exp(kI * (2.0 * kPi * k / n)));
    CMatrix h(q, q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) s += samples(j, k) * std::exp(-kI * (2.0 * kPi * (double(a) * j + double(b) * k) / n));
        h(a, b) = s / (double(n) * n * std::pow(r1, a) * std::pow(r2, b));
      }
    return h;
  };
  SMatrixBlock b;
  b.ell = ell;
  CMatrix h = coefficients(16);
  for (int n = 32; n <= 128; n *= 2) {
    const CMatrix h2 = coefficients(n);
    b.certificate = (h2 - h).cwiseAbs().maxCoeff();
    h = h2;
    if (b.certificate < 1e-11) break;
  }
  if (b.certificate > 1e-7) fail(ErrorCode::DifferentiationUnstable, "Cauchy coefficients of H did not settle");
  const auto jet = c.differential_jet(chart, 0.0, q - 1);
  const Eigen::MatrixXcd yinv = c.riemann().imag_inverse().cast<cplx>();
  b.hh.resize(q, q);
  for (int k = 1; k <= q; ++k)
    for (int l = 1; l <= q; ++l) {
      const cplx pairing = jet[l - 1].transpose() * yinv * jet[k - 1];
      b.hh(k - 1, l - 1) = (-h(l - 1, k - 1) + kPi * pairing) / std::sqrt(double(k) * l);
    }
  b.symmetry = (b.hh - b.hh.transpose()).cwiseAbs().maxCoeff();
  b.bergman = c.bergman_kernel(chart, 0.0);
  return b;
}

cplx clue_lhs(const SMatrixBlock& b) {
  const int ell = b.ell;
  cplx s = 0.0;
  for (int k = 1; k < ell; ++k) s += std::sqrt(double(k) * (ell - k)) / ell * b.hh(k - 1, ell - k - 1);
  return s;
}

ClueResult clue_identity_check(const HyperellipticCurve& c, int m) {
  const Chart ch = c.branch_chart(m);
  ClueResult r;
  r.block = smatrix_hh_zero(c, ch, 2);
  r.lhs = clue_lhs(r.block);
  const auto sch = c.schiffer_connection(ch, 0.0);
  r.rhs = -sch.value / 12.0;
  r.schiffer_certificate = sch.certificate;
  r.discrepancy = std::abs(r.lhs - r.rhs);
  return r;
}

CMatrix amatrix(int ell) {
  if (ell < 2) fail(ErrorCode::InvalidInput, "A-matrix needs ell >= 2");
  const int q = ell - 1;
  CMatrix a = CMatrix::Zero(q, q);
  auto cnu = [&](double nu) { return 1.0 / (2.0 * std::sqrt(nu * ell * kPi)); };
  for (int i = 1; i <= q; ++i) {
    const int j = ell - i;
    const double mu = double(i) / ell, nu = double(j) / ell;
    a(i - 1, j - 1) = 4.0 * kPi * mu * cnu(mu) * nu * cnu(nu);
  }
  return a;
}

TraceRoutes trace_identity_check(const CMatrix& hh) {
  const int ell = static_cast<int>(hh.rows()) + 1;
  TraceRoutes t;
  t.via_a = (amatrix(ell) * hh).trace();
  for (int k = 1; k < ell; ++k) t.direct += std::sqrt(double(k) / ell * double(ell - k) / ell) * hh(k - 1, ell - k - 1);
  t.ratio = t.direct / t.via_a;
  return t;
}

cplx green_pairing(int ell, int k, PairingConvention conv, double eps, int nodes) {
  if (ell < 2 || k < 1 || k >= ell) fail(ErrorCode::InvalidInput, "need 0 < k < ell");
  const double nu = double(k) / ell;
  const double c = 1.0 / (2.0 * std::sqrt(nu * ell * kPi));
  // conj(v) = c z^{s}: holomorphic in z, so only the dz term survives
  const double s = conv == PairingConvention::Decaying ? nu : -nu;
  const double span = 2.0 * kPi * ell;
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double th = span * j / nodes;
    auto power = [&](double p) { return std::pow(eps, p) * std::exp(kI * (p * th)); };
    const cplx du = -nu * c * power(-nu - 1.0);
    const cplx vbar = c * power(s);
    const cplx dz = kI * power(1.0);  // dz/dtheta
    sum += du * vbar * dz;
  }
  return (2.0 / kI) * sum * (span / nodes);
}

// ---------------------------------------------------------------------------

CriticalData critical_data(const Polynomial& p) {
  CriticalData d;
  const auto roots = specfun::poly_roots(p.derivative());
  for (const auto& cl : roots.clusters)
    if (cl.multiplicity > 1) fail(ErrorCode::DegenerateCriticalPoint, "critical points collide");
  d.points = roots.roots;
  for (cplx w : d.points) d.values.push_back(p(w));
  return d;
}

namespace {

void polish_critical_points(const Polynomial& p, std::vector<cplx>& w) {
  const Polynomial d1 = p.derivative(), d2 = p.derivative(2);
  for (auto& x : w)
    for (int it = 0; it < 30; ++it) {
      const cplx step = d1(x) / d2(x);
      x -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
    }
}

bool depressed_monic(const Polynomial& p) {
  const int n = p.degree();
  return n >= 3 && std::abs(p.leading() - 1.0) < 1e-14 && std::abs(p.coeff(n - 1)) < 1e-14;
}

// zeros of the genus-zero data reordered to follow ref
tau::Genus0Data aligned(const Polynomial& p, const std::vector<cplx>& ref) {
  auto d = tau::genus0_data(Rational(p));
  if (d.zeros.size() != ref.size()) fail(ErrorCode::DegenerateCriticalPoint, "critical point count changed");
  std::vector<tau::Genus0Data::Zero> out;
  for (cplx w : ref) {
    size_t best = 0;
    for (size_t i = 1; i < d.zeros.size(); ++i)
      if (std::abs(d.zeros[i].w - w) < std::abs(d.zeros[best].w - w)) best = i;
    out.push_back(d.zeros[best]);
  }
  d.zeros = out;
  return d;
}

}  // namespace

Polynomial move_critical_value(const Polynomial& p, int m, cplx dz) {
  if (!depressed_monic(p)) fail(ErrorCode::InvalidInput, "moduli motion needs a monic polynomial with no w^(N-1) term");
  const int n = p.degree();
  const int free = n - 1;
  auto cd = critical_data(p);
  if (m < 0 || m >= free) fail(ErrorCode::InvalidInput, "critical value index out of range");
  std::vector<cplx> target = cd.values;
  target[m] += dz;
  std::vector<cplx> coeffs = p.coeffs();
  std::vector<cplx> w = cd.points;
  double scale = 1.0;
  for (cplx z : target) scale = std::max(scale, std::abs(z));
  for (int it = 0; it < 60; ++it) {
    const Polynomial q(coeffs);
    polish_critical_points(q, w);
    Eigen::MatrixXcd J(free, free);
    Eigen::VectorXcd F(free);
    for (int i = 0; i < free; ++i) {
      F(i) = target[i] - q(w[i]);
      cplx wp = 1.0;
      for (int k = 0; k < free; ++k) {
        J(i, k) = wp;  // p'(w_i) = 0, so dz_i/dc_k = w_i^k
        wp *= w[i];
      }
    }
    if (F.cwiseAbs().maxCoeff() < 1e-15 * scale) return q;
    const Eigen::VectorXcd step = J.partialPivLu().solve(F);
    for (int k = 0; k < free; ++k) coeffs[k] += step(k);
  }
  const Polynomial q(coeffs);
  polish_critical_points(q, w);
  double res = 0.0;
  for (int i = 0; i < free; ++i) res = std::max(res, std::abs(q(w[i]) - target[i]));
  if (res > 1e-12 * scale) fail(ErrorCode::NonConvergence, "critical-value Newton iteration did not converge");
  return q;
}

PdeCheck genus0_pde_check(const Polynomial& p, int m, double h) {
  const auto cd = critical_data(p);
  auto tau_at = [&](cplx dz) { return tau::tau_genus0(aligned(move_critical_value(p, m, dz), cd.points)); };
  PdeCheck r;
  r.fd = tau::log_ratio(tau_at(h), tau_at(-h)) / (2.0 * h);
  const cplx fdi = tau::log_ratio(tau_at(kI * h), tau_at(-kI * h)) / (2.0 * kI * h);
  r.cauchy_riemann = std::abs(r.fd - fdi);
  double dmin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < cd.points.size(); ++i)
    if (static_cast<int>(i) != m) dmin = std::min(dmin, std::abs(cd.points[i] - cd.points[m]));
  const auto c = vardwa_rhs(Rational(p), cd.points[m], 0.3 * dmin);
  r.rhs = c.value;
  r.certificate = c.certificate;
  r.discrepancy = std::abs(r.fd - r.rhs);
  return r;
}

PdeCheck genus1_pde_check(const HyperellipticCurve& c, int m, double h) {
  PdeCheck r;
  const auto tp = tau::tau_genus1(move_branch_point(c, m, h));
  const auto tm = tau::tau_genus1(move_branch_point(c, m, -h));
  r.fd = tau::log_ratio(tp, tm) / (2.0 * h);
  const auto v = vardwa_rhs(c, m);
  r.rhs = v.contour.value;
  r.certificate = v.contour.certificate;
  r.discrepancy = std::abs(r.fd - r.rhs);
  return r;
}

PdeCheck genus2_pde_check(const HyperellipticCurve& c, int m, cplx zeta, double h) {
  const auto zp = curve::CurvePoint::finite(zeta, 1);
  curve::AbelMap abel(c);
  const auto base = tau::tau_higher(abel, curve::riemann_constants(abel), zp);
  tau::HigherOptions opts;
  opts.characteristics = base.characteristics;
  auto at = [&](cplx dz) {
    const auto cc = move_branch_point(c, m, dz);
    curve::AbelMap a(cc);
    auto t = tau::tau_higher(a, curve::riemann_constants(a), zp, opts).tau;
    t.continue_from(base.tau);
    return t;
  };
  PdeCheck r;
  r.fd = tau::log_ratio(at(h), at(-h)) / (2.0 * h);
  const auto v = vardwa_rhs(c, m);
  r.rhs = v.contour.value;
  r.certificate = v.contour.certificate;
  r.discrepancy = std::abs(r.fd - r.rhs);
  return r;
}

}  // namespace hurwitz::variational
