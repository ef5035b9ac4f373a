#include "hurwitz/tau.hpp"

#include <cmath>
#include <numbers>

namespace hurwitz::tau {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx reduce_mod_ipi(cplx d) { return d - kI * (kPi * std::round(d.imag() / kPi)); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

cplx TauValue::log_tau() const {
  cplx s = 0.0;
  for (const auto& f : factors) s += f.weight * f.log;
  return s;
}

cplx TauValue::value() const { return std::exp(log_tau()); }

void TauValue::continue_from(const TauValue& ref) {
  if (ref.factors.size() != factors.size()) fail(ErrorCode::ChartBranchInconsistency, "tau factor lists differ");
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].label != ref.factors[i].label)
      fail(ErrorCode::ChartBranchInconsistency, "tau factor labels differ: " + factors[i].label);
    factors[i].log = ref.factors[i].log + reduce_mod_ipi(factors[i].log - ref.factors[i].log);
  }
}

cplx log_ratio(const TauValue& a, const TauValue& b) {
  TauValue c = a;
  c.continue_from(b);
  cplx s = 0.0;
  for (size_t i = 0; i < c.factors.size(); ++i) s += c.factors[i].weight * (c.factors[i].log - b.factors[i].log);
  return s;
}

void check_divisor_degree(const std::vector<DivisorPoint>& d, int genus) {
  int s = 0;
  for (const auto& p : d) s += p.order;
  if (s != 2 * genus - 2)
    fail(ErrorCode::InvalidInput, "divisor of df has degree " + std::to_string(s) + ", expected " +
                                      std::to_string(2 * genus - 2));
}

// ---------------------------------------------------------------------------

PolynomialTau tau_polynomial(const Polynomial& p) {
  const int n = p.degree();
  if (n < 2) fail(ErrorCode::InvalidInput, "tau_polynomial needs degree >= 2");
  if (std::abs(p.leading() - 1.0) > 1e-12) fail(ErrorCode::InvalidInput, "polynomial must be monic");
  const Polynomial dp = p.derivative(), ddp = p.derivative(2);
  PolynomialTau r;
  if (n > 2) {
    const auto roots = specfun::poly_roots(dp);
    for (const auto& cl : roots.clusters)
      if (cl.multiplicity > 1) fail(ErrorCode::DegenerateCriticalPoint, "critical points collide");
    r.critical_points = roots.roots;
  } else {
    r.critical_points = {-dp.coeff(0) / dp.coeff(1)};
  }
  double scale = 0.0;
  for (int i = 0; i <= ddp.degree(); ++i) scale = std::max(scale, std::abs(ddp.coeff(i)));
  r.product = 1.0;
  r.tau.genus = 0;
  r.tau.normalization = "{prod p''(w_k)}^(1/24); the factor 2^(-(N-1)/24) of the chart derivatives is dropped";
  for (size_t k = 0; k < r.critical_points.size(); ++k) {
    const cplx v = ddp(r.critical_points[k]);
    if (std::abs(v) < 1e-10 * scale) fail(ErrorCode::DegenerateCriticalPoint, "p'' vanishes at a critical point");
    r.product *= v;
    r.tau.factors.push_back({"p''(w_" + std::to_string(k + 1) + ")", std::log(v), 1.0 / 24.0});
  }
  r.resultant = specfun::resultant(dp, ddp);
  r.constant = std::pow(cplx(n), n - 2);
  r.discrepancy = std::abs(r.constant * r.product - r.resultant) / std::abs(r.resultant);
  return r;
}

cplx frak_m(cplx a, cplx b, cplx c) {
  return a * a * a + b * b * b + c * c * c + 3.0 * a * a * b + 3.0 * a * a * c + 3.0 * b * b * a + 3.0 * b * b * c +
         3.0 * c * c * a + 3.0 * c * c * b - 21.0 * a * b * c;
}

ThreePoleTau tau_three_poles(cplx a, cplx b, cplx c, cplx d) {
  if (a == 0.0 || b == 0.0 || c == 0.0) fail(ErrorCode::InvalidInput, "a, b, c must be nonzero");
  const Polynomial w({0.0, 1.0}), w1({-1.0, 1.0});
  // r = (a w^2 (w-1) - b (w-1) - c w + d w (w-1)) / (w (w-1))
  const Polynomial num = w * w * w1 * a - w1 * b - w * c + w * w1 * d;
  const Rational r(num, w * w1);
  ThreePoleTau t;
  const auto data = genus0_data(r);
  for (const auto& z : data.zeros) {
    if (z.ell != 1) fail(ErrorCode::DegenerateCriticalPoint, "critical points of r collide");
    t.critical_points.push_back(z.w);
  }
  t.tau = tau_genus0(data);
  t.e0 = std::exp(24.0 * t.tau.log_tau());
  t.m = frak_m(a, b, c);
  t.printed = a * a * a * b * b * b * c * c * c * t.m;
  // r' = f / g
  const Polynomial f = w * w * w1 * w1 * a + w1 * w1 * b + w * w * c;
  const Polynomial g = w * w * w1 * w1;
  const cplx rfg = specfun::resultant(f, g), rff = specfun::resultant(f, f.derivative());
  if (std::abs(rff) == 0.0) fail(ErrorCode::DegenerateCriticalPoint, "R(f, f') = 0");
  const cplx b4c4 = std::pow(b * c, 4);
  t.resultant_literal = b4c4 * rff / rfg;
  t.resultant = t.resultant_literal * a;
  return t;
}

// ---------------------------------------------------------------------------

Genus0Data genus0_data(const Rational& r) {
  const Polynomial& num = r.num();
  const Polynomial& den = r.den();
  Genus0Data d;
  d.k_infinity = num.degree() - den.degree();
  if (d.k_infinity < 1) fail(ErrorCode::NormalizationFailure, "U needs a pole of f at w = infinity");
  d.alpha = num.leading() / den.leading();
  double wscale = 1.0;
  if (den.degree() > 0) {
    const auto pr = specfun::poly_roots(den);
    for (const auto& cl : pr.clusters) {
      Genus0Data::Pole p;
      p.w = cl.center;
      p.k = cl.multiplicity;
      const cplx dk = den.derivative(p.k)(p.w) / factorial(p.k);
      if (std::abs(num(p.w)) < 1e-12 * num.coeff_norm()) fail(ErrorCode::InvalidInput, "r is not in lowest terms");
      p.coefficient = num(p.w) / dk;
      d.poles.push_back(p);
      wscale = std::max(wscale, std::abs(p.w));
    }
  }
  const Polynomial dn = r.derivative_numerator();
  if (dn.degree() > 0) {
    const auto zr = specfun::poly_roots(dn);
    for (const auto& cl : zr.clusters) {
      bool at_pole = false;
      for (const auto& p : d.poles) at_pole = at_pole || std::abs(cl.center - p.w) < 1e-6 * wscale;
      if (at_pole) continue;
      Genus0Data::Zero z;
      z.w = cl.center;
      z.ell = cl.multiplicity;
      const auto ders = r.derivatives(z.w, z.ell + 1);
      z.z = ders[0];
      z.coefficient = ders[z.ell + 1] / factorial(z.ell + 1);
      if (std::abs(z.coefficient) == 0.0) fail(ErrorCode::DegenerateCriticalPoint, "critical point order is wrong");
      d.zeros.push_back(z);
    }
  }
  int deg = -(d.k_infinity + 1);
  for (const auto& p : d.poles) deg -= p.k + 1;
  for (const auto& z : d.zeros) deg += z.ell;
  if (deg != -2) fail(ErrorCode::DegenerateCriticalPoint, "divisor of dr has the wrong degree; critical points unresolved");
  return d;
}

TauValue tau_genus0(const Genus0Data& d) {
  TauValue t;
  t.genus = 0;
  t.normalization = "U = alpha^(1/k) w with principal roots; chart roots fixed up to sign";
  const cplx log_u = std::log(d.alpha) / double(d.k_infinity);
  for (size_t j = 0; j < d.poles.size(); ++j) {
    const auto& p = d.poles[j];
    t.factors.push_back({"dU/dzeta_" + std::to_string(j + 2), log_u + std::log(p.coefficient) / double(p.k),
                         (p.k + 1) / 12.0});
  }
  for (size_t m = 0; m < d.zeros.size(); ++m) {
    const auto& z = d.zeros[m];
    t.factors.push_back({"dU/dx_" + std::to_string(m + 1), log_u - std::log(z.coefficient) / double(z.ell + 1),
                         -z.ell / 12.0});
  }
  return t;
}

TauValue tau_genus0(const Rational& r) { return tau_genus0(genus0_data(r)); }

// ---------------------------------------------------------------------------

TauValue tau_genus1(const curve::HyperellipticCurve& c) {
  if (c.genus() != 1) fail(ErrorCode::InvalidInput, "tau_genus1 needs a genus-one curve");
  std::vector<DivisorPoint> div;
  for (int m = 0; m < 4; ++m) div.push_back({"e" + std::to_string(m), 1});
  div.push_back({"inf+", -2});
  div.push_back({"inf-", -2});
  check_divisor_degree(div, 1);
  TauValue t;
  t.genus = 1;
  t.normalization = "theta_1'(0|B) as 2 pi eta^3; chart roots fixed up to sign";
  t.factors.push_back({"theta1'", std::log(specfun::jacobi_theta1_prime(c.B()(0, 0))), 2.0 / 3.0});
  for (int s : {1, -1}) {
    const cplx h = c.differentials(c.infinity_chart(s), 0.0)(0);
    t.factors.push_back({s > 0 ? "h(inf+)" : "h(inf-)", std::log(h), 2.0 / 12.0});
  }
  for (int m = 0; m < 4; ++m) {
    const cplx f = c.differentials(c.branch_chart(m), 0.0)(0);
    t.factors.push_back({"f(e" + std::to_string(m) + ")", std::log(f), -1.0 / 12.0});
  }
  return t;
}

// ---------------------------------------------------------------------------

HigherTau tau_higher(const curve::AbelMap& abel, const curve::RiemannConstants& rc, const curve::CurvePoint& zeta,
                     const HigherOptions& opts) {
  using curve::CurvePoint;
  const auto& c = abel.curve();
  const int g = c.genus();
  if (g < 2) fail(ErrorCode::InvalidInput, "tau_higher needs genus >= 2");
  if (zeta.kind != CurvePoint::Kind::Finite) fail(ErrorCode::InvalidInput, "zeta must be a finite regular point");

  std::vector<CurvePoint> pts;
  std::vector<DivisorPoint> div;
  for (int m = 0; m < 2 * g + 2; ++m) {
    pts.push_back(CurvePoint::branch_point(m));
    div.push_back({"e" + std::to_string(m), 1});
  }
  pts.push_back(CurvePoint::infinity(1));
  div.push_back({"inf+", -2});
  pts.push_back(CurvePoint::infinity(-1));
  div.push_back({"inf-", -2});
  check_divisor_degree(div, g);
  const int n = static_cast<int>(pts.size());

  std::vector<curve::Chart> charts;
  std::vector<CVector> A;
  for (const auto& p : pts) {
    charts.push_back(curve::natural_chart(c, p));
    A.push_back(abel(p));
  }
  const curve::Chart zc = curve::natural_chart(c, zeta);
  const CVector Az = abel(zeta);

  HigherTau r;
  r.K_zeta = rc.K + double(g - 1) * Az;
  CVector divisor = CVector::Zero(g);
  for (int k = 0; k < n; ++k) divisor += double(div[k].order) * (A[k] - Az);
  const auto lat = curve::lattice_decompose(c.riemann(), divisor + 2.0 * r.K_zeta);
  r.lattice_residual = lat.residual;
  if (lat.residual > opts.lattice_tolerance)
    fail(ErrorCode::LatticeResolutionFailure, "A((df)) + 2K is not a lattice vector");
  r.Z = lat.Zi;
  r.Zp = lat.Zpi;

  const CVector v = c.differentials(zc, 0.0);
  const std::vector<CVector> dirs(g, v);
  r.theta_derivative = specfun::riemann_theta(r.K_zeta, c.riemann(), specfun::ThetaCharacteristic::zero(g), dirs).value;

  const auto jet = c.differential_jet(zc, 0.0, g - 1);
  CMatrix wr(g, g);
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) wr(i, k) = jet[k](i) * factorial(k);
  r.wronskian = wr.determinant();

  const CVector Zc = r.Z.cast<double>().cast<cplx>();
  const cplx lattice_log = kI * (kPi / 6.0) * cplx((Zc.transpose() * (c.B() * Zc + 4.0 * r.K_zeta))(0, 0));

  auto& t = r.tau;
  t.genus = g;
  t.normalization = "theta directional derivative without (2 pi i)^g; prime-form spinor roots fixed up to sign";
  t.factors.push_back({"theta derivative", std::log(r.theta_derivative), 2.0 / 3.0});
  t.factors.push_back({"lattice exponential", lattice_log, -1.0});
  t.factors.push_back({"wronskian", std::log(r.wronskian), -2.0 / 3.0});

  curve::PrimeForm E(abel);
  const int npairs = n * (n - 1) / 2 + n;
  if (!opts.characteristics.empty() && static_cast<int>(opts.characteristics.size()) != npairs)
    fail(ErrorCode::InvalidInput, "characteristic list has the wrong length");
  int idx = 0;
  auto pick = [&](const curve::Chart& ca, const curve::Chart& cb) {
    const int k = opts.characteristics.empty() ? E.select(ca, 0.0, cb, 0.0) : opts.characteristics[idx];
    ++idx;
    r.characteristics.push_back(k);
    return k;
  };
  auto log_e = [&](int k, const CVector& diff, const curve::Chart& ca, const curve::Chart& cb) {
    return std::log(E.numerator(k, diff)) - 0.5 * std::log(E.omega(k, ca, 0.0)) - 0.5 * std::log(E.omega(k, cb, 0.0));
  };
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      const int d = pick(charts[k], charts[l]);
      t.factors.push_back({"E(" + div[k].label + "," + div[l].label + ")", log_e(d, A[l] - A[k], charts[k], charts[l]),
                           div[k].order * div[l].order / 6.0});
    }
  for (int k = 0; k < n; ++k) {
    const int d = pick(zc, charts[k]);
    t.factors.push_back({"E(zeta," + div[k].label + ")", log_e(d, A[k] - Az, zc, charts[k]),
                         -(g - 1) * div[k].order / 3.0});
  }
  return r;
}

ZetaPath tau_higher_zeta_path(const curve::AbelMap& abel, const curve::RiemannConstants& rc, cplx zeta_from,
                              cplx zeta_to, int sheet, int steps) {
  if (steps < 1) fail(ErrorCode::InvalidInput, "zeta path needs at least one step");
  ZetaPath p;
  p.steps = steps;
  p.start = tau_higher(abel, rc, curve::CurvePoint::finite(zeta_from, sheet));
  HigherOptions opts;
  opts.characteristics = p.start.characteristics;
  HigherTau prev = p.start;
  for (int s = 1; s <= steps; ++s) {
    const cplx z = zeta_from + (zeta_to - zeta_from) * (double(s) / steps);
    HigherTau cur = tau_higher(abel, rc, curve::CurvePoint::finite(z, sheet), opts);
    cur.tau.continue_from(prev.tau);
    prev = std::move(cur);
  }
  p.end = std::move(prev);
  p.relative_change = std::abs(std::exp(p.end.tau.log_tau() - p.start.tau.log_tau()) - 1.0);
  return p;
}

}  // namespace hurwitz::tau
