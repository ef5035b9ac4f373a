#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hurwitz/curve/abel.hpp"

using namespace hurwitz;
using namespace hurwitz::curve;
using std::numbers::pi;
const cplx I(0.0, 1.0);

namespace {

HyperellipticCurve genus2() { return HyperellipticCurve({{-2.1, 0.3}, {-1.2, -0.2}, {-0.3, 0.4}, {0.6, 0.1}, {1.4, -0.3}, {2.2, 0.2}}); }
HyperellipticCurve genus1() { return HyperellipticCurve({{-1.7, 0.2}, {-0.4, -0.3}, {0.5, 0.25}, {1.6, -0.1}}); }

// counterclockwise rectangle around cut k starting above its midpoint
std::vector<cplx> rectangle(const HyperellipticCurve& c, int k, double pad) {
  const cplx a = c.branch_points()[2 * k], b = c.branch_points()[2 * k + 1];
  const double x0 = a.real() - pad, x1 = b.real() + pad;
  const double y0 = std::min(a.imag(), b.imag()) - pad, y1 = std::max(a.imag(), b.imag()) + pad;
  const double xm = 0.5 * (a.real() + b.real());
  return {cplx(xm, y1), cplx(x0, y1), cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(xm, y1)};
}

}  // namespace

TEST_CASE("Abel map: basepoint, a-loops and b-loops") {
  for (const auto& c : {genus1(), genus2()}) {
    const int g = c.genus();
    AbelMap abel(c);
    const CVector a0 = abel(CurvePoint::finite(abel.anchor(), 1));
    CHECK(a0.cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < g; ++k) {
      const auto path = rectangle(c, k, 0.15);
      const auto r = abel.integrate_polyline(path, c.y1(path[0]));
      const CVector v = c.normalization() * r.integral;
      CVector ek = CVector::Zero(g);
      ek(k) = 1.0;
      CHECK((v - ek).cwiseAbs().maxCoeff() < 1e-8);
      // b-loop: down through cut k, right below all cuts, up through the last cut, back on top
      const cplx mk = 0.5 * (c.branch_points()[2 * k] + c.branch_points()[2 * k + 1]);
      const cplx ml = 0.5 * (c.branch_points()[2 * g] + c.branch_points()[2 * g + 1]);
      const std::vector<cplx> loop{cplx(mk.real(), abel.top()), cplx(mk.real(), abel.bottom()),
                                   cplx(ml.real(), abel.bottom()), cplx(ml.real(), abel.top()),
                                   cplx(mk.real(), abel.top())};
      const auto rb = abel.integrate_polyline(loop, c.y1(loop[0]));
      const CVector vb = double(c.b_sign()) * (c.normalization() * rb.integral);
      CHECK((vb - c.B().col(k)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("Abel map: sheet involution and branch points") {
  const auto c = genus2();
  AbelMap abel(c);
  // A(P) + A(sigma P) is independent of P; at a branch point it is 2 A(e).
  const CVector s1 = abel(CurvePoint::finite({0.2, 1.7}, 1)) + abel(CurvePoint::finite({0.2, 1.7}, -1));
  const CVector s2 = abel(CurvePoint::finite({-1.5, -1.1}, 1)) + abel(CurvePoint::finite({-1.5, -1.1}, -1));
  const CVector s3 = 2.0 * abel(CurvePoint::branch_point(5));
  const CVector s4 = abel(CurvePoint::infinity(1)) + abel(CurvePoint::infinity(-1));
  for (const CVector& s : {s2, s3, s4}) {
    const auto d = lattice_decompose(c.riemann(), s - s1);
    CHECK(d.residual < 1e-8);
  }
  // differences of branch points are half periods
  const auto h = lattice_decompose(c.riemann(), 2.0 * abel.between(CurvePoint::branch_point(0), CurvePoint::branch_point(3)));
  CHECK(h.residual < 1e-8);
  // local consistency: derivative of the Abel map is v
  const cplx z({0.9, 1.3});
  const double eps = 1e-4;
  const CVector d = (abel(CurvePoint::finite(z + eps, 1)) - abel(CurvePoint::finite(z - eps, 1))) / (2 * eps);
  CHECK((d - c.differentials(c.regular_chart(z, 1), 0.0)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("distinguished parameters") {
  const auto c = genus2();
  CHECK(distinguished_parameter(c, CurvePoint::branch_point(2), 1).chart.kind == ChartKind::Branch);
  CHECK(distinguished_parameter(c, CurvePoint::infinity(-1), -2).exponent == -1.0);
  CHECK_THROWS_AS(distinguished_parameter(c, CurvePoint::branch_point(2), 2), Error);
  CHECK_THROWS_AS(distinguished_parameter(c, CurvePoint::finite(0.1, 1), 1), Error);
  // dz = (d+1) x^d dx at the center
  const auto bp = distinguished_parameter(c, CurvePoint::branch_point(2), 1);
  const cplx x = 1e-3;
  CHECK(std::abs(c.evaluate(bp.chart, x).dz - 2.0 * x) < 1e-15);
  const auto ip = distinguished_parameter(c, CurvePoint::infinity(1), -2);
  CHECK(std::abs(c.evaluate(ip.chart, x).dz + 1.0 / (x * x)) < 1e-9);
}

TEST_CASE("Riemann constants: vanishing property and canonical divisor lattice") {
  for (const auto& c : {genus1(), genus2()}) {
    AbelMap abel(c);
    const auto rc = riemann_constants(abel);
    CHECK(rc.residual < 1e-8);
    const auto lat = lattice_decompose(c.riemann(), abel_canonical_divisor(abel) + 2.0 * rc.K);
    CHECK(lat.residual < 1e-6);
    // basepoint change keeps the vanishing property
    const CurvePoint x = CurvePoint::finite({0.4, 1.6}, 1);
    const CVector Kx = riemann_constants_at(abel, rc, x);
    if (c.genus() == 2) {
      const CurvePoint p = CurvePoint::finite({-0.8, -1.2}, -1);
      const auto t = specfun::riemann_theta(abel.between(x, p) + Kx, c.riemann(), specfun::ThetaCharacteristic::zero(2));
      CHECK(std::abs(t.value) < 1e-8 * t.abs_sum);
    }
    MESSAGE("genus " << c.genus() << ": printed residual " << rc.residual_printed << ", transposed residual "
                     << rc.residual_transposed << ", divisor residual " << rc.residual_divisor << ", shift " << rc.half_period_shift.transpose());
  }
}

TEST_CASE("genus one Riemann constant is the odd half period") {
  const auto c = genus1();
  AbelMap abel(c);
  const auto rc = riemann_constants(abel);
  const cplx B = c.B()(0, 0);
  CVector K(1);
  K(0) = 0.5 + 0.5 * B;
  const auto d = lattice_decompose(c.riemann(), rc.K - K);
  CHECK(d.residual < 1e-8);
}

TEST_CASE("prime form: antisymmetry, diagonal slope, genus-one oracle") {
  for (const auto& c : {genus1(), genus2()}) {
    AbelMap abel(c);
    std::vector<CurvePoint> avoid;
    for (int m = 0; m < 2 * c.genus() + 2; ++m) avoid.push_back(CurvePoint::branch_point(m));
    PrimeForm E(abel, avoid);
    const CurvePoint p = CurvePoint::finite({0.3, 1.4}, 1), q = CurvePoint::finite({-1.1, -0.9}, -1);
    const cplx epq = E.value(p, q), eqp = E.value(q, p);
    CHECK(std::abs(epq + eqp) < 1e-10 * std::abs(epq));
    const Chart cp = natural_chart(c, p);
    for (double eps : {1e-3, 1e-4}) {
      const cplx e = E.value(p, cp, 0.0, p, cp, eps);
      CHECK(std::abs(e / eps - 1.0) < 10 * eps * eps + 1e-9);
    }
    // branch point in its distinguished chart
    const CurvePoint b = CurvePoint::branch_point(1);
    const Chart cb = natural_chart(c, b);
    const cplx e = E.value(b, cb, 0.0, b, cb, 1e-3);
    CHECK(std::abs(e / 1e-3 - 1.0) < 1e-5);
  }
  // genus one: |E| = |theta_1(pi u)| / (pi |theta_1'(0)| sqrt|v(P) v(Q)|)
  const auto c = genus1();
  AbelMap abel(c);
  PrimeForm E(abel);
  const cplx tau = c.B()(0, 0);
  auto theta1 = [&](cplx z) {
    cplx s = 0.0;
    for (int n = 0; n < 30; ++n)
      s += 2.0 * std::pow(-1.0, n) * std::exp(I * pi * tau * std::pow(n + 0.5, 2)) * std::sin(double(2 * n + 1) * z);
    return s;
  };
  auto theta1p = [&]() {
    cplx s = 0.0;
    for (int n = 0; n < 30; ++n)
      s += 2.0 * std::pow(-1.0, n) * std::exp(I * pi * tau * std::pow(n + 0.5, 2)) * double(2 * n + 1);
    return s;
  };
  const CurvePoint p = CurvePoint::finite({0.3, 1.4}, 1), q = CurvePoint::finite({-1.1, -0.9}, -1);
  const cplx u = abel.between(p, q)(0);
  const cplx vp = c.differentials(natural_chart(c, p), 0.0)(0), vq = c.differentials(natural_chart(c, q), 0.0)(0);
  const double oracle = std::abs(theta1(pi * u)) / (pi * std::abs(theta1p()) * std::sqrt(std::abs(vp * vq)));
  CHECK(std::abs(std::abs(E.value(p, q)) - oracle) < 1e-10 * oracle);
}
