#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hurwitz/curve/hyperelliptic.hpp"

using namespace hurwitz;
using namespace hurwitz::curve;
using std::numbers::pi;
const cplx I(0.0, 1.0);

namespace {

double agm(double a, double b) {
  while (std::abs(a - b) > 1e-16 * a) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

std::vector<cplx> random_branch_points(std::mt19937& rng, int g) {
  std::uniform_real_distribution<double> step(0.4, 1.2), im(-0.6, 0.6);
  std::vector<cplx> e;
  double x = -double(g + 1);
  for (int i = 0; i < 2 * g + 2; ++i) {
    x += step(rng);
    e.emplace_back(x, im(rng));
  }
  return e;
}

Eigen::MatrixXi swap_marking(int g) {
  Eigen::MatrixXi M = Eigen::MatrixXi::Zero(2 * g, 2 * g);
  M.topRightCorner(g, g) = Eigen::MatrixXi::Identity(g, g);
  M.bottomLeftCorner(g, g) = -Eigen::MatrixXi::Identity(g, g);
  return M;
}

}  // namespace

TEST_CASE("genus one period ratio against the arithmetic-geometric mean") {
  const double e1 = -2.3, e2 = -0.7, e3 = 0.4, e4 = 1.9;
  HyperellipticCurve c({e1, e2, e3, e4});
  const double s = std::sqrt((e4 - e2) * (e3 - e1));
  const double Ia = pi / agm(s, std::sqrt((e3 - e2) * (e4 - e1)));
  const double Ig = pi / agm(s, std::sqrt((e2 - e1) * (e4 - e3)));
  // confirm the AGM formulas by direct quadrature of 1/sqrt|P|
  boost::math::quadrature::tanh_sinh<double> ts;
  auto inv = [&](double x) { return 1.0 / std::sqrt(std::abs((x - e1) * (x - e2) * (x - e3) * (x - e4))); };
  CHECK(std::abs(ts.integrate(inv, e1, e2) - Ia) < 1e-8);
  CHECK(std::abs(ts.integrate(inv, e2, e3) - Ig) < 1e-8);
  CHECK(std::abs(c.B()(0, 0) - I * Ig / Ia) < 1e-9);
  CHECK(c.period_certificate() < 1e-9);
}

TEST_CASE("real symmetric configuration has purely imaginary B") {
  const double k = 0.35;
  HyperellipticCurve c({-1.0 / k, -1.0, 1.0, 1.0 / k});
  CHECK(std::abs(c.B()(0, 0).real()) < 1e-12);
  CHECK(c.B()(0, 0).imag() > 0.0);
}

TEST_CASE("random genus 1 and 2 curves: symmetric B, positive Im B, a-normalization") {
  std::mt19937 rng(7);
  for (int g : {1, 2}) {
    for (int rep = 0; rep < 5; ++rep) {
      HyperellipticCurve c(random_branch_points(rng, g));
      const CMatrix& B = c.B();
      CHECK((B - B.transpose()).cwiseAbs().maxCoeff() < 1e-9 * B.cwiseAbs().maxCoeff());
      CHECK(c.riemann().min_imag_eigenvalue() > 0.0);
      const CMatrix norm = c.normalization() * c.a_periods().transpose();
      CHECK((norm - CMatrix::Identity(g, g)).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(c.period_certificate() < 1e-9);
      CHECK(c.correction_asymmetry() < 1e-9);
    }
  }
}

TEST_CASE("symplectic swap maps B to -B^{-1}") {
  std::mt19937 rng(3);
  for (int g : {1, 2}) {
    HyperellipticCurve c(random_branch_points(rng, g));
    HyperellipticCurve s = c.with_marking(swap_marking(g));
    const CMatrix expected = -c.B().inverse();
    CHECK((s.B() - expected).cwiseAbs().maxCoeff() < 1e-9 * expected.cwiseAbs().maxCoeff());
    const double d0 = c.riemann().imag().determinant(), d1 = s.riemann().imag().determinant();
    CHECK(std::abs(d1 - d0 / std::norm(c.B().determinant())) < 1e-9 * d1);
    CHECK_THROWS_AS(c.with_marking(2 * swap_marking(g)), Error);
  }
}

TEST_CASE("ill-conditioned a-periods are reported") {
  CHECK_THROWS_AS(HyperellipticCurve({0.0, 1e-7, 2e-7, 3e-7, 10.0, 11.0}), Error);
  CHECK_THROWS_AS(HyperellipticCurve({0.0, -1.0, 2.0, 3.0}), Error);
}

TEST_CASE("bidifferential: symmetry and cycle integrals") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int g : {1, 2}) {
    HyperellipticCurve c(random_branch_points(rng, g));
    for (int rep = 0; rep < 6; ++rep) {
      const cplx zp(2.5 * u(rng), 1.0 + u(rng)), zq(2.5 * u(rng), -1.0 + 0.5 * u(rng));
      const int sp = rep % 2 ? 1 : -1, sq = rep % 3 ? 1 : -1;
      const Chart cp = c.regular_chart(zp, sp), cq = c.regular_chart(zq, sq);
      const cplx w1 = c.bidifferential(cp, 0.0, cq, 0.0), w2 = c.bidifferential(cq, 0.0, cp, 0.0);
      CHECK(std::abs(w1 - w2) < 1e-7 * std::abs(w1));
      const CVector a = c.a_cycle_of_bidifferential(cq, 0.0);
      CHECK(a.cwiseAbs().maxCoeff() < 1e-9);
      const CVector b = c.b_cycle_of_bidifferential(cq, 0.0);
      const CVector v = c.differentials(cq, 0.0);
      CHECK((b - 2.0 * pi * I * v).cwiseAbs().maxCoeff() < 1e-6);
    }
    const Chart cp = c.regular_chart(cplx(0.3, 2.0), 1);
    CHECK_THROWS_AS(c.bidifferential(cp, 0.0, cp, 1e-4), Error);
  }
}

TEST_CASE("bidifferential in charts at infinity matches the z chart") {
  HyperellipticCurve c({-2.0, -1.0, 0.5, 1.5, 2.5, 3.0});
  const Chart inf = c.infinity_chart(1);
  const double x = 0.05;
  const cplx z = 1.0 / x;
  const Chart reg = c.regular_chart(z, 1);
  const Chart other = c.regular_chart(cplx(0.2, 1.1), -1);
  const cplx wz = c.bidifferential(reg, 0.0, other, 0.0);
  const cplx wx = c.bidifferential(inf, x, other, 0.0);
  CHECK(std::abs(wx - wz * (-1.0 / (x * x))) < 1e-10 * std::abs(wx));
  const CVector vx = c.differentials(inf, x), vz = c.differentials(reg, 0.0);
  CHECK((vx - vz * (-1.0 / (x * x))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Bergman projective connection: extrapolation, closed form, cocycle") {
  std::mt19937 rng(5);
  for (int g : {1, 2}) {
    HyperellipticCurve c(random_branch_points(rng, g));
    for (cplx z0 : {cplx(0.3, 1.4), cplx(-1.1, -0.9), cplx(2.0, 0.2)}) {
      for (int sheet : {1, -1}) {
        const Chart ch = c.regular_chart(z0, sheet);
        const auto sb = c.bergman_connection(ch, 0.0);
        const cplx closed = c.bergman_connection_closed_form(z0, sheet);
        CHECK(std::abs(sb.value - closed) < 1e-7 * std::max(1.0, std::abs(closed)));
      }
    }
    // branch chart: S^(x) = S^(z) (2x)^2 - 3/(2x^2)
    const int m = 1;
    const Chart bc = c.branch_chart(m);
    const cplx x0 = 0.3 * bc.scale * std::exp(I * 0.7);
    const ChartPoint p = c.evaluate(bc, x0);
    const int sheet = std::abs(c.y1(p.z) - p.y) < std::abs(c.y1(p.z) + p.y) ? 1 : -1;
    const auto sx = c.bergman_connection(bc, x0);
    const auto sz = c.bergman_connection(c.regular_chart(p.z, sheet), 0.0);
    CHECK(std::abs(sx.value - (sz.value * 4.0 * x0 * x0 - 1.5 / (x0 * x0))) < 1e-6 * std::abs(sx.value));
    // infinity chart: Moebius change, no Schwarzian term
    const Chart ic = c.infinity_chart(1);
    const cplx xi = 0.3 * ic.scale;
    const auto si = c.bergman_connection(ic, xi);
    const auto sr = c.bergman_connection(c.regular_chart(1.0 / xi, 1), 0.0);
    CHECK(std::abs(si.value - sr.value / std::pow(xi, 4)) < 1e-6 * std::abs(si.value));
  }
}

TEST_CASE("Schiffer connection is independent of the marking") {
  std::mt19937 rng(19);
  for (int g : {1, 2}) {
    HyperellipticCurve c(random_branch_points(rng, g));
    HyperellipticCurve s = c.with_marking(swap_marking(g));
    for (cplx z0 : {cplx(0.1, 1.3), cplx(-0.7, -1.5)}) {
      const auto s1 = c.schiffer_connection(c.regular_chart(z0, 1), 0.0);
      const auto s2 = s.schiffer_connection(s.regular_chart(z0, 1), 0.0);
      CHECK(std::abs(s1.value - s2.value) < 1e-8 * std::max(1.0, std::abs(s1.value)));
      const auto b1 = c.bergman_connection(c.regular_chart(z0, 1), 0.0);
      const auto b2 = s.bergman_connection(s.regular_chart(z0, 1), 0.0);
      CHECK(std::abs(b1.value - b2.value) > 1e-6);
    }
  }
}

TEST_CASE("Bergman kernel: nonnegative and reproducing") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int g : {1, 2}) {
    HyperellipticCurve c(random_branch_points(rng, g));
    for (int i = 0; i < 50; ++i) {
      const cplx z(u(rng), u(rng));
      const double k = c.bergman_kernel(c.regular_chart(z, i % 2 ? 1 : -1), 0.0);
      CHECK(k >= 0.0);
      if (g == 1) {
        const cplx v = c.differentials(c.regular_chart(z, 1), 0.0)(0);
        CHECK(std::abs(k - std::norm(v) / c.B()(0, 0).imag()) < 1e-12 * std::max(1.0, k));
      }
    }
    CHECK(std::abs(c.bergman_area_integral() - g) < 1e-3);
  }
}
