#include <cmath>
#include <random>

#include "doctest.h"
#include "hurwitz/tau.hpp"

using namespace hurwitz;
using namespace hurwitz::tau;

namespace {

// Independent oracle: prod over roots of p' of p'' with roots from the companion matrix.
cplx product_oracle(const Polynomial& p) {
  const Polynomial dp = p.derivative();
  const int n = dp.degree();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -dp.coeff(i) / dp.leading();
  const Eigen::VectorXcd roots = comp.eigenvalues();
  cplx prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= p.derivative(2)(roots(i));
  return prod;
}

Polynomial random_monic(std::mt19937& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<cplx> c(n + 1);
  for (int i = 0; i < n; ++i) c[i] = cplx(N(rng), N(rng));
  c[n] = 1.0;
  return Polynomial(c);
}

}  // namespace

TEST_CASE("polynomial covers: product and resultant routes") {
  const auto sq = tau_polynomial(Polynomial({0.0, 0.0, 1.0}));
  CHECK(std::abs(sq.resultant - 2.0) < 1e-14);
  CHECK(std::abs(sq.constant - 1.0) < 1e-14);

  const auto cubic = tau_polynomial(Polynomial({0.0, -3.0, 0.0, 1.0}));
  CHECK(std::abs(cubic.product + 36.0) < 1e-12);
  CHECK(std::abs(cubic.constant - 3.0) < 1e-14);
  CHECK(std::abs(cubic.resultant + 108.0) < 1e-10);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_monic(rng, 3 + trial % 4);
    const auto t = tau_polynomial(p);
    CHECK(t.discrepancy < 1e-9);
    CHECK(std::abs(t.product - product_oracle(p)) < 1e-9 * std::abs(t.product));
  }

  CHECK_THROWS_AS(tau_polynomial(Polynomial({0.0, 0.0, 0.0, 1.0})), Error);
}

TEST_CASE("genus-zero assembly reduces to the polynomial product up to 2^(-(N-1)/24)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial % 3;
    const auto p = random_monic(rng, n);
    const auto e1 = tau_polynomial(p);
    const auto e0 = tau_genus0(Rational(p));
    const cplx ratio = std::exp(24.0 * (e0.log_tau() - e1.tau.log_tau()));
    CHECK(std::abs(ratio - std::pow(2.0, -(n - 1))) < 1e-10);
  }
}

TEST_CASE("three-pole covers: M values and resultant routes") {
  CHECK(frak_m(1.0, 2.0, 3.0) == cplx(54.0));
  CHECK(frak_m(1.0, 1.0, 1.0) == cplx(0.0));
  std::mt19937 rng(3);
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<cplx> lit;
  for (int trial = 0; trial < 20; ++trial) {
    const cplx a(N(rng), N(rng)), b(N(rng), N(rng)), c(N(rng), N(rng)), d(N(rng), N(rng));
    const auto t = tau_three_poles(a, b, c, d);
    CHECK(std::abs(t.e0 / t.printed - 1.0) < 1e-8);
    CHECK(std::abs(t.resultant / t.printed - 16.0) < 1e-8 * 16.0);
    lit.push_back(t.resultant_literal / t.printed);
  }
  // without the 1/a the literal quotient is not moduli independent
  double spread = 0.0;
  for (const auto& x : lit) spread = std::max(spread, std::abs(x - lit[0]));
  CHECK(spread > 1e-3);
}

TEST_CASE("genus-zero affine reparametrization changes ln tau by a constant") {
  // p(w) and p(s w + t) describe the same cover
  const cplx s(1.3, -0.4), sh(0.2, 0.7);
  auto compose = [&](const Polynomial& p) {
    Polynomial q = Polynomial::constant(0.0), pw = Polynomial::constant(1.0);
    const Polynomial lin({sh, s});
    for (int i = 0; i <= p.degree(); ++i) {
      q = q + pw * p.coeff(i);
      pw = pw * lin;
    }
    return q;
  };
  const Polynomial p1({0.3, -2.0, 0.0, 1.0}), p2({-0.1, -1.6, 0.0, 1.0});
  const cplx d1 = log_ratio(tau_genus0(Rational(compose(p1))), tau_genus0(Rational(p1)));
  const cplx d2 = log_ratio(tau_genus0(Rational(compose(p2))), tau_genus0(Rational(p2)));
  CHECK(std::abs(std::exp(d1 - d2) - 1.0) < 1e-7);
}

TEST_CASE("genus one: lambda-symmetric curve gives finite nonzero tau") {
  curve::HyperellipticCurve c({{-2.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  const auto t = tau_genus1(c);
  const cplx v = t.value();
  CHECK(std::isfinite(std::abs(v)));
  CHECK(std::abs(v) > 0.0);
  CHECK(t.factors.size() == 7);
}

TEST_CASE("genus two: zeta independence") {
  curve::HyperellipticCurve c({{-2.1, 0.3}, {-1.2, -0.2}, {-0.3, 0.4}, {0.6, 0.1}, {1.4, -0.3}, {2.2, 0.2}});
  curve::AbelMap abel(c);
  const auto rc = curve::riemann_constants(abel);
  const auto path = tau_higher_zeta_path(abel, rc, {-0.9, 1.1}, {0.8, 0.9}, 1);
  MESSAGE("zeta path relative change " << path.relative_change << ", lattice residual "
                                       << path.start.lattice_residual);
  CHECK(path.relative_change < 1e-5);
  // the constituents themselves move; only their combination is constant
  double moved = 0.0;
  for (size_t i = 0; i < path.end.tau.factors.size(); ++i)
    moved = std::max(moved, std::abs(path.end.tau.factors[i].weight *
                                     (path.end.tau.factors[i].log - path.start.tau.factors[i].log)));
  MESSAGE("largest constituent change " << moved);
  CHECK(moved > 1e-2);
}
