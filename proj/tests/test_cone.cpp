#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hurwitz/cone.hpp"

using namespace hurwitz;
using namespace hurwitz::cone;
using std::numbers::pi;

TEST_CASE("zero spectrum") {
  auto s = dtn_zero_spectrum({1, 1.0}, 3);
  CHECK(s.values == std::vector<double>{0, 1, 2, 3});
  CHECK(s.multiplicities == std::vector<int>{1, 2, 2, 2});
  auto s2 = dtn_zero_spectrum({2, 1.0}, 2);
  CHECK(s2.values[1] == doctest::Approx(0.5));
}

TEST_CASE("exterior zeta determinant closed form") {
  CHECK(std::abs(detstar_N0_model({1, 1.0}) - 2 * pi) < 1e-12);
  CHECK(std::abs(detstar_N0_model({2, 1.0}) - 4 * pi) < 1e-12);
  for (int k : {1, 2, 3})
    for (double R : {0.5, 1.0, 1.7})
      CHECK(std::abs(detstar_N0_model({k, R}) - k * R * R * detstar_N0_model({1, 1.0})) < 1e-12 * k * R * R);
  CHECK(std::abs(detstar_N0_model({1, 1.0}, Family::Full) - pi) < 1e-12);
}

TEST_CASE("zeta derivative oracle from the Riemann zeta function") {
  // -d/ds [2 a^{-s} zeta(s)] at 0 by a fourth-order central difference.
  const double a = 1.0 / (3.0 * 0.8 * 0.8);
  auto F = [&](double s) { return 2.0 * std::pow(a, -s) * boost::math::zeta(s); };
  const double h = 1e-3;
  const double d = (-F(2 * h) + 8 * F(h) - 8 * F(-h) + F(-2 * h)) / (12 * h);
  CHECK(std::abs(std::exp(-d) - detstar_N0_model({3, 0.8})) < 1e-9 * detstar_N0_model({3, 0.8}));
}

TEST_CASE("exterior eigenvalues: symmetry, limits and reality") {
  const ConeCircle c{2, 1.3};
  const cplx lam(0.0, 1e-8);
  for (int n : {1, 2, 5, 17}) {
    CHECK(dtn_exterior_eigenvalue(n, c, lam) == dtn_exterior_eigenvalue(-n, c, lam));
    // leading correction is of order (t R)^{2 nu}
    const double nu = c.order(n);
    CHECK(std::abs(dtn_exterior_eigenvalue(n, c, lam) - n / (c.k * c.R * c.R)) < 10.0 * std::pow(1e-8 * c.R, 2.0 * std::min(nu, 1.0)) / c.R + 1e-12 * n);
  }
  for (double t : {1e-3, 0.1, 1.0, 4.0})
    for (int n : {0, 1, 3, 40}) {
      const cplx mu = dtn_exterior_eigenvalue(n, c, cplx(0.0, t));
      CHECK(std::abs(mu.imag()) < 1e-12 * std::abs(mu));
      CHECK(mu.real() > 0.0);
    }
  const cplx m0 = dtn_exterior_eigenvalue(0, c, lam);
  CHECK(std::abs(m0 * (-c.R * std::log(lam)) - 1.0) < 2.0 / std::abs(std::log(lam)));
}

TEST_CASE("flat case k = 1, R = 1 against integer-order modified Bessel oracles") {
  const ConeCircle c{1, 1.0};
  const int N = 4000;
  for (double t : {0.05, 0.6, 2.5}) {
    // mu_n = t (K_{n+1}/K_n + I_{n+1}/I_n); K ratios by forward recurrence,
    // I ratios by backward (Miller) recurrence.
    std::vector<double> rk(N + 1), qi(N + 1);
    rk[0] = boost::math::cyl_bessel_k(1, t) / boost::math::cyl_bessel_k(0, t);
    for (int n = 1; n <= N; ++n) rk[n] = 1.0 / rk[n - 1] + 2.0 * n / t;
    double q = 0.0;
    for (int n = N + 200; n >= 1; --n) {
      q = 1.0 / (2.0 * n / t + q);
      if (n - 1 <= N) qi[n - 1] = q;
    }
    auto mu = [&](int n) { return t * (rk[n] + qi[n]); };
    for (int n = 0; n <= 12; ++n) {
      const double kp = n == 0 ? -boost::math::cyl_bessel_k(1, t)
                               : -0.5 * (boost::math::cyl_bessel_k(n - 1, t) + boost::math::cyl_bessel_k(n + 1, t));
      const double ip = n == 0 ? boost::math::cyl_bessel_i(1, t)
                               : 0.5 * (boost::math::cyl_bessel_i(n - 1, t) + boost::math::cyl_bessel_i(n + 1, t));
      const double direct = -t * kp / boost::math::cyl_bessel_k(n, t) + t * ip / boost::math::cyl_bessel_i(n, t);
      CHECK(std::abs(mu(n) - direct) < 1e-12 * direct);
      CHECK(std::abs(jump_eigenvalue(n, c, cplx(0.0, t)) - direct) < 1e-11 * direct);
    }
    const double c2 = t * t / 2.0;
    double logdet_ref = std::log(mu(0)) + std::log(pi) + 2.0 * c2 * pi * pi / 6.0;
    for (int n = 1; n <= N; ++n) logdet_ref += 2.0 * (std::log(mu(n) / (2.0 * n)) - c2 / (double(n) * n));
    const auto d = detzeta_N_model(c, -t * t);
    CHECK(std::abs(d.log_det - logdet_ref) < 1e-8);
    CHECK(d.certificate < 1e-8);
  }
}

TEST_CASE("determinant approaches the zero-energy value with the log envelope") {
  for (int k : {1, 2}) {
    const ConeCircle c{k, 1.2};
    for (double t : {1e-4, 1e-6, 1e-8}) {
      const auto d = detzeta_N_model(c, -t * t);
      const double L = std::log(t);
      const double lhs = std::exp(d.log_det) * (-c.R * L);
      CHECK(std::abs(lhs / detstar_N0_model(c, Family::Full) - 1.0) < 2.0 / std::abs(L));
      CHECK(std::abs(d.phase) < 1e-10);
    }
  }
}

TEST_CASE("determinant increases with |lambda^2| on the negative axis") {
  const ConeCircle c{2, 1.0};
  double prev = -1e300;
  for (double ls : {-1e-8, -1e-6, -1e-4, -1e-2, -0.1, -1.0}) {
    const double v = detzeta_N_model(c, ls).log_det;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("mu0 asymptotic fit selects the Bessel-series constant") {
  std::vector<double> t;
  for (int j = 2; j <= 8; ++j) t.push_back(std::pow(10.0, -j));
  for (int k : {1, 2, 3}) {
    const ConeCircle c{k, 1.0};
    const auto f = mu0_asymptotic_fit(c, t);
    CHECK(f.leading_residual < f.leading_envelope);
    CHECK(f.selects_bessel);
    CHECK(f.distance_bessel < 1e-6);
  }
  const auto f1 = mu0_asymptotic_fit({1, 1.0}, t), f3 = mu0_asymptotic_fit({3, 1.0}, t);
  for (size_t j = 0; j < t.size(); ++j) CHECK(f1.mu0[j] == f3.mu0[j]);
}

TEST_CASE("spectral shift asymptotics") {
  const ConeCircle c{1, 1.0};
  const double x = spectral_shift(c, 1e-6) * std::log(1e-6);
  CHECK(std::abs(x - 1.0) < 0.1);
  CHECK(std::abs(spectral_shift(c, -1e-6)) < 1e-12);
  std::vector<double> ls;
  for (int j = 2; j <= 8; ++j) ls.push_back(std::pow(10.0, -2 * j));
  std::vector<ConeCircle> three{{1, 1.0}, {2, 1.0}, {3, 1.0}};
  const auto f = spectral_shift_asymptotic(three, ls);
  CHECK(std::abs(f.pointwise_leading / 3.0 - 1.0) < 0.1);
  CHECK(std::abs(f.fitted_leading / 3.0 - 1.0) < 0.1);
  double sum = 0.0;
  for (auto& cc : three) sum += spectral_shift(cc, 1e-6);
  CHECK(std::abs(sum - spectral_shift(three, 1e-6)) < 1e-14);
}
