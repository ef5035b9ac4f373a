#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hurwitz/variational.hpp"

using namespace hurwitz;
using namespace hurwitz::variational;
using std::numbers::pi;

namespace {

HyperellipticCurve genus1() { return HyperellipticCurve({{-1.7, 0.2}, {-0.4, -0.3}, {0.5, 0.25}, {1.6, -0.1}}); }
HyperellipticCurve genus2() {
  return HyperellipticCurve({{-2.1, 0.3}, {-1.2, -0.2}, {-0.3, 0.4}, {0.6, 0.1}, {1.4, -0.3}, {2.2, 0.2}});
}

}  // namespace

TEST_CASE("Rauch formula against finite differences of B") {
  for (const auto& c : {genus1(), genus2()}) {
    const auto r = rauch_check(c, 1);
    MESSAGE("g=" << c.genus() << " Rauch discrepancy " << r.discrepancy << " certificate " << r.certificate);
    CHECK(r.discrepancy < 1e-5);
    CHECK(r.symmetry < 1e-14);
    CHECK(r.certificate < 1e-6);
  }
}

TEST_CASE("det Im B: trace, contour and finite-difference routes") {
  for (const auto& c : {genus1(), genus2()}) {
    const auto r = det_imB_derivative(c, 2);
    MESSAGE("g=" << c.genus() << " identity " << r.identity << " fd " << r.fd_discrepancy);
    CHECK(r.identity < 1e-8);
    CHECK(r.fd_discrepancy < 1e-5);
    CHECK(std::abs(r.fd_conjugate - std::conj(r.fd)) < 1e-12);
  }
}

TEST_CASE("governing-equation contour equals the residue -S_B(0)/12") {
  const auto c = genus1();
  const auto v = vardwa_rhs(c, 0);
  CHECK(std::abs(v.contour.value - v.residue) < 1e-7);
}

TEST_CASE("genus-zero moduli motion") {
  const Polynomial p({0.4, -2.2, 0.0, 1.0});
  const auto cd = critical_data(p);
  const auto q = move_critical_value(p, 0, {1e-3, 2e-3});
  const auto cq = critical_data(q);
  // the other critical value stays put, the moved one shifts by dz
  for (cplx z : cq.values) {
    double best = 1e300;
    for (size_t i = 0; i < cd.values.size(); ++i) {
      const cplx target = cd.values[i] + (i == 0 ? cplx(1e-3, 2e-3) : cplx(0.0));
      best = std::min(best, std::abs(z - target));
    }
    CHECK(best < 1e-13);
  }
}

TEST_CASE("governing equation in genus zero") {
  for (const Polynomial& p : {Polynomial({0.4, -2.2, 0.0, 1.0}), Polynomial({cplx(0.1, 0.3), cplx(-1.0, 0.5), 0.0, 1.0})})
    for (int m = 0; m < 2; ++m) {
      const auto r = genus0_pde_check(p, m);
      MESSAGE("fd " << r.fd << " rhs " << r.rhs << " CR " << r.cauchy_riemann);
      CHECK(r.discrepancy < 1e-6);
      CHECK(r.cauchy_riemann < 1e-5);
    }
}

TEST_CASE("governing equation in genus one") {
  const auto c = genus1();
  for (int m : {0, 3}) {
    const auto r = genus1_pde_check(c, m);
    MESSAGE("fd " << r.fd << " rhs " << r.rhs);
    CHECK(r.discrepancy < 1e-5);
  }
}

TEST_CASE("Schiffer connection chains with the contour and det Im B terms") {
  const auto r = varodin_rhs(genus1(), 1);
  MESSAGE("r+ " << std::abs(r.r_plus) << " r- " << std::abs(r.r_minus));
  CHECK(std::min(std::abs(r.r_plus), std::abs(r.r_minus)) < 1e-5);
}

TEST_CASE("S-matrix block and the Schiffer identity at ell = 2") {
  for (const auto& c : {genus1(), genus2()}) {
    const auto r = clue_identity_check(c, 2);
    MESSAGE("g=" << c.genus() << " discrepancy " << r.discrepancy << " certificate " << r.block.certificate);
    CHECK(r.discrepancy < 1e-5);
    CHECK(r.block.symmetry < 1e-8);
    CHECK(r.block.bergman >= 0.0);
  }
  // a 3x3 block at a regular point is symmetric as well
  const auto c = genus2();
  const auto b = smatrix_hh_zero(c, c.regular_chart({0.1, 1.3}, 1), 4);
  CHECK(b.symmetry < 1e-8);
}

TEST_CASE("A matrix entries and the two trace routes") {
  for (int ell = 2; ell <= 5; ++ell) {
    const auto a = amatrix(ell);
    for (int i = 1; i < ell; ++i)
      for (int j = 1; j < ell; ++j) {
        const double expected = i + j == ell ? std::sqrt(double(i) * j) / ell / ell : 0.0;
        CHECK(std::abs(a(i - 1, j - 1) - expected) < 1e-15);
      }
    CMatrix s = CMatrix::Random(ell - 1, ell - 1);
    s = (s + s.transpose()).eval();
    const auto t = trace_identity_check(s);
    CHECK(std::abs(t.ratio - double(ell)) < 1e-12);
  }
}

TEST_CASE("Green pairing normalization") {
  for (int ell = 2; ell <= 4; ++ell)
    for (int k = 1; k < ell; ++k) {
      CHECK(std::abs(std::abs(green_pairing(ell, k, PairingConvention::Decaying)) - 1.0) < 1e-12);
      CHECK(std::abs(green_pairing(ell, k, PairingConvention::Printed)) < 1e-10);
    }
}

TEST_CASE("governing equation in genus two") {
  const auto r = genus2_pde_check(genus2(), 2, {-0.4, 1.2});
  MESSAGE("fd " << r.fd << " rhs " << r.rhs << " discrepancy " << r.discrepancy);
  CHECK(r.discrepancy < 1e-4);
}
