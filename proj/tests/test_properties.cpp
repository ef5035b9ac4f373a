#include "doctest.h"
#include "hurwitz/acceptance.hpp"

using namespace hurwitz;
using namespace hurwitz::acceptance;

namespace {

void require_green(const Report& r) {
  for (const auto& d : r.discrepancies) {
    INFO(d.name << " = " << d.value << " (tolerance " << d.tolerance << ")");
    CHECK(d.pass());
  }
  CHECK(!r.discrepancies.empty());
}

}  // namespace

// Seeds differ from the acceptance run so the suites see fresh cases.
TEST_CASE("theta quasi-periodicity") {
  Report r;
  Rng rng(101);
  property_theta_quasi_periodicity(r, rng, Tolerances());
  require_green(r);
}

TEST_CASE("Bessel Wronskian") {
  Report r;
  Rng rng(102);
  property_bessel_wronskian(r, rng, Tolerances());
  require_green(r);
}

TEST_CASE("Schwarzian cocycle and Moebius invariance") {
  Report r;
  Rng rng(103);
  property_schwarzian(r, rng, Tolerances());
  require_green(r);
}

TEST_CASE("prime form antisymmetry") {
  Report r;
  Rng rng(104);
  property_prime_form_antisymmetry(r, rng, Tolerances());
  require_green(r);
}

TEST_CASE("Im B positive definite on random curves") {
  Report r;
  Rng rng(105);
  property_imb_positive(r, rng, Tolerances());
  require_green(r);
}

TEST_CASE("trapezoid certificates bound the true error") {
  Report r;
  Rng rng(106);
  property_quadrature_certificates(r, rng, Tolerances());
  require_green(r);
}

TEST_CASE("tolerance table rejects unknown names and nonpositive values") {
  Tolerances t;
  CHECK(t["rauch"] == 1e-5);
  t.set("rauch=2e-5");
  CHECK(t["rauch"] == 2e-5);
  CHECK_THROWS_AS(t.set("missing=1"), Error);
  CHECK_THROWS_AS(t.set("rauch=0"), Error);
  CHECK_THROWS_AS(t.set("rauch=1e-5x"), Error);
  CHECK_THROWS_AS(t.set("rauch"), Error);
}

TEST_CASE("a failing discrepancy fails the report, NaN included") {
  Report r;
  CHECK(r.ok());
  r.check("a", 1.0, 2.0);
  CHECK(r.ok());
  r.check("b", std::nan(""), 1.0);
  CHECK(!r.ok());
  CHECK(r.failures() == std::vector<std::string>{"b"});
  CHECK(r.to_json()["discrepancies"][1]["value"].is_null());
}
