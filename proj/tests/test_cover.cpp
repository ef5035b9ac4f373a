#include <map>
#include <random>

#include "doctest.h"
#include "hurwitz/cover.hpp"

using namespace hurwitz;
using namespace hurwitz::cover;

namespace {
// Independent composition oracle on 1-based cycle notation.
std::map<int, int> as_map(int n, const Cycles& cs) {
  std::map<int, int> m;
  for (int i = 1; i <= n; ++i) m[i] = i;
  for (const auto& c : cs)
    for (size_t i = 0; i < c.size(); ++i) m[c[i]] = c[(i + 1) % c.size()];
  return m;
}
bool product_is_identity(int n, const std::vector<Cycles>& perms) {
  for (int s = 1; s <= n; ++s) {
    int v = s;
    for (const auto& p : perms) v = as_map(n, p)[v];
    if (v != s) return false;
  }
  return true;
}
CoverSpec make(int n, const Cycles& inf, const std::vector<Cycles>& fin) {
  CoverSpec s;
  s.degree = n;
  s.sigma_infinity = from_cycles(n, inf);
  for (size_t i = 0; i < fin.size(); ++i) s.branches.push_back({cplx(static_cast<double>(i) + 1.0, 0.5), from_cycles(n, fin[i])});
  s.base_point = cplx(0.0, -3.0);
  return s;
}
}  // namespace

TEST_CASE("double cover branched at one finite point and infinity") {
  // (12)(12) is the identity, so this is the cover z = w^2.
  CHECK(product_is_identity(2, {{{1, 2}}, {{1, 2}}}));
  auto r = validate_cover(make(2, {{1, 2}}, {{{1, 2}}}));
  CHECK(r.genus == 0);
  REQUIRE(r.conical_points.size() == 1);
  CHECK(r.conical_points[0].cone_angle == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("four simple branch points, two sheets: genus one, two Euclidean ends") {
  auto r = validate_cover(make(2, {}, {{{1, 2}}, {{1, 2}}, {{1, 2}}, {{1, 2}}}));
  CHECK(r.genus == 1);
  CHECK(r.ends.k == std::vector<int>{1, 1});
}

TEST_CASE("three sheets, sigma_0 = (123) with alternating transpositions") {
  const std::vector<Cycles> perms{{{1, 2, 3}}, {{1, 2}}, {{2, 3}}, {{1, 2}}, {{2, 3}}};
  const bool oracle = product_is_identity(3, perms);
  CHECK_FALSE(oracle);
  CHECK_THROWS_WITH_AS(validate_cover(make(3, {{1, 2, 3}}, {{{1, 2}}, {{2, 3}}, {{1, 2}}, {{2, 3}}})),
                       doctest::Contains("ProductNotIdentity"), hurwitz::Error);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_WITH_AS(validate_cover(make(3, {}, {{{1, 2}}, {{1, 2}}})), doctest::Contains("NonTransitive"),
                       hurwitz::Error);
  auto s = make(2, {}, {{{1, 2}}, {{1, 2}}});
  s.branches[1].value = s.branches[0].value;
  CHECK_THROWS_WITH_AS(validate_cover(s), doctest::Contains("DuplicateCriticalValue"), hurwitz::Error);
  s = make(2, {}, {{{1, 2}}, {{1, 2}}});
  s.base_point = s.branches[0].value;
  CHECK_THROWS_WITH_AS(validate_cover(s), doctest::Contains("BasePointCollision"), hurwitz::Error);
  CHECK_THROWS_AS(from_cycles(3, {{1, 2}, {2, 3}}), hurwitz::Error);
  CHECK_THROWS_AS(from_cycles(3, {{1, 4}}), hurwitz::Error);
}

TEST_CASE("Riemann–Hurwitz evaluations") {
  CHECK(genus_from_profile({1, 1, 1, 1}, {1, 1}) == 1);
  for (int n = 2; n <= 7; ++n) CHECK(genus_from_profile(std::vector<int>(n - 1, 1), {n}) == 0);
  CHECK(genus_from_profile({1, 1, 1, 1}, {1, 1, 1}) == 0);
  CHECK_THROWS_WITH_AS(genus_from_profile({1}, {1, 1}), doctest::Contains("NonIntegerGenus"), hurwitz::Error);
  CHECK_THROWS_WITH_AS(genus_from_profile({}, {1, 1}), doctest::Contains("NegativeGenus"), hurwitz::Error);
}

TEST_CASE("reference surface") {
  CoverSpec s = make(3, {}, {{{1, 2}}, {{1, 2}}, {{2, 3}}, {{2, 3}}});
  auto cones = reference_surface(s);
  CHECK(cones.size() == 3);
  for (auto& c : cones) CHECK(c.k == 1);
  s = make(3, {{1, 2, 3}}, {{{1, 2}}, {{2, 3}}});
  // sigma_0 (123) then (12) then (23)
  CHECK(product_is_identity(3, {{{1, 2, 3}}, {{1, 2}}, {{2, 3}}}));
  cones = reference_surface(s);
  REQUIRE(cones.size() == 1);
  CHECK(cones[0].angle == doctest::Approx(6.0 * M_PI));
}

TEST_CASE("random transitive tuples with identity product give integral genus") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 2 + static_cast<int>(rng() % 4);
    CoverSpec s;
    s.degree = n;
    s.base_point = cplx(0.0, -5.0);
    Permutation prod = identity_permutation(n);
    for (int i = 0; i < m; ++i) {
      Permutation p = identity_permutation(n);
      std::shuffle(p.begin(), p.end(), rng);
      if (is_identity(p)) continue;
      s.branches.push_back({cplx(static_cast<double>(i), 1.0), p});
      prod = compose(prod, p);
    }
    s.sigma_infinity = inverse(prod);
    try {
      auto r = validate_cover(s);
      ++tested;
      CHECK(r.genus >= 0);
      int k = 0;
      for (int kk : r.ends.k) k += kk;
      CHECK(k == n);
      size_t cycles = 0;
      for (const auto& cs : r.cycle_structures) cycles += cs.size();
      CHECK(r.conical_points.size() == cycles);
      for (auto& c : r.conical_points) CHECK(c.cone_angle > 2.0 * M_PI + 1.0);
    } catch (const hurwitz::Error& e) {
      CHECK(e.code() == ErrorCode::NonTransitive);
    }
  }
  CHECK(tested >= 50);
}

TEST_CASE("JSON round trip") {
  auto j = nlohmann::json::parse(R"({"degree":2,"sigma_infinity":[],"branches":[
    {"value":[0,0],"sigma":[[1,2]]},{"value":[1,0],"sigma":[[1,2]]},
    {"value":[2,0],"sigma":[[1,2]]},{"value":[3,1],"sigma":[[1,2]]}],"base_point":[0,-1]})");
  auto r = validate_cover(cover_from_json(j));
  CHECK(r.genus == 1);
  CHECK(to_json(r)["ends"]["k"].size() == 2);
}
