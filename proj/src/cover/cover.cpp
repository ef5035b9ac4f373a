#include "hurwitz/cover.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace hurwitz::cover {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_permutation(const Permutation& p, int n) {
  if (static_cast<int>(p.size()) != n) fail(ErrorCode::InvalidInput, "permutation acts on wrong number of sheets");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) fail(ErrorCode::InvalidInput, "not a permutation");
    seen[v] = true;
  }
}

bool transitive(int n, const std::vector<const Permutation*>& gens) {
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (const Permutation* g : gens) {
      const int t = (*g)[s];
      if (!seen[t]) {
        seen[t] = true;
        ++count;
        stack.push_back(t);
      }
    }
  }
  return count == n;
}

cplx json_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::InvalidInput, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Permutation identity_permutation(int n) {
  Permutation p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation from_cycles(int n, const Cycles& cycles) {
  if (n < 1) fail(ErrorCode::InvalidInput, "degree must be positive");
  Permutation p = identity_permutation(n);
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (const auto& c : cycles) {
    for (int v : c) {
      if (v < 1 || v > n) fail(ErrorCode::InvalidInput, "sheet index out of range");
      if (used[v - 1]) fail(ErrorCode::InvalidInput, "cycles are not disjoint");
      used[v - 1] = true;
    }
    for (size_t i = 0; i < c.size(); ++i) p[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  }
  return p;
}

Cycles to_cycles(const Permutation& p, bool include_fixed) {
  Cycles out;
  std::vector<bool> seen(p.size(), false);
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> c;
    for (int v = static_cast<int>(s); !seen[v]; v = p[v]) {
      seen[v] = true;
      c.push_back(v + 1);
    }
    if (c.size() > 1 || include_fixed) out.push_back(c);
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

bool is_identity(const Permutation& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

CoverReport validate_cover(const CoverSpec& spec) {
  const int n = spec.degree;
  if (n < 1) fail(ErrorCode::InvalidInput, "degree must be positive");
  check_permutation(spec.sigma_infinity, n);
  double scale = 1.0;
  for (const auto& b : spec.branches) {
    check_permutation(b.sigma, n);
    scale = std::max(scale, std::abs(b.value));
  }
  for (size_t i = 0; i < spec.branches.size(); ++i) {
    if (std::abs(spec.branches[i].value - spec.base_point) <= 1e-12 * scale)
      fail(ErrorCode::BasePointCollision, "base point coincides with a critical value");
    for (size_t j = i + 1; j < spec.branches.size(); ++j)
      if (std::abs(spec.branches[i].value - spec.branches[j].value) <= 1e-12 * scale)
        fail(ErrorCode::DuplicateCriticalValue, "critical values must be distinct");
  }

  CoverReport r;
  std::vector<const Permutation*> gens{&spec.sigma_infinity};
  for (const auto& b : spec.branches) gens.push_back(&b.sigma);
  r.transitive = transitive(n, gens);
  if (!r.transitive) fail(ErrorCode::NonTransitive, "monodromy group is not transitive");

  Permutation prod = spec.sigma_infinity;
  for (const auto& b : spec.branches) prod = compose(prod, b.sigma);
  r.product_identity = is_identity(prod);
  if (!r.product_identity)
    fail(ErrorCode::ProductNotIdentity, "product sigma_0 sigma_1 ... sigma_M is not the identity");

  std::vector<int> ell;
  for (const auto& b : spec.branches) {
    Cycles cs = to_cycles(b.sigma);
    for (const auto& c : cs) {
      ConicalPoint cp;
      cp.critical_value = b.value;
      cp.multiplicity = static_cast<int>(c.size()) - 1;
      cp.cone_angle = kTwoPi * static_cast<double>(c.size());
      cp.cycle = c;
      r.conical_points.push_back(cp);
      ell.push_back(cp.multiplicity);
    }
    r.cycle_structures.push_back(std::move(cs));
  }
  r.infinity_cycles = to_cycles(spec.sigma_infinity, true);
  for (const auto& c : r.infinity_cycles) {
    r.ends.k.push_back(static_cast<int>(c.size()));
    r.ends.angles.push_back(kTwoPi * static_cast<double>(c.size()));
  }
  r.genus = genus_from_profile(ell, r.ends.k);
  return r;
}

int genus_from_profile(const std::vector<int>& ell, const std::vector<int>& k) {
  int s = 0;
  for (int l : ell) s += l;
  for (int kk : k) s -= kk + 1;
  if ((s + 2) % 2 != 0) fail(ErrorCode::NonIntegerGenus, "Riemann–Hurwitz sum is odd");
  const int g = (s + 2) / 2;
  if (g < 0) fail(ErrorCode::NegativeGenus, "Riemann–Hurwitz gives negative genus");
  return g;
}

int genus_from_riemann_hurwitz(const CoverSpec& spec) { return validate_cover(spec).genus; }

std::vector<ReferenceCone> reference_surface(const CoverSpec& spec) {
  const CoverReport r = validate_cover(spec);
  std::vector<ReferenceCone> out;
  for (int k : r.ends.k) out.push_back({k, kTwoPi * k, spec.base_point});
  return out;
}

CoverSpec cover_from_json(const nlohmann::json& j) {
  try {
    CoverSpec s;
    s.degree = j.at("degree").get<int>();
    s.sigma_infinity = from_cycles(s.degree, j.at("sigma_infinity").get<Cycles>());
    for (const auto& b : j.at("branches"))
      s.branches.push_back({json_complex(b.at("value")), from_cycles(s.degree, b.at("sigma").get<Cycles>())});
    s.base_point = j.contains("base_point") ? json_complex(j.at("base_point")) : cplx(0.0);
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("cover spec: ") + e.what());
  }
}

nlohmann::json to_json(const CoverReport& r) {
  nlohmann::json j;
  j["transitive"] = r.transitive;
  j["product_identity"] = r.product_identity;
  j["genus"] = r.genus;
  j["cycle_structures"] = r.cycle_structures;
  j["infinity_cycles"] = r.infinity_cycles;
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& c : r.conical_points)
    cps.push_back({{"critical_value", {c.critical_value.real(), c.critical_value.imag()}},
                   {"multiplicity", c.multiplicity},
                   {"cone_angle", c.cone_angle},
                   {"cycle", c.cycle}});
  j["conical_points"] = cps;
  j["ends"] = {{"k", r.ends.k}, {"angles", r.ends.angles}};
  return j;
}

}  // namespace hurwitz::cover
