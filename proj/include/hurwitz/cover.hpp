#pragma once

#include "json.hpp"
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz::cover {

// perm[i] is the image of sheet i (0-based internally).
using Permutation = std::vector<int>;
using Cycles = std::vector<std::vector<int>>;  // 1-based, as serialized

Permutation identity_permutation(int n);
// Throws InvalidInput unless the cycles are disjoint and within 1..n.
Permutation from_cycles(int n, const Cycles& cycles);
Cycles to_cycles(const Permutation& p, bool include_fixed = false);
// Sheet i goes first through a, then through b.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);

struct Branch {
  cplx value;
  Permutation sigma;
};

struct CoverSpec {
  int degree = 0;
  Permutation sigma_infinity;
  std::vector<Branch> branches;
  cplx base_point = 0.0;
};

struct ConicalPoint {
  cplx critical_value;
  int multiplicity = 1;  // zero order of df
  double cone_angle = 0.0;
  std::vector<int> cycle;  // 1-based sheets
};

struct EndProfile {
  std::vector<int> k;
  std::vector<double> angles;
};

struct ReferenceCone {
  int k = 1;
  double angle = 0.0;
  cplx tip_over = 0.0;
};

struct CoverReport {
  bool transitive = false;
  bool product_identity = false;
  std::vector<Cycles> cycle_structures;  // per finite branch
  Cycles infinity_cycles;
  std::vector<ConicalPoint> conical_points;
  EndProfile ends;
  int genus = 0;
};

// Throws NonTransitive, ProductNotIdentity, DuplicateCriticalValue,
// BasePointCollision or InvalidInput.
CoverReport validate_cover(const CoverSpec& spec);

// Riemann–Hurwitz from multiplicities: sum ell - sum (k+1) = 2g - 2.
int genus_from_profile(const std::vector<int>& ell, const std::vector<int>& k);
int genus_from_riemann_hurwitz(const CoverSpec& spec);

std::vector<ReferenceCone> reference_surface(const CoverSpec& spec);

CoverSpec cover_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CoverReport& r);

}  // namespace hurwitz::cover
