#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hurwitz/report.hpp"

namespace hurwitz::acceptance {

using report::Report;
using report::Tolerances;

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr int kPropertyCases = 100;

struct Criterion {
  int id = 0;
  std::string title;
  double budget = 0.0;   // seconds
  double runtime = 0.0;
  Report report;
  std::string error;     // set when a check threw
  bool pass() const { return error.empty() && report.ok() && runtime < budget; }
};

// Ids 1..9.
int criterion_count();
const char* criterion_title(int id);
double criterion_budget(int id);
Criterion run_criterion(int id, const Tolerances& tol, std::uint64_t seed = kDefaultSeed);
// Empty selection runs all.
std::vector<Criterion> run_acceptance(const Tolerances& tol, std::uint64_t seed = kDefaultSeed,
                                      const std::vector<int>& only = {});
report::json to_json(const std::vector<Criterion>& results, bool with_elapsed = true);

// Randomized property suites; each appends its discrepancies to r.
using Rng = std::mt19937_64;
void property_theta_quasi_periodicity(Report& r, Rng& rng, const Tolerances& tol, int cases = kPropertyCases);
void property_bessel_wronskian(Report& r, Rng& rng, const Tolerances& tol, int cases = kPropertyCases);
void property_schwarzian(Report& r, Rng& rng, const Tolerances& tol, int cases = kPropertyCases);
void property_prime_form_antisymmetry(Report& r, Rng& rng, const Tolerances& tol, int cases = kPropertyCases);
void property_imb_positive(Report& r, Rng& rng, const Tolerances& tol, int cases = kPropertyCases);
void property_quadrature_certificates(Report& r, Rng& rng, const Tolerances& tol, int cases = kPropertyCases);

// Branch points with strictly increasing real parts, as the curve toolkit requires.
std::vector<cplx> random_branch_points(Rng& rng, int genus);

}  // namespace hurwitz::acceptance
