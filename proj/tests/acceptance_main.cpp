// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "hurwitz/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace hurwitz::acceptance;
  std::uint64_t seed = kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const hurwitz::report::Tolerances tol;
  bool all = true;
  for (int id = 1; id <= criterion_count(); ++id) {
    const auto c = run_criterion(id, tol, seed);
    std::printf("%s criterion %d: %s (%.2f s, budget %.0f s)\n", c.pass() ? "PASS" : "FAIL", id, c.title.c_str(),
                c.runtime, c.budget);
    for (const auto& d : c.report.discrepancies)
      std::printf("    %-40s %.3e  tol %.1e  %s\n", d.name.c_str(), d.value, d.tolerance, d.pass() ? "ok" : "FAILED");
    if (!c.error.empty()) std::printf("    error: %s\n", c.error.c_str());
    if (c.runtime >= c.budget) std::printf("    runtime budget exceeded\n");
    std::fflush(stdout);
    all = all && c.pass();
  }
  return all ? 0 : 1;
}
