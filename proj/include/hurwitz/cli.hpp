#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/acceptance.hpp"

namespace hurwitz::cli {

enum Exit : int { kOk = 0, kNumericalFailure = 1, kUsage = 2 };

// Default output directory when --out is absent; without it reports go to stdout.
inline constexpr const char* kOutDirVariable = "HURWITZ_OUT_DIR";

struct RunConfig {
  std::string group, command;   // e.g. "tau", "poly"
  std::string input;            // JSON file, optional for some commands
  std::string out;              // report path
  std::vector<std::string> tolerances;  // name=value
  std::uint64_t seed = acceptance::kDefaultSeed;
  std::optional<int> nodes;     // table length / mode count where applicable
  std::optional<int> k;
  std::optional<double> R;
  std::optional<std::string> lambda;  // "re" or "re,im"
  std::vector<int> only;        // acceptance subset
};

// Dispatches one command. Reports go to the configured destination; the one-line
// verdict goes to log.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

// Argument parsing plus run(); --help exits 0, parse errors exit 2.
int main_entry(int argc, char** argv);

}  // namespace hurwitz::cli
