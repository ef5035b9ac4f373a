#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hurwitz/errors.hpp"
#include "json.hpp"

namespace hurwitz::report {

using nlohmann::json;

// Complex numbers travel as [re, im].
json to_json(cplx z);
json to_json(const std::vector<cplx>& v);
json to_json(const Eigen::VectorXcd& v);
json to_json(const Eigen::MatrixXcd& m);  // row-major list of rows
cplx complex_from_json(const json& j);   // accepts [re, im] or a bare number

struct Discrepancy {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  // NaN never passes.
  bool pass() const { return value <= tolerance; }
};

// Named tolerances with pinned defaults. Overrides must name a known entry and be > 0.
class Tolerances {
 public:
  Tolerances();
  double operator[](const std::string& name) const;
  void set(const std::string& name, double value);
  // "name=value"; throws InvalidInput on malformed text or unknown names.
  void set(const std::string& assignment);
  const std::map<std::string, double>& all() const { return table_; }

 private:
  std::map<std::string, double> table_;
};

struct Report {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  json certificates = json::object();
  std::vector<Discrepancy> discrepancies;
  double elapsed = 0.0;

  // Records value against tolerance and returns whether it passed.
  bool check(const std::string& name, double value, double tolerance);
  bool ok() const;
  std::vector<std::string> failures() const;
  // elapsed is written only when requested; everything else is deterministic.
  json to_json(bool with_elapsed = true) const;
};

// Long tables go to CSV: one header row, numeric cells at full precision.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace hurwitz::report
