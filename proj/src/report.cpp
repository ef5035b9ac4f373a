#include "hurwitz/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

namespace hurwitz::report {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

json to_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

json to_json(const Eigen::MatrixXcd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Eigen::VectorXcd(m.row(i).transpose())));
  return a;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorCode::InvalidInput, "expected a number or [re, im], got " + j.dump());
}

Tolerances::Tolerances()
    : table_{
          {"polynomial.relative", 1e-9},
          {"three_pole.variance", 1e-8},
          {"genus0.pde", 1e-6},
          {"genus0.cauchy_riemann", 1e-5},
          {"rauch", 1e-5},
          {"imb.identity", 1e-8},
          {"imb.fd", 1e-5},
          {"genus1.pde", 1e-5},
          {"genus2.zeta", 1e-5},
          {"genus2.pde", 1e-4},
          {"varodin", 1e-5},
          {"clue", 1e-5},
          {"smatrix.symmetry", 1e-8},
          {"cone.det", 1e-12},
          {"cone.dtn", 1e-6},
          {"cone.mu0_distance", 1e-6},
          {"cone.shift", 0.1},
          {"property.theta", 1e-10},
          {"property.bessel", 1e-10},
          {"property.schwarzian", 1e-8},
          {"property.prime_form", 1e-10},
          {"property.imb_symmetry", 1e-10},
          {"property.quadrature_floor", 1e-12},
          {"certificate", 1e-6},
      } {}

double Tolerances::operator[](const std::string& name) const {
  const auto it = table_.find(name);
  if (it == table_.end()) fail(ErrorCode::InvalidInput, "unknown tolerance '" + name + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  if (!table_.count(name)) fail(ErrorCode::InvalidInput, "unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value))
    fail(ErrorCode::InvalidInput, "tolerance '" + name + "' must be positive and finite");
  table_[name] = value;
}

void Tolerances::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    fail(ErrorCode::InvalidInput, "tolerance override must read name=value, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    fail(ErrorCode::InvalidInput, "tolerance value '" + text + "' is not a number");
  set(name, v);
}

bool Report::check(const std::string& name, double value, double tolerance) {
  discrepancies.push_back({name, value, tolerance});
  return discrepancies.back().pass();
}

bool Report::ok() const {
  for (const auto& d : discrepancies)
    if (!d.pass()) return false;
  return true;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& d : discrepancies)
    if (!d.pass()) out.push_back(d.name);
  return out;
}

json Report::to_json(bool with_elapsed) const {
  json d = json::array();
  for (const auto& x : discrepancies) {
    // NaN is not representable in JSON; a null value marks it.
    json v = std::isfinite(x.value) ? json(x.value) : json(nullptr);
    d.push_back({{"name", x.name}, {"value", v}, {"tolerance", x.tolerance}, {"pass", x.pass()}});
  }
  json j = {{"command", command},     {"inputs", inputs}, {"outputs", outputs}, {"discrepancies", d},
            {"certificates", certificates}, {"pass", ok()}};
  if (with_elapsed) j["elapsed"] = elapsed;
  return j;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

}  // namespace hurwitz::report
