#include "hurwitz/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

#include "CLI11.hpp"
#include "hurwitz/cone.hpp"
#include "hurwitz/cover.hpp"
#include "hurwitz/tau.hpp"
#include "hurwitz/variational.hpp"

namespace hurwitz::cli {

namespace {

using report::complex_from_json;
using report::json;
using report::Report;
using report::to_json;
using report::Tolerances;
using std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a command needs besides its own parameters.
struct Context {
  const RunConfig& cfg;
  Tolerances tol;
  json input;
  Report report;
  // Extra long tables, written as CSV next to the report when it goes to a file.
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::vector<double>>>> tables;
};

json read_input(const RunConfig& cfg, bool required) {
  if (cfg.input.empty()) {
    if (required) throw UsageError(cfg.group + " " + cfg.command + " needs --input");
    return json::object();
  }
  std::ifstream in(cfg.input);
  if (!in) throw UsageError("cannot open input " + cfg.input);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("malformed JSON in " + cfg.input + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw UsageError(std::string("input is missing '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("input field '") + name + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const char* name, T fallback) {
  return j.contains(name) ? field<T>(j, name) : fallback;
}

cplx complex_field(const json& j, const char* name) {
  if (!j.contains(name)) throw UsageError(std::string("input is missing '") + name + "'");
  return complex_from_json(j.at(name));
}

std::vector<cplx> complex_list(const json& j, const char* name) {
  if (!j.contains(name) || !j.at(name).is_array())
    throw UsageError(std::string("input needs a list '") + name + "'");
  std::vector<cplx> v;
  for (const auto& x : j.at(name)) v.push_back(complex_from_json(x));
  return v;
}

curve::HyperellipticCurve curve_from(const json& j) { return curve::HyperellipticCurve(complex_list(j, "branch_points")); }

json tau_json(const tau::TauValue& t) {
  json factors = json::array();
  for (const auto& f : t.factors) factors.push_back({{"label", f.label}, {"log", to_json(f.log)}, {"weight", f.weight}});
  const cplx lt = t.log_tau();
  return {{"tau", to_json(t.value())},
          {"log_abs_tau", lt.real()},
          {"normalization_tag", t.normalization},
          {"diagnostics", {{"genus", t.genus}, {"log_tau", to_json(lt)}, {"factors", factors}}}};
}

json check_json(cplx lhs, cplx rhs, double discrepancy, double certificate, const json& config) {
  return {{"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}, {"discrepancy", discrepancy},
          {"certificate", certificate}, {"config", config}};
}

int ell_sum_mismatch(const cover::CoverReport& r) {
  int ell = 0, poles = 0;
  for (const auto& p : r.conical_points) ell += p.multiplicity;
  for (int k : r.ends.k) poles += k + 1;
  return std::abs((ell - poles) - (2 * r.genus - 2));
}

// ---------------------------------------------------------------------------

void cover_validate(Context& c) {
  const auto spec = cover::cover_from_json(c.input);
  c.report.inputs = c.input;
  try {
    const auto r = cover::validate_cover(spec);
    c.report.outputs = cover::to_json(r);
    c.report.check("cover.valid", 0.0, 0.0);
    c.report.check("cover.riemann_hurwitz", ell_sum_mismatch(r), 0.0);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) throw;
    c.report.outputs = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    c.report.check("cover.valid", 1.0, 0.0);
  }
}

void tau_poly(Context& c) {
  const specfun::Polynomial p(complex_list(c.input, "coefficients"));
  c.report.inputs = {{"coefficients", to_json(p.coeffs())}};
  const auto t = tau::tau_polynomial(p);
  // tau^24 by each route; their ratio is the leading-coefficient constant
  c.report.outputs = tau_json(t.tau);
  c.report.outputs["critical_points"] = to_json(t.critical_points);
  c.report.outputs["tau24_product"] = to_json(t.product);
  c.report.outputs["tau24_resultant"] = to_json(t.resultant);
  c.report.outputs["ratio"] = to_json(t.resultant / t.product);
  c.report.outputs["constant"] = to_json(t.constant);
  c.report.check("polynomial.relative", t.discrepancy, c.tol["polynomial.relative"]);
}

void tau_rational3(Context& c) {
  struct Sample {
    cplx a, b, c, d;
  };
  std::vector<Sample> samples;
  if (c.input.contains("samples")) {
    for (const auto& s : c.input.at("samples"))
      samples.push_back({complex_field(s, "a"), complex_field(s, "b"), complex_field(s, "c"),
                         s.contains("d") ? complex_field(s, "d") : cplx(0.0)});
  } else {
    acceptance::Rng rng(c.cfg.seed);
    std::normal_distribution<double> n(0.0, 1.0);
    auto z = [&] {
      const double re = n(rng);
      return cplx(re, n(rng));
    };
    for (int i = 0; i < c.cfg.nodes.value_or(20); ++i) {
      const cplx a = z(), b = z(), cc = z(), d = z();
      samples.push_back({a, b, cc, d});
    }
  }
  if (samples.empty()) throw UsageError("tau rational3 needs at least one sample");

  json in = json::array(), out = json::array();
  std::vector<cplx> corrected, assembly;
  for (const auto& s : samples) {
    in.push_back({{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"c", to_json(s.c)}, {"d", to_json(s.d)}});
    const auto t = tau::tau_three_poles(s.a, s.b, s.c, s.d);
    corrected.push_back(t.resultant / t.printed);
    assembly.push_back(t.e0 / t.printed);
    json o = tau_json(t.tau);
    o["M"] = to_json(t.m);
    o["tau24_printed"] = to_json(t.printed);
    o["tau24_resultant"] = to_json(t.resultant);
    o["tau24_resultant_literal"] = to_json(t.resultant_literal);
    o["tau24_assembly"] = to_json(t.e0);
    o["resultant_over_printed"] = to_json(corrected.back());
    o["assembly_over_printed"] = to_json(assembly.back());
    out.push_back(o);
  }
  c.report.inputs = {{"samples", in}, {"seed", c.cfg.seed}};
  c.report.outputs = {{"samples", out}};
  if (samples.size() > 1) {
    auto spread = [](const std::vector<cplx>& v) {
      double s = 0.0;
      for (cplx x : v) s = std::max(s, std::abs(x / v.front() - 1.0));
      return s;
    };
    c.report.check("three_pole.resultant_constancy", spread(corrected), c.tol["three_pole.variance"]);
    c.report.check("three_pole.assembly_constancy", spread(assembly), c.tol["three_pole.variance"]);
  }
}

void tau_genus1(Context& c) {
  const auto cv = curve_from(c.input);
  if (cv.genus() != 1) throw UsageError("tau genus1 needs four branch points");
  c.report.inputs = {{"branch_points", to_json(cv.branch_points())}};
  const auto t = tau::tau_genus1(cv);
  c.report.outputs = tau_json(t);
  c.report.outputs["B"] = to_json(cv.B());
  c.report.certificates["periods"] = cv.period_certificate();
  c.report.check("certificate.periods", cv.period_certificate(), c.tol["certificate"]);
}

void tau_genus2(Context& c) {
  const auto cv = curve_from(c.input);
  if (cv.genus() != 2) throw UsageError("tau genus2 needs six branch points");
  const cplx zeta = complex_field(c.input, "zeta");
  const int sheet = field_or<int>(c.input, "sheet", 1);
  if (sheet != 1 && sheet != -1) throw UsageError("sheet must be 1 or -1");
  c.report.inputs = {{"branch_points", to_json(cv.branch_points())}, {"zeta", to_json(zeta)}, {"sheet", sheet}};
  const curve::AbelMap abel(cv);
  const auto rc = curve::riemann_constants(abel);
  const auto h = tau::tau_higher(abel, rc, curve::CurvePoint::finite(zeta, sheet));
  c.report.outputs = tau_json(h.tau);
  c.report.outputs["diagnostics"]["lattice_Z"] = std::vector<int>(h.Z.data(), h.Z.data() + h.Z.size());
  c.report.outputs["diagnostics"]["lattice_Zp"] = std::vector<int>(h.Zp.data(), h.Zp.data() + h.Zp.size());
  c.report.outputs["diagnostics"]["characteristics"] = h.characteristics;
  c.report.certificates["riemann_constants_residual"] = rc.residual;
  c.report.certificates["lattice_residual"] = h.lattice_residual;
  c.report.check("certificate.lattice", h.lattice_residual, c.tol["certificate"]);
  if (c.input.contains("zeta_to")) {
    const cplx to = complex_field(c.input, "zeta_to");
    c.report.inputs["zeta_to"] = to_json(to);
    const auto path = tau::tau_higher_zeta_path(abel, rc, zeta, to, sheet);
    c.report.outputs["zeta_path"] = {{"tau_end", to_json(path.end.tau.value())},
                                     {"steps", path.steps},
                                     {"relative_change", path.relative_change}};
    c.report.check("genus2.zeta", path.relative_change, c.tol["genus2.zeta"]);
  }
}

int branch_index(const Context& c, const curve::HyperellipticCurve& cv) {
  const int m = field_or<int>(c.input, "m", 1);
  if (m < 0 || m >= 2 * cv.genus() + 2) throw UsageError("branch index m out of range");
  return m;
}

void verify_rauch(Context& c) {
  const auto cv = curve_from(c.input);
  const int m = branch_index(c, cv);
  const json config = {{"branch_points", to_json(cv.branch_points())}, {"m", m}};
  c.report.inputs = config;
  const auto r = variational::rauch_check(cv, m);
  const auto d = variational::det_imB_derivative(cv, m);
  c.report.outputs["rauch"] = check_json(0.0, 0.0, r.discrepancy, r.certificate, config);
  c.report.outputs["rauch"]["lhs"] = to_json(r.contour);
  c.report.outputs["rauch"]["rhs"] = to_json(r.fd);
  c.report.outputs["imb_identity"] = check_json(d.trace, d.contour, d.identity, d.certificate, config);
  c.report.outputs["imb_fd"] = check_json(d.fd, d.trace, d.fd_discrepancy, d.certificate, config);
  c.report.certificates["rauch_contour"] = r.certificate;
  c.report.check("rauch", r.discrepancy, c.tol["rauch"]);
  c.report.check("imb.identity", d.identity, c.tol["imb.identity"]);
  c.report.check("imb.fd", d.fd_discrepancy, c.tol["imb.fd"]);
}

void verify_vardwa(Context& c) {
  const int m = field_or<int>(c.input, "m", 0);
  if (c.input.contains("coefficients")) {
    const specfun::Polynomial p(complex_list(c.input, "coefficients"));
    const json config = {{"coefficients", to_json(p.coeffs())}, {"m", m}};
    c.report.inputs = config;
    const auto r = variational::genus0_pde_check(p, m);
    c.report.outputs["pde"] = check_json(r.fd, r.rhs, r.discrepancy, r.certificate, config);
    c.report.outputs["pde"]["cauchy_riemann"] = r.cauchy_riemann;
    c.report.check("genus0.pde", r.discrepancy, c.tol["genus0.pde"]);
    c.report.check("genus0.cauchy_riemann", r.cauchy_riemann, c.tol["genus0.cauchy_riemann"]);
    return;
  }
  const auto cv = curve_from(c.input);
  if (m < 0 || m >= 2 * cv.genus() + 2) throw UsageError("branch index m out of range");
  json config = {{"branch_points", to_json(cv.branch_points())}, {"m", m}};
  const auto v = variational::vardwa_rhs(cv, m);
  c.report.outputs["contour_vs_residue"] =
      check_json(v.contour.value, v.residue, std::abs(v.contour.value - v.residue), v.contour.certificate, config);
  if (cv.genus() == 1) {
    c.report.inputs = config;
    const auto r = variational::genus1_pde_check(cv, m);
    c.report.outputs["pde"] = check_json(r.fd, r.rhs, r.discrepancy, r.certificate, config);
    c.report.check("genus1.pde", r.discrepancy, c.tol["genus1.pde"]);
  } else if (cv.genus() == 2) {
    const cplx zeta = complex_field(c.input, "zeta");
    config["zeta"] = to_json(zeta);
    c.report.inputs = config;
    const auto r = variational::genus2_pde_check(cv, m, zeta);
    c.report.outputs["pde"] = check_json(r.fd, r.rhs, r.discrepancy, r.certificate, config);
    c.report.check("genus2.pde", r.discrepancy, c.tol["genus2.pde"]);
  } else {
    throw UsageError("verify vardwa supports polynomials and curves of genus 1 or 2");
  }
  c.report.check("vardwa.contour_residue", std::abs(v.contour.value - v.residue), c.tol["certificate"]);
}

void verify_varodin(Context& c) {
  const auto cv = curve_from(c.input);
  const int m = branch_index(c, cv);
  const json config = {{"branch_points", to_json(cv.branch_points())}, {"m", m}};
  c.report.inputs = config;
  const auto r = variational::varodin_rhs(cv, m);
  // the sign that chains is reported alongside both residuals
  const bool minus = std::abs(r.r_minus) < std::abs(r.r_plus);
  c.report.outputs = {{"varodin", to_json(r.varodin)},
                      {"vardwa", to_json(r.vardwa)},
                      {"imb", to_json(r.imb)},
                      {"r_plus", to_json(r.r_plus)},
                      {"r_minus", to_json(r.r_minus)},
                      {"chaining_sign", minus ? -1 : 1},
                      {"config", config}};
  c.report.certificates["contour"] = r.certificate;
  c.report.check("varodin", std::min(std::abs(r.r_plus), std::abs(r.r_minus)), c.tol["varodin"]);
}

void verify_clue(Context& c) {
  const auto cv = curve_from(c.input);
  const int m = branch_index(c, cv);
  const json config = {{"branch_points", to_json(cv.branch_points())}, {"m", m}};
  c.report.inputs = config;
  const auto r = variational::clue_identity_check(cv, m);
  c.report.outputs["clue"] = check_json(r.lhs, r.rhs, r.discrepancy, r.block.certificate, config);
  c.report.outputs["smatrix_hh"] = to_json(r.block.hh);
  c.report.outputs["bergman_kernel"] = r.block.bergman;
  c.report.certificates["smatrix"] = r.block.certificate;
  c.report.certificates["schiffer"] = r.schiffer_certificate;
  c.report.check("clue", r.discrepancy, c.tol["clue"]);
  c.report.check("smatrix.symmetry", r.block.symmetry, c.tol["smatrix.symmetry"]);
  c.report.check("bergman_negative", r.block.bergman >= 0.0 ? 0.0 : 1.0, 0.0);
}

cone::ConeCircle cone_from(const Context& c) {
  cone::ConeCircle cc{c.cfg.k.value_or(field_or<int>(c.input, "k", 1)), c.cfg.R.value_or(field_or<double>(c.input, "R", 1.0))};
  try {
    cc.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cc;
}

cplx parse_lambda(const std::string& s) {
  const auto comma = s.find(',');
  try {
    size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used == s.size()) return {re, 0.0};
    } else {
      const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
      size_t ub = 0;
      const double re = std::stod(a, &used), im = std::stod(b, &ub);
      if (used == a.size() && ub == b.size()) return {re, im};
    }
  } catch (const std::exception&) {
  }
  throw UsageError("--lambda expects 're' or 're,im', got '" + s + "'");
}

void cone_dtn(Context& c) {
  const auto cc = cone_from(c);
  const cplx lambda = c.cfg.lambda ? parse_lambda(*c.cfg.lambda)
                                   : (c.input.contains("lambda") ? complex_field(c.input, "lambda") : cplx(0.0, 1.0));
  const int nmax = c.cfg.nodes.value_or(field_or<int>(c.input, "nmax", 16));
  if (nmax < 1) throw UsageError("--nodes must be positive");
  c.report.inputs = {{"k", cc.k}, {"R", cc.R}, {"lambda", to_json(lambda)}, {"nmax", nmax}};
  const auto zero = cone::dtn_zero_spectrum(cc, nmax);
  json ext = json::array(), jump = json::array();
  auto& rows = c.tables["eigenvalues"];
  rows.first = {"n", "exterior_re", "exterior_im", "jump_re", "jump_im", "zero_energy"};
  // zero-energy limit of the exterior eigenvalues, n != 0; the first correction
  // is O((lambda R)^{min(2 nu_1, 2)}), so lambda shrinks with nu_1 = 1/(k R)
  const double nu1 = cc.order(1);
  const cplx tiny(0.0, std::max(std::min(std::pow(1e-10, 1.0 / (2.0 * nu1)), 1e-5) / cc.R, 1e-200));
  double limit = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const cplx e = cone::dtn_exterior_eigenvalue(n, cc, lambda);
    const cplx j = cone::jump_eigenvalue(n, cc, lambda);
    ext.push_back(to_json(e));
    jump.push_back(to_json(j));
    rows.second.push_back({double(n), e.real(), e.imag(), j.real(), j.imag(), zero.values[n]});
    if (n > 0) {
      const cplx e0 = cone::dtn_exterior_eigenvalue(n, cc, tiny);
      limit = std::max(limit, std::abs(e0 - zero.values[n]) / zero.values[n]);
    }
  }
  c.report.outputs = {{"exterior", ext}, {"jump", jump}, {"zero_spectrum", zero.values},
                      {"multiplicities", zero.multiplicities}};
  c.report.check("cone.dtn.zero_energy_limit", limit, c.tol["cone.dtn"]);
}

void cone_det_n0(Context& c) {
  const auto cc = cone_from(c);
  c.report.inputs = {{"k", cc.k}, {"R", cc.R}};
  const double det = cone::detstar_N0_model(cc, cone::Family::Exterior);
  const double closed = 2.0 * pi * cc.k * cc.R * cc.R;
  c.report.outputs = {{"det_exterior", det},
                      {"closed_form", closed},
                      {"det_full", cone::detstar_N0_model(cc, cone::Family::Full)}};
  c.report.check("cone.det", std::abs(det - closed) / closed, c.tol["cone.det"]);
}

void cone_mu0_fit(Context& c) {
  const auto cc = cone_from(c);
  std::vector<double> t;
  if (c.input.contains("t")) {
    t = field<std::vector<double>>(c.input, "t");
  } else {
    for (int j = 2; j <= 8; ++j) t.push_back(std::pow(10.0, -j));
  }
  c.report.inputs = {{"k", cc.k}, {"R", cc.R}, {"t", t}};
  const auto f = cone::mu0_asymptotic_fit(cc, t);
  auto& rows = c.tables["mu0"];
  rows.first = {"t", "mu0_re", "mu0_im"};
  for (size_t i = 0; i < t.size(); ++i) rows.second.push_back({t[i], f.mu0[i].real(), f.mu0[i].imag()});
  c.report.outputs = {{"leading", to_json(f.leading)},
                      {"subleading", to_json(f.subleading)},
                      {"direct_constant", to_json(f.direct_constant)},
                      {"printed_candidate", to_json(f.printed_candidate)},
                      {"bessel_candidate", to_json(f.bessel_candidate)},
                      {"distance_printed", f.distance_printed},
                      {"distance_bessel", f.distance_bessel},
                      {"selects_bessel", f.selects_bessel},
                      {"leading_envelope", f.leading_envelope},
                      {"mu0", to_json(f.mu0)}};
  c.report.certificates["fit_residual"] = f.fit_residual;
  c.report.check("mu0.leading", f.leading_residual, f.leading_envelope);
  c.report.check("cone.mu0_distance", std::min(f.distance_bessel, f.distance_printed), c.tol["cone.mu0_distance"]);
}

void cone_shift_fit(Context& c) {
  std::vector<cone::ConeCircle> cones;
  if (c.input.contains("cones")) {
    for (const auto& j : c.input.at("cones")) cones.push_back({field<int>(j, "k"), field<double>(j, "R")});
  } else {
    cones.push_back(cone_from(c));
  }
  for (auto& cc : cones) try {
      cc.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  std::vector<double> ls;
  if (c.input.contains("lambda_sq")) {
    ls = field<std::vector<double>>(c.input, "lambda_sq");
  } else {
    for (int j = 2; j <= 8; ++j) ls.push_back(std::pow(10.0, -2 * j));
  }
  json cj = json::array();
  for (const auto& cc : cones) cj.push_back({{"k", cc.k}, {"R", cc.R}});
  c.report.inputs = {{"cones", cj}, {"lambda_sq", ls}};
  const auto f = cone::spectral_shift_asymptotic(cones, ls);
  const double count = double(cones.size());
  auto& rows = c.tables["shift"];
  rows.first = {"lambda_sq", "xi"};
  for (size_t i = 0; i < f.lambda_sq.size(); ++i) rows.second.push_back({f.lambda_sq[i], f.xi[i]});
  const double at6 = cone::spectral_shift(cones, 1e-6) * std::log(1e-6);
  c.report.outputs = {{"pointwise_leading", f.pointwise_leading},
                      {"fitted_leading", f.fitted_leading},
                      {"fitted_second", f.fitted_second},
                      {"leading_at_1e-6", at6},
                      {"xi", f.xi}};
  c.report.certificates["fit_residual"] = f.fit_residual;
  c.report.check("cone.shift.fitted", std::abs(f.fitted_leading / count - 1.0), c.tol["cone.shift"]);
  c.report.check("cone.shift.at_1e-6", std::abs(at6 / count - 1.0), c.tol["cone.shift"]);
}

int suite_acceptance(const RunConfig& cfg, const Tolerances& tol, std::ostream& out, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = acceptance::run_acceptance(tol, cfg.seed, cfg.only);
  std::vector<std::string> failed;
  for (const auto& c : results) {
    log << (c.pass() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << '\n';
    if (!c.pass()) failed.push_back(std::to_string(c.id));
  }
  json j = acceptance::to_json(results);
  j["command"] = "suite acceptance";
  j["inputs"] = {{"seed", cfg.seed}, {"tolerances", tol.all()}};
  j["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  (void)out;
  if (!cfg.out.empty() || std::getenv(kOutDirVariable)) {
    std::filesystem::path p = cfg.out.empty()
                                  ? std::filesystem::path(std::getenv(kOutDirVariable)) / "suite-acceptance.json"
                                  : std::filesystem::path(cfg.out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw UsageError("cannot write " + p.string());
    f << j.dump(2) << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
  if (failed.empty()) return kOk;
  log << "failed criteria:";
  for (const auto& s : failed) log << ' ' << s;
  log << '\n';
  return kNumericalFailure;
}

using Handler = void (*)(Context&);
struct Command {
  Handler handler;
  bool needs_input;
};
const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"cover validate", {cover_validate, true}}, {"tau poly", {tau_poly, true}},
      {"tau rational3", {tau_rational3, false}},  {"tau genus1", {tau_genus1, true}},
      {"tau genus2", {tau_genus2, true}},         {"verify rauch", {verify_rauch, true}},
      {"verify vardwa", {verify_vardwa, true}},   {"verify varodin", {verify_varodin, true}},
      {"verify clue", {verify_clue, true}},       {"cone dtn", {cone_dtn, false}},
      {"cone det-n0", {cone_det_n0, false}},      {"cone mu0-fit", {cone_mu0_fit, false}},
      {"cone shift-fit", {cone_shift_fit, false}},
  };
  return table;
}

void emit(const Context& c, std::ostream& out) {
  const json j = c.report.to_json();
  std::filesystem::path path;
  if (!c.cfg.out.empty()) {
    path = c.cfg.out;
  } else if (const char* dir = std::getenv(kOutDirVariable)) {
    path = std::filesystem::path(dir) / (c.cfg.group + "-" + c.cfg.command + ".json");
  } else {
    out << j.dump(2) << '\n';
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path.string());
  f << j.dump(2) << '\n';
  for (const auto& [name, table] : c.tables) {
    auto csv = path;
    csv.replace_extension();
    report::write_csv(csv.string() + "." + name + ".csv", table.first, table.second);
  }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::string name = cfg.group + " " + cfg.command;
  try {
    Tolerances tol;
    for (const auto& t : cfg.tolerances) tol.set(t);
    if (name == "suite acceptance") return suite_acceptance(cfg, tol, out, log);

    const auto it = commands().find(name);
    if (it == commands().end()) throw UsageError("unknown command '" + name + "'");
    Context c{cfg, tol, read_input(cfg, it->second.needs_input), {}, {}};
    c.report.command = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it->second.handler(c);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidInput) throw;
      // a numerical failure still produces a report naming the failing check
      c.report.outputs["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
      c.report.check(std::string("error.") + std::string(to_string(e.code())), 1.0, 0.0);
    }
    c.report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(c, out);
    if (c.report.ok()) {
      log << "ok: " << name << '\n';
      return kOk;
    }
    log << "FAIL " << name << ":";
    for (const auto& f : c.report.failures()) log << ' ' << f;
    log << '\n';
    return kNumericalFailure;
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) {
      log << "usage error: " << e.what() << '\n';
      return kUsage;
    }
    log << "FAIL " << name << ": " << to_string(e.code()) << ": " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Bergman tau-functions, variational identities and model-cone spectra"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--input", cfg.input, "JSON input file");
  app.add_option("--out", cfg.out, "report path (default: $HURWITZ_OUT_DIR/<command>.json, else stdout)");
  app.add_option("--tol", cfg.tolerances, "tolerance override name=value")->take_all();
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--nodes", cfg.nodes, "table length or sample count where applicable");
  app.add_option("--k", cfg.k, "cone angle multiple");
  app.add_option("--R", cfg.R, "circle radius");
  app.add_option("--lambda", cfg.lambda, "spectral parameter, re or re,im");
  app.add_option("--only", cfg.only, "acceptance criteria subset");

  const std::map<std::string, std::vector<std::string>> groups{
      {"cover", {"validate"}},
      {"tau", {"poly", "rational3", "genus1", "genus2"}},
      {"verify", {"rauch", "vardwa", "varodin", "clue"}},
      {"cone", {"dtn", "det-n0", "mu0-fit", "shift-fit"}},
      {"suite", {"acceptance"}},
  };
  for (const auto& [group, subs] : groups) {
    auto* g = app.add_subcommand(group);
    g->require_subcommand(1);
    g->fallthrough();
    for (const auto& s : subs) {
      g->add_subcommand(s)->fallthrough()->callback([&cfg, group = group, s = s] {
        cfg.group = group;
        cfg.command = s;
      });
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace hurwitz::cli
