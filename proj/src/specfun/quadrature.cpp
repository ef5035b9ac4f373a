#include "hurwitz/specfun/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

namespace hurwitz::specfun {

namespace {

GaussRule build_rule20() {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  GaussRule r;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  // Boost stores the non-negative half; 20 is even so no zero node.
  for (size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

// Trapezoid sums on n and 2n nodes reuse the coarse samples.
ContourIntegralResult doubling(const std::function<cplx(double)>& g, double scale, double abs_tol,
                               int start_nodes, int max_nodes) {
  const double two_pi = 2.0 * std::numbers::pi;
  int n = start_nodes;
  cplx raw = 0.0;
  for (int k = 0; k < n; ++k) raw += g(two_pi * k / n);
  cplx prev = raw * scale / static_cast<double>(n);
  for (;;) {
    cplx extra = 0.0;
    for (int k = 0; k < n; ++k) extra += g(two_pi * (k + 0.5) / n);
    raw += extra;
    n *= 2;
    const cplx cur = raw * scale / static_cast<double>(n);
    const double cert = std::abs(cur - prev);
    if (cert < abs_tol || n >= max_nodes) {
      ContourIntegralResult r;
      r.value = cur;
      r.nodes = n;
      r.certificate = cert;
      return r;
    }
    prev = cur;
  }
}

}  // namespace

const GaussRule& gauss_legendre20() {
  static const GaussRule rule = build_rule20();
  return rule;
}

cplx gauss_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, const GaussRule& rule) {
  const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

ContourIntegralResult circle_integral(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                      double abs_tol, int start_nodes, int max_nodes) {
  const cplx i(0.0, 1.0);
  auto g = [&](double phi) {
    const cplx e = std::polar(1.0, phi);
    return f(center + radius * e) * (i * radius * e);
  };
  auto r = doubling(g, 2.0 * std::numbers::pi, abs_tol, start_nodes, max_nodes);
  r.radius = radius;
  return r;
}

ContourIntegralResult circle_mean(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                  double abs_tol, int start_nodes, int max_nodes) {
  auto g = [&](double phi) { return f(center + std::polar(radius, phi)); };
  auto r = doubling(g, 1.0, abs_tol, start_nodes, max_nodes);
  r.radius = radius;
  return r;
}

std::vector<cplx> cauchy_coefficients(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                      int order, int nodes) {
  std::vector<cplx> samples(static_cast<size_t>(nodes));
  for (int k = 0; k < nodes; ++k) samples[k] = f(center + std::polar(radius, 2.0 * std::numbers::pi * k / nodes));
  std::vector<cplx> a(static_cast<size_t>(order) + 1, 0.0);
  for (int j = 0; j <= order; ++j) {
    cplx s = 0.0;
    for (int k = 0; k < nodes; ++k) s += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / nodes);
    a[j] = s / (static_cast<double>(nodes) * std::pow(radius, j));
  }
  return a;
}

}  // namespace hurwitz::specfun
