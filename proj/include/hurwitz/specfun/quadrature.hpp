#pragma once

#include <functional>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz::specfun {

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

// 20-point Gauss–Legendre rule.
const GaussRule& gauss_legendre20();

// Integral of f over [a, b] (complex endpoints, straight segment).
cplx gauss_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, const GaussRule& rule = gauss_legendre20());

struct ContourIntegralResult {
  cplx value = 0.0;
  double radius = 0.0;
  int nodes = 0;
  double certificate = 0.0;  // |I_n - I_{n/2}|
};

// Closed-circle integral of f(x) dx around center with the trapezoid rule,
// doubling nodes until the change drops below abs_tol.
ContourIntegralResult circle_integral(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                      double abs_tol = 1e-13, int start_nodes = 32, int max_nodes = 4096);

// Same, but evaluating the mean (1/2pi) int f(center + r e^{i phi}) dphi.
ContourIntegralResult circle_mean(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                  double abs_tol = 1e-13, int start_nodes = 32, int max_nodes = 4096);

// Taylor coefficients a_0..a_order of f at center from samples on a circle.
std::vector<cplx> cauchy_coefficients(const std::function<cplx(cplx)>& f, cplx center, double radius,
                                      int order, int nodes = 64);

}  // namespace hurwitz::specfun
