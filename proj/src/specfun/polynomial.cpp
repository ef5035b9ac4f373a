#include "hurwitz/specfun/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace hurwitz::specfun {

Polynomial::Polynomial(std::vector<cplx> ascending) : c_(std::move(ascending)) { trim(); }

Polynomial Polynomial::constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

Polynomial Polynomial::monomial(int degree, cplx c) {
  std::vector<cplx> v(static_cast<size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx lead) {
  Polynomial p = constant(lead);
  for (cplx r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Polynomial::leading() const {
  if (c_.empty()) fail(ErrorCode::DegenerateInput, "zero polynomial has no leading coefficient");
  return c_.back();
}

cplx Polynomial::operator()(cplx w) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<cplx> d = c_;
  for (int k = 0; k < order; ++k) {
    if (d.size() <= 1) return Polynomial();
    std::vector<cplx> nd(d.size() - 1);
    for (size_t i = 1; i < d.size(); ++i) nd[i - 1] = d[i] * static_cast<double>(i);
    d = std::move(nd);
  }
  return Polynomial(std::move(d));
}

std::vector<cplx> Polynomial::taylor(cplx w, int order) const {
  // Repeated synthetic division yields p(w+h) coefficients.
  std::vector<cplx> a = c_;
  std::vector<cplx> out(static_cast<size_t>(order) + 1, 0.0);
  const int n = degree();
  for (int k = 0; k <= std::min(order, n); ++k) {
    const int m = n - k;
    // a = (x - w) q + remainder
    std::vector<cplx> q(static_cast<size_t>(m), 0.0);
    cplx carry = 0.0;
    for (int i = m; i >= 1; --i) {
      carry = carry * w + a[i];
      q[i - 1] = carry;
    }
    out[k] = carry * w + a[0];
    a = std::move(q);
  }
  return out;
}

double Polynomial::coeff_norm() const {
  double s = 0.0;
  for (cplx c : c_) s += std::abs(c);
  return s;
}

double Polynomial::backward_error(cplx w) const {
  double scale = 0.0, r = std::abs(w), pw = 1.0;
  for (cplx c : c_) {
    scale += std::abs(c) * pw;
    pw *= r;
  }
  if (scale == 0.0) return 0.0;
  return std::abs((*this)(w)) / scale;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(cplx s) const {
  std::vector<cplx> r = c_;
  for (auto& c : r) c *= s;
  return Polynomial(std::move(r));
}

RootSet poly_roots(const Polynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  if (n < 1) fail(ErrorCode::DegenerateInput, "poly_roots requires degree >= 1");
  RootSet out;
  // Exact zero roots are split off first; Aberth handles the rest.
  int zero_mult = 0;
  while (zero_mult < n && p.coeff(zero_mult) == cplx(0.0)) ++zero_mult;
  std::vector<cplx> reduced(p.coeffs().begin() + zero_mult, p.coeffs().end());
  Polynomial q(reduced);
  const int m = q.degree();
  std::vector<cplx> z(static_cast<size_t>(m));
  if (m > 0) {
    const Polynomial dq = q.derivative();
    const double r0 = std::pow(std::abs(q.coeff(0)) / std::abs(q.leading()), 1.0 / m);
    for (int k = 0; k < m; ++k)
      z[k] = std::polar(r0, 0.4 + 2.0 * std::numbers::pi * k / m);
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
      double max_step = 0.0;
      for (int k = 0; k < m; ++k) {
        const cplx pv = q(z[k]);
        if (pv == cplx(0.0)) continue;
        const cplx ratio = pv / dq(z[k]);
        cplx s = 0.0;
        for (int j = 0; j < m; ++j)
          if (j != k) s += 1.0 / (z[k] - z[j]);
        const cplx w = ratio / (1.0 - ratio * s);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
        z[k] -= w;
        max_step = std::max(max_step, std::abs(w) / std::max(1.0, std::abs(z[k])));
      }
      if (max_step < 1e-15) break;
    }
    out.iterations = it;
    // Newton polish; only accepted when it lowers the backward error.
    for (int k = 0; k < m; ++k) {
      for (int s = 0; s < 3; ++s) {
        const cplx d = dq(z[k]);
        if (d == cplx(0.0)) break;
        const cplx cand = z[k] - q(z[k]) / d;
        if (q.backward_error(cand) < q.backward_error(z[k])) z[k] = cand;
        else break;
      }
    }
  }
  for (int k = 0; k < zero_mult; ++k) out.roots.push_back(0.0);
  for (cplx r : z) out.roots.push_back(r);
  for (cplx r : out.roots) out.max_backward_error = std::max(out.max_backward_error, p.backward_error(r));
  if (out.max_backward_error > opts.residual_tolerance)
    fail(ErrorCode::NonConvergence, "root residual " + std::to_string(out.max_backward_error) +
                                        " exceeds tolerance");
  double scale = 1.0;
  for (cplx r : out.roots) scale = std::max(scale, std::abs(r));
  const double rad = opts.cluster_radius * scale;
  std::vector<bool> used(out.roots.size(), false);
  for (size_t i = 0; i < out.roots.size(); ++i) {
    if (used[i]) continue;
    RootCluster c{out.roots[i], 1};
    cplx sum = out.roots[i];
    used[i] = true;
    for (size_t j = i + 1; j < out.roots.size(); ++j) {
      if (!used[j] && std::abs(out.roots[j] - out.roots[i]) < rad) {
        used[j] = true;
        sum += out.roots[j];
        ++c.multiplicity;
      }
    }
    c.center = sum / static_cast<double>(c.multiplicity);
    out.clusters.push_back(c);
  }
  return out;
}

cplx resultant(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) fail(ErrorCode::DegenerateInput, "resultant of zero polynomial");
  const int m = f.degree(), n = g.degree();
  if (m == 0) return std::pow(f.coeff(0), n);
  if (n == 0) return std::pow(g.coeff(0), m);
  const int s = m + n;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(s, s);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) S(r, r + i) = f.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) S(n + r, r + i) = g.coeff(n - i);
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(S).determinant();
}

Rational::Rational(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::DegenerateInput, "rational function with zero denominator");
}

cplx Rational::operator()(cplx w) const {
  const cplx d = den_(w);
  if (d == cplx(0.0)) fail(ErrorCode::DomainError, "evaluation at a pole");
  return num_(w) / d;
}

std::vector<cplx> series_divide(const std::vector<cplx>& a, const std::vector<cplx>& b, int order) {
  if (b.empty() || b[0] == cplx(0.0)) fail(ErrorCode::DomainError, "series division by zero");
  std::vector<cplx> q(static_cast<size_t>(order) + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    cplx s = k < static_cast<int>(a.size()) ? a[k] : cplx(0.0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

std::vector<cplx> Rational::derivatives(cplx w, int order) const {
  const auto q = series_divide(num_.taylor(w, order), den_.taylor(w, order), order);
  std::vector<cplx> d(q.size());
  double fact = 1.0;
  for (size_t k = 0; k < q.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    d[k] = q[k] * fact;
  }
  return d;
}

Polynomial Rational::derivative_numerator() const {
  return num_.derivative() * den_ - num_ * den_.derivative();
}

cplx schwarzian(const Rational& f, cplx w) {
  const auto d = f.derivatives(w, 3);
  const double scale = std::max(1.0, std::abs(d[0])) / std::max(1.0, std::abs(w));
  if (std::abs(d[1]) <= 1e-14 * scale)
    fail(ErrorCode::CriticalPointSingularity, "f'(w) vanishes at the evaluation point");
  const cplx r = d[2] / d[1];
  return d[3] / d[1] - 1.5 * r * r;
}

}  // namespace hurwitz::specfun
