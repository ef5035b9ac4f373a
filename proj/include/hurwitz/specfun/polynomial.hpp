#pragma once

#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz::specfun {

// Dense complex polynomial, coefficients in ascending degree. Trailing exact
// zeros are trimmed; the zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> ascending);
  static Polynomial constant(cplx c);
  static Polynomial monomial(int degree, cplx c = 1.0);
  static Polynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[i] : cplx(0.0); }
  cplx leading() const;

  cplx operator()(cplx w) const;
  Polynomial derivative(int order = 1) const;
  // Coefficients of p(w + h) in powers of h, truncated after h^order.
  std::vector<cplx> taylor(cplx w, int order) const;
  // Sum of |c_i|, the scale used for backward errors.
  double coeff_norm() const;
  // |p(w)| / sum |c_i||w|^i.
  double backward_error(cplx w) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx s) const;

 private:
  void trim();
  std::vector<cplx> c_;
};

struct RootCluster {
  cplx center;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<cplx> roots;  // with repetition
  std::vector<RootCluster> clusters;
  double max_backward_error = 0.0;
  int iterations = 0;
};

struct RootOptions {
  int max_iterations = 500;
  double residual_tolerance = 1e-10;
  double cluster_radius = 1e-7;  // relative to max(1, max |root|)
};

// Aberth–Ehrlich iteration followed by Newton polishing.
RootSet poly_roots(const Polynomial& p, const RootOptions& opts = {});

// Sylvester determinant; R(f,g) = lc(f)^{deg g} prod_{f(a)=0} g(a).
cplx resultant(const Polynomial& f, const Polynomial& g);

// Ratio num/den of polynomials.
class Rational {
 public:
  Rational(Polynomial num, Polynomial den);
  explicit Rational(Polynomial num) : Rational(std::move(num), Polynomial::constant(1.0)) {}
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  cplx operator()(cplx w) const;
  // f(w), f'(w), ..., f^{(order)}(w).
  std::vector<cplx> derivatives(cplx w, int order) const;
  // Numerator of f' = (num' den - num den').
  Polynomial derivative_numerator() const;

 private:
  Polynomial num_, den_;
};

// Series division: coefficients of a(h)/b(h) up to h^order.
std::vector<cplx> series_divide(const std::vector<cplx>& a, const std::vector<cplx>& b, int order);

// S_f = f'''/f' - (3/2)(f''/f')^2.
cplx schwarzian(const Rational& f, cplx w);

}  // namespace hurwitz::specfun
