#pragma once

#include <string>
#include <vector>

#include "hurwitz/curve/abel.hpp"
#include "hurwitz/specfun/polynomial.hpp"

namespace hurwitz::tau {

using curve::CMatrix;
using curve::CVector;
using specfun::Polynomial;
using specfun::Rational;

// ln tau = sum weight * log, one entry per constituent. Each log is a principal
// log at the point of evaluation; continuation along moduli paths shifts it by
// multiples of i pi (sign flips of chart roots are moduli-independent).
struct TauFactor {
  std::string label;
  cplx log = 0.0;
  double weight = 1.0;
};

struct TauValue {
  std::vector<TauFactor> factors;
  int genus = 0;
  std::string normalization;  // which moduli-independent constants were dropped

  cplx log_tau() const;
  cplx value() const;
  // Move every factor to the branch nearest the corresponding factor of ref.
  void continue_from(const TauValue& ref);
};

// ln tau(a) - ln tau(b) with each factor difference reduced mod i pi. Both values
// must come from the same assembly (same labels in the same order).
cplx log_ratio(const TauValue& a, const TauValue& b);

// Divisor of df: points with orders; zeros carry ell_m > 0, poles -(k_j + 1).
struct DivisorPoint {
  std::string label;
  int order = 0;
};
// Throws InvalidInput unless the orders sum to 2g - 2.
void check_divisor_degree(const std::vector<DivisorPoint>& d, int genus);

struct PolynomialTau {
  TauValue tau;                   // product form {prod p''(w_k)}^{1/24}
  std::vector<cplx> critical_points;
  cplx product = 0.0;             // prod p''(w_k)
  cplx resultant = 0.0;           // R(p', p'') from the Sylvester determinant
  cplx constant = 0.0;            // lc(p')^{deg p''} = N^{N-2}
  double discrepancy = 0.0;       // |constant * product - resultant| / |resultant|
};
// Monic p of degree >= 2 with simple critical points; throws DegenerateCriticalPoint.
PolynomialTau tau_polynomial(const Polynomial& p);

// The quartic form M(a, b, c) with tau^24 = a^3 b^3 c^3 M for the three-pole family below.
cplx frak_m(cplx a, cplx b, cplx c);

struct ThreePoleTau {
  cplx m = 0.0;                   // M(a, b, c)
  cplx printed = 0.0;             // a^3 b^3 c^3 M
  cplx resultant_literal = 0.0;   // b^4 c^4 R(f, f') / R(f, g)
  cplx resultant = 0.0;           // b^4 c^4 a R(f, f') / R(f, g) = b^4 c^4 prod r''(w_k)
  cplx e0 = 0.0;                  // tau^24 from the genus-zero assembly
  TauValue tau;                   // genus-zero assembly
  std::vector<cplx> critical_points;
};
// r(w) = a w - b/w - c/(w - 1) + d; throws DegenerateCriticalPoint.
ThreePoleTau tau_three_poles(cplx a, cplx b, cplx c, cplx d);

struct Genus0Data {
  int k_infinity = 0;  // order of the pole at w = infinity
  cplx alpha = 0.0;    // r ~ alpha w^k near infinity
  struct Zero {
    cplx w;
    int ell = 1;
    cplx z;             // critical value
    cplx coefficient;   // r^{(ell+1)}(w)/(ell+1)!
  };
  struct Pole {
    cplx w;
    int k = 1;
    cplx coefficient;   // lim (w - w_j)^k r(w)
  };
  std::vector<Zero> zeros;
  std::vector<Pole> poles;  // finite poles
};
// Critical points and finite poles of r; the pole at w = infinity plays the role
// of infinity_1 and fixes U = alpha^{1/k} w. Throws NormalizationFailure if r has
// no pole at infinity.
Genus0Data genus0_data(const Rational& r);
TauValue tau_genus0(const Rational& r);
TauValue tau_genus0(const Genus0Data& d);

// g = 1, f = z: four finite branch points, two simple poles over infinity.
TauValue tau_genus1(const curve::HyperellipticCurve& c);

struct HigherOptions {
  // Odd characteristic per prime form: pairs (k < l) in lexicographic order,
  // then the pairs (zeta, p_k). Empty selects per pair.
  std::vector<int> characteristics;
  double lattice_tolerance = 1e-6;
};

struct HigherTau {
  TauValue tau;
  std::vector<int> characteristics;
  Eigen::VectorXi Z, Zp;
  double lattice_residual = 0.0;
  CVector K_zeta;
  cplx theta_derivative = 0.0;
  cplx wronskian = 0.0;
};

// g >= 2, f = z, zeta a finite non-branch point. Divisor order: branch points
// e_0..e_{2g+1}, then infinity on sheets +1 and -1.
HigherTau tau_higher(const curve::AbelMap& abel, const curve::RiemannConstants& rc, const curve::CurvePoint& zeta,
                     const HigherOptions& opts = {});

// tau at zeta_to continued from zeta_from along a straight path on one sheet,
// characteristics held fixed. Returns the values at both ends.
struct ZetaPath {
  HigherTau start, end;
  int steps = 0;
  double relative_change = 0.0;  // |tau_end / tau_start - 1|
};
ZetaPath tau_higher_zeta_path(const curve::AbelMap& abel, const curve::RiemannConstants& rc, cplx zeta_from,
                              cplx zeta_to, int sheet, int steps = 40);

}  // namespace hurwitz::tau
