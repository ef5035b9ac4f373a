#pragma once

#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz::cone {

// Cone of angle 2 pi k, circle at radial variable r = R.
struct ConeCircle {
  int k = 1;
  double R = 1.0;
  // nu_n = |n| / (k R)
  double order(int n) const;
  void validate() const;
};

// -d_r H^(1)_nu(lambda r)|_{r=R} / H^(1)_nu(lambda R); Im lambda >= 0, lambda != 0.
cplx dtn_exterior_eigenvalue(int n, const ConeCircle& c, cplx lambda);
// d_r J_nu(lambda r)|_{r=R} / J_nu(lambda R), regular modes only.
cplx dtn_interior_eigenvalue(int n, const ConeCircle& c, cplx lambda);
// Jump operator eigenvalue: exterior + interior.
cplx jump_eigenvalue(int n, const ConeCircle& c, cplx lambda);

struct ZeroSpectrum {
  std::vector<double> values;       // |n| / (k R^2), n = 0..nmax
  std::vector<int> multiplicities;  // 1 for n = 0, else 2
};
ZeroSpectrum dtn_zero_spectrum(const ConeCircle& c, int nmax);

enum class Family {
  Exterior,  // {|n|/(kR^2)}_{n != 0}
  Full,      // exterior plus interior: {2|n|/(kR^2)}_{n != 0}
};

// Zeta-regularized product over {a |n|}_{n != 0}: exp(-zeta'(0)) with
// zeta(s) = 2 a^{-s} zeta_R(s), zeta_R(0) = -1/2, zeta_R'(0) = -ln(2 pi)/2.
double zeta_det_linear_family(double a);
double detstar_N0_model(const ConeCircle& c, Family family = Family::Exterior);

struct DetResult {
  double log_det = 0.0;   // real for lambda^2 < 0
  double phase = 0.0;     // Arg det for real lambda
  cplx log_mu0 = 0.0;
  int modes = 0;
  double certificate = 0.0;  // change of the regularized sum under mode doubling
  double tail_residual = 0.0;
};

// log det_zeta N(lambda) by the regularized mode sum. lambda = sqrt(lambda_sq + i0).
DetResult detzeta_N_model(const ConeCircle& c, double lambda_sq, double tol = 1e-10);

struct Mu0Fit {
  cplx leading;                 // a0 in mu0 (-R ln lambda) = a0 + a1/ln lambda + a2/ln^2 lambda
  cplx subleading;              // -a1
  cplx direct_constant;         // -1/(R mu0) - ln lambda at the smallest |lambda|
  cplx printed_candidate;       // ln(R/2) + pi gamma/2 - i pi/2
  cplx bessel_candidate;        // ln(R/2) + gamma - i pi/2
  double distance_printed = 0.0;
  double distance_bessel = 0.0;
  bool selects_bessel = false;
  double leading_residual = 0.0;   // |a0 - 1|
  double leading_envelope = 0.0;   // 1/|ln lambda_min|
  double fit_residual = 0.0;
  std::vector<cplx> mu0;
};

// lambda_j = i t_j.
Mu0Fit mu0_asymptotic_fit(const ConeCircle& c, const std::vector<double>& t);

// xi(lambda) = pi^{-1} Arg det N(sqrt(lambda^2 + i0)); zero for lambda^2 < 0.
double spectral_shift(const ConeCircle& c, double lambda_sq);
double spectral_shift(const std::vector<ConeCircle>& cones, double lambda_sq);

struct ShiftFit {
  std::vector<double> lambda_sq;
  std::vector<double> xi;
  double pointwise_leading = 0.0;  // xi * ln lambda^2 at the smallest lambda^2
  double fitted_leading = 0.0;     // b1 in xi = b1/L + b2/L^2, L = ln lambda^2
  double fitted_second = 0.0;
  double fit_residual = 0.0;
};
ShiftFit spectral_shift_asymptotic(const std::vector<ConeCircle>& cones, const std::vector<double>& lambda_sq);

}  // namespace hurwitz::cone
