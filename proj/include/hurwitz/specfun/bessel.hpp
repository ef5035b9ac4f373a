#pragma once

#include "hurwitz/errors.hpp"

namespace hurwitz::specfun {

// value = mantissa * exp(log_scale); keeps large orders at small argument
// representable.
struct Scaled {
  cplx mantissa = 0.0;
  cplx log_scale = 0.0;
  cplx value() const;
  cplx log() const;
  Scaled rescaled(cplx new_log_scale) const;
};

cplx ratio(const Scaled& a, const Scaled& b);  // a / b

struct BesselFlags {
  bool loss_of_precision = false;
  bool near_integer_fallback = false;
  const char* regime = "series";
};

// Order nu >= 0, Im z >= 0, z != 0.
//   |z| >= 12         : large-argument expansion at orders in [0,2), forward recurrence
//   Im z >= 1, |z|<12 : integral representation of K at orders in [0,2), forward recurrence
//   otherwise         : ascending series for J and Y
Scaled hankel1_scaled(double nu, cplx z, BesselFlags* flags = nullptr);
Scaled bessel_j_scaled(double nu, cplx z, BesselFlags* flags = nullptr);
Scaled bessel_y_scaled(double nu, cplx z, BesselFlags* flags = nullptr);

cplx hankel1(double nu, cplx z, BesselFlags* flags = nullptr);
cplx bessel_j(double nu, cplx z);
cplx bessel_y(double nu, cplx z);
cplx hankel1_prime(double nu, cplx z);
// H_{nu+1}(z) / H_nu(z) and J_{nu+1}(z) / J_nu(z).
cplx hankel1_ratio(double nu, cplx z);
cplx bessel_j_ratio(double nu, cplx z);

// Relative difference of the ascending-series and large-argument routes for
// H^(1)_nu(z); meaningful near |z| = 12.
double bessel_regime_overlap(double nu, cplx z);

}  // namespace hurwitz::specfun
