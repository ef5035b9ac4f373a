#include "hurwitz/specfun/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hurwitz::specfun {

namespace {
constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace

cplx lgamma_complex(cplx z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const cplx s = std::sin(pi * z);
    if (s == cplx(0.0)) fail(ErrorCode::DomainError, "gamma pole");
    return std::log(pi) - std::log(s) - lgamma_complex(1.0 - z);
  }
  const cplx zz = z - 1.0;
  cplx x = kLanczos[0];
  for (size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (zz + static_cast<double>(i));
  const cplx t = zz + kG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma_complex(cplx z) { return std::exp(lgamma_complex(z)); }

}  // namespace hurwitz::specfun
