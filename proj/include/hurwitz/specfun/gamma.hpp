#pragma once

#include "hurwitz/errors.hpp"

namespace hurwitz::specfun {

// Lanczos approximation (g = 7) with reflection for Re z < 1/2.
cplx lgamma_complex(cplx z);
cplx gamma_complex(cplx z);

}  // namespace hurwitz::specfun
