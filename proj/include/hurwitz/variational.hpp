#pragma once

#include <vector>

#include "hurwitz/curve/abel.hpp"
#include "hurwitz/specfun/polynomial.hpp"
#include "hurwitz/specfun/quadrature.hpp"
#include "hurwitz/tau.hpp"

namespace hurwitz::variational {

using curve::Chart;
using curve::CMatrix;
using curve::CVector;
using curve::HyperellipticCurve;
using specfun::ContourIntegralResult;
using specfun::Polynomial;
using specfun::Rational;

// Copy of c with e_m moved by dz; keeps the canonical marking.
HyperellipticCurve move_branch_point(const HyperellipticCurve& c, int m, cplx dz);

// Radius of the contour around e_m in its branch chart: the base circle has radius
// 0.1 times the distance to the nearest other branch point.
double contour_radius(const HyperellipticCurve& c, int m);

struct RauchResult {
  CMatrix contour;        // oint_{P_m} v_a v_b / df
  CMatrix fd;             // central difference of B under e_m -> e_m +/- h
  double discrepancy = 0.0;
  double symmetry = 0.0;  // |contour - contour^T|
  double certificate = 0.0;
  double radius = 0.0;
  int nodes = 0;
};
RauchResult rauch_check(const HyperellipticCurve& c, int m, double h = 1e-5);

struct ImBResult {
  cplx trace = 0.0;    // (1/2i) Tr[dB (Im B)^{-1}]
  cplx contour = 0.0;  // (1/2i) oint sum (Im B)^{-1}_ab v_a v_b / df
  cplx fd = 0.0;       // d/dz_m of ln det Im B by central differences in h and ih
  cplx fd_conjugate = 0.0;  // d/d conj(z_m) of the same, equal to conj(fd) for a real function
  double identity = 0.0;        // |trace - contour|
  double fd_discrepancy = 0.0;  // |fd - trace|
  double certificate = 0.0;
};
ImBResult det_imB_derivative(const HyperellipticCurve& c, int m, double h = 1e-5);

// -(1/12 pi i) oint (S_B - S_f)/df around e_m in the branch chart.
struct VardwaResult {
  ContourIntegralResult contour;  // value already multiplied by -(1/12 pi i)
  cplx residue = 0.0;             // -S_B(0)/12 from the connection at the centre
};
VardwaResult vardwa_rhs(const HyperellipticCurve& c, int m);
// Genus zero in the global coordinate w where S_B = 0: (1/12 pi i) oint {r, w}/r'(w) dw.
ContourIntegralResult vardwa_rhs(const Rational& r, cplx w_m, double radius);

struct VarodinResult {
  cplx varodin = 0.0;  // S_Sch(0)/12 in the distinguished chart
  cplx vardwa = 0.0;
  cplx imb = 0.0;      // holomorphic part of d ln det Im B
  cplx r_plus = 0.0;   // varodin - (vardwa + imb)
  cplx r_minus = 0.0;  // varodin + (vardwa + imb)
  double certificate = 0.0;
};
VarodinResult varodin_rhs(const HyperellipticCurve& c, int m);

struct SMatrixBlock {
  int ell = 2;
  CMatrix hh;                // S^{hh}_{k/ell, l/ell}(0), k, l = 1..ell-1
  double symmetry = 0.0;
  double bergman = 0.0;      // B(0, 0-bar), the ell = 2 companion
  double certificate = 0.0;  // change of the H coefficients under node doubling
};
// H from the bidifferential minus its double pole, Taylor coefficients by a
// two-radius Cauchy polydisk; the chart must be distinguished at its centre.
SMatrixBlock smatrix_hh_zero(const HyperellipticCurve& c, const Chart& chart, int ell);

// sum_k sqrt(k(ell-k))/ell S^{hh}_{k/ell,(ell-k)/ell}(0)
cplx clue_lhs(const SMatrixBlock& b);

struct ClueResult {
  cplx lhs = 0.0;
  cplx rhs = 0.0;  // -S_Sch(0)/12
  double discrepancy = 0.0;
  SMatrixBlock block;
  double schiffer_certificate = 0.0;
};
// ell = 2 at the branch point e_m.
ClueResult clue_identity_check(const HyperellipticCurve& c, int m);

// a_{mu nu} = 4 pi mu c_mu nu c_nu on mu + nu = 1, c_nu = 1/(2 sqrt(nu ell pi)).
CMatrix amatrix(int ell);
struct TraceRoutes {
  cplx via_a = 0.0;   // Tr(A S^{hh})
  cplx direct = 0.0;  // sum_{mu+nu=1} sqrt(mu nu) S^{hh}_{mu nu}
  cplx ratio = 0.0;   // direct / via_a
};
TraceRoutes trace_identity_check(const CMatrix& hh);

// Boundary form (2/i) oint (d_z u conj(v) dz + u d_zbar conj(v) dzbar) on a small
// circle of the cone of angle 2 pi ell, u = c_nu z^{-nu}, nu = k/ell, and v the
// regular antiholomorphic companion c_nu zbar^{nu} (decaying) or the printed
// c_nu zbar^{-nu}.
enum class PairingConvention { Decaying, Printed };
cplx green_pairing(int ell, int k, PairingConvention conv, double eps = 1e-3, int nodes = 512);

// Genus-zero moduli motion on monic polynomials with vanishing subleading
// coefficient; the N - 1 critical values are local coordinates.
struct CriticalData {
  std::vector<cplx> points, values;
};
CriticalData critical_data(const Polynomial& p);
// Newton on the free coefficients with Jacobian dz_m/dc_i = w_m^i.
Polynomial move_critical_value(const Polynomial& p, int m, cplx dz);

struct PdeCheck {
  cplx fd = 0.0;
  cplx rhs = 0.0;
  double discrepancy = 0.0;
  double certificate = 0.0;
  double cauchy_riemann = 0.0;  // |fd along h - fd along ih|, zero when computed
};
PdeCheck genus0_pde_check(const Polynomial& p, int m, double h = 1e-5);
PdeCheck genus1_pde_check(const HyperellipticCurve& c, int m, double h = 1e-5);
PdeCheck genus2_pde_check(const HyperellipticCurve& c, int m, cplx zeta, double h = 1e-5);

}  // namespace hurwitz::variational
