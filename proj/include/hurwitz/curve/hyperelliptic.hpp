#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "hurwitz/errors.hpp"
#include "hurwitz/specfun/theta.hpp"

namespace hurwitz::curve {

using specfun::CMatrix;
using specfun::CVector;

struct PeriodOptions {
  int start_nodes = 64;
  int max_nodes = 1 << 14;
  double tolerance = 1e-13;         // relative change under node doubling
  double max_condition = 1e10;      // of the a-period matrix
};

enum class ChartKind { Regular, Branch, Infinity };

// Local coordinate x on the curve y^2 = prod (z - e_i):
//   Regular:  z = center + x, y continued from sheet * y1(center)
//   Branch:   z = e_m + x^2, y = x G(x), G(0) the principal root of prod_{i != m}(e_m - e_i)
//   Infinity: z = 1/x, y = sheet * x^{-(g+1)} prod sqrt(1 - e_i x)
struct Chart {
  ChartKind kind = ChartKind::Regular;
  cplx center = 0.0;
  int sheet = 1;
  int branch = -1;
  double scale = 1.0;  // radius inside which the chart is single-valued
  cplx y0 = 0.0;       // y at the center (Regular) or G(0) (Branch)
};

struct ChartPoint {
  cplx x = 0.0;
  cplx z = 0.0;
  cplx dz = 0.0;   // dz/dx; unused at infinity where it is carried implicitly
  cplx y = 0.0;
  cplx q = 0.0;    // (dz/dx) / y
  CVector u;       // z^j q, j = 0..g-1: unnormalized holomorphic differentials per dx
  bool infinite = false;
  // Homogeneous data: z = h1/h0, dzh = dz h0^2, qh = q h0^{1-g}; finite at infinity.
  cplx h0 = 1.0, h1 = 0.0, dzh = 0.0, qh = 0.0;
};

class HyperellipticCurve {
 public:
  // Branch points must be distinct and have strictly increasing real parts;
  // cut k joins e_{2k-1} and e_{2k} by a straight segment.
  explicit HyperellipticCurve(std::vector<cplx> branch_points, const PeriodOptions& opts = {});

  int genus() const { return g_; }
  const std::vector<cplx>& branch_points() const { return e_; }
  const specfun::RiemannMatrix& riemann() const { return *riemann_; }
  const CMatrix& B() const { return riemann_->matrix(); }
  const CMatrix& a_periods() const { return A_; }  // (k, j) = oint_{a_k} z^j dz / y
  const CMatrix& b_periods() const { return Bp_; }
  const CMatrix& normalization() const { return C_; }  // v_i = sum_j C_ij z^j dz / y
  const CMatrix& bidifferential_correction() const { return N_; }
  const Eigen::MatrixXi& marking() const { return marking_; }
  bool canonical_marking() const;
  double period_certificate() const { return period_cert_; }
  int period_nodes() const { return period_nodes_; }
  double a_condition() const { return cond_; }
  double correction_asymmetry() const { return n_asym_; }
  int b_sign() const { return b_sign_; }
  double scale() const { return scale_; }
  cplx center() const { return center_; }

  // New canonical basis (a'; b') = M (a; b); M integer symplectic 2g x 2g.
  HyperellipticCurve with_marking(const Eigen::MatrixXi& M) const;

  // Sheet-1 branch: y1 = prod_k d_k sqrt(u_k - 1) sqrt(u_k + 1), u_k = (z - c_k)/d_k.
  cplx y1(cplx z) const;
  cplx polynomial(cplx z) const;  // prod (z - e_i)
  const std::vector<cplx>& coefficients() const { return lambda_; }

  Chart regular_chart(cplx z0, int sheet) const;
  Chart branch_chart(int m) const;
  Chart infinity_chart(int sheet) const;
  ChartPoint evaluate(const Chart& c, cplx x) const;

  // Normalized differentials v_i per dx in the chart.
  CVector differentials(const Chart& c, cplx x) const;
  // Taylor coefficients of v_i in the chart up to x^order (Cauchy samples).
  std::vector<CVector> differential_jet(const Chart& c, cplx x, int order) const;

  // W(P,Q)/(dx dy) in the given charts, normalized so that a-periods vanish.
  // Throws DiagonalTooClose when both points share a chart and are nearer than 1e-2 scale.
  cplx bidifferential(const Chart& cp, cplx xp, const Chart& cq, cplx xq) const;
  // Same formula without the diagonal guard; for stencils.
  cplx bidifferential_raw(const Chart& cp, cplx xp, const Chart& cq, cplx xq) const;

  struct Connection {
    cplx value = 0.0;
    double certificate = 0.0;  // |E(h/2) - E(h)|
  };
  // 6 lim (W - (x-y)^{-2}) via a rotation-averaged stencil and Richardson extrapolation.
  Connection bergman_connection(const Chart& c, cplx x0) const;
  // Closed form in the z chart at a regular point, for cross-checks.
  cplx bergman_connection_closed_form(cplx z, int sheet) const;
  Connection schiffer_connection(const Chart& c, cplx x0) const;
  // sum (Im B)^{-1}_{ij} v_i conj(v_j), real and nonnegative.
  double bergman_kernel(const Chart& c, cplx x0) const;

  // a-cycle integral of W(., Q) and b-cycle integral, per dx_Q in Q's chart.
  CVector a_cycle_of_bidifferential(const Chart& cq, cplx xq) const;
  CVector b_cycle_of_bidifferential(const Chart& cq, cplx xq) const;

  // Sample of an a-loop: z(theta), y(theta) and dz/dtheta with midpoint nodes.
  struct LoopSample {
    std::vector<double> theta;
    std::vector<cplx> z, y, dz;
    std::vector<cplx> dzy;  // (dz/dtheta) / y, formed without cancellation
  };
  LoopSample a_loop(int k, int nodes) const;  // k = 0..g-1
  LoopSample gap_loop(int j, int nodes) const;  // gap between cut j and cut j+1, j = 0..g-1

  // Integral of the Bergman kernel over the surface (both sheets, d^2 z); equals g.
  double bergman_area_integral(double rel_tol = 1e-5) const;

 private:
  HyperellipticCurve() = default;
  void compute_periods(const PeriodOptions& opts);
  void apply_marking();
  cplx f_poly(cplx x, cplx w) const;
  cplx f_poly_d22(cplx z) const;
  cplx w_algebraic(const ChartPoint& p, const ChartPoint& q, cplx delta) const;
  CVector raw_cycle_of_walg(const ChartPoint& q, bool b_cycle) const;

  int g_ = 0;
  std::vector<cplx> e_;
  std::vector<cplx> lambda_;  // ascending coefficients of prod (z - e_i)
  std::vector<cplx> cut_c_, cut_d_;
  cplx center_ = 0.0;
  double scale_ = 1.0;
  int period_nodes_ = 0;
  double period_cert_ = 0.0;
  double cond_ = 0.0;
  double n_asym_ = 0.0;
  int b_sign_ = 1;          // b_i = b_sign sum_{j >= i} gap loop j
  CMatrix A0_, Bp0_;        // periods in the canonical marking
  CMatrix Ma0_, Mb0_;       // cycle integrals of the algebraic bidifferential, canonical marking
  CMatrix A_, Bp_, Ma_, Mb_;
  CMatrix C_, N_;
  Eigen::MatrixXi marking_;
  std::shared_ptr<const specfun::RiemannMatrix> riemann_;
};

}  // namespace hurwitz::curve
