#pragma once

#include <optional>
#include <vector>

#include "hurwitz/curve/hyperelliptic.hpp"

namespace hurwitz::curve {

struct CurvePoint {
  enum class Kind { Finite, Branch, Infinity };
  Kind kind = Kind::Finite;
  cplx z = 0.0;
  int sheet = 1;   // +1: y = y1(z); -1: y = -y1(z)
  int branch = -1;

  static CurvePoint finite(cplx z, int sheet) { return {Kind::Finite, z, sheet, -1}; }
  static CurvePoint branch_point(int m) { return {Kind::Branch, 0.0, 1, m}; }
  static CurvePoint infinity(int sheet) { return {Kind::Infinity, 0.0, sheet, -1}; }
};

// Chart in which the point sits at x = 0: z - z0, sqrt(z - e_m) or 1/z.
Chart natural_chart(const HyperellipticCurve& c, const CurvePoint& p);

// Distinguished parameter for f = z at a point where df has order d:
// d = 0 regular, d = 1 simple branch point, d = -2 simple pole over infinity.
struct DistinguishedParameter {
  CurvePoint point;
  int order = 0;
  double exponent = 1.0;  // 1/(d+1)
  Chart chart;
};
DistinguishedParameter distinguished_parameter(const HyperellipticCurve& c, const CurvePoint& p, int order);

// Abel map with sheet-tracked polyline paths from a fixed anchor O on sheet 1 above
// all cuts. Paths never cross a cut except where the routing crosses the last cut
// to reach sheet 2; branch points are approached vertically from above.
class AbelMap {
 public:
  explicit AbelMap(const HyperellipticCurve& c);

  const HyperellipticCurve& curve() const { return c_; }
  cplx anchor() const { return O_; }

  // int_O^P z^j dz / y and its normalized version.
  CVector unnormalized(const CurvePoint& p) const;
  CVector operator()(const CurvePoint& p) const;
  // A^P(Q) = A(Q) - A(P) along the concatenated routes.
  CVector between(const CurvePoint& p, const CurvePoint& q) const;

  struct PathIntegral {
    CVector integral;  // unnormalized
    cplx y_end = 0.0;
    int steps = 0;
  };
  // Straight segments through the vertices, y continued from y_start.
  PathIntegral integrate_polyline(const std::vector<cplx>& vertices, cplx y_start) const;
  std::vector<cplx> route(const CurvePoint& p) const;  // finite part of the path

  double top() const { return ytop_; }
  double bottom() const { return ybot_; }
  double right() const { return xright_; }

 private:
  bool above_cuts(cplx z) const;
  int choose_sign(cplx y_ref, cplx z, cplx& y) const;

  const HyperellipticCurve& c_;
  cplx O_;
  double ytop_ = 0.0, ybot_ = 0.0, xright_ = 0.0, span_ = 1.0;
};

struct RiemannConstants {
  CVector K;              // adjudicated vector at the anchor
  CVector printed;        // 1/2 + B_ii/2 - sum_{j != i} Q_{i j}
  CVector transposed;     // 1/2 + B_ii/2 - sum_{l != i} Q_{l i}
  double residual_printed = 0.0;     // max |theta(A(P) + K)| / abs-sum over test points
  double residual_transposed = 0.0;
  bool printed_selected = false;     // printed beats transposed
  CVector divisor;                   // -A((dz))/2
  double residual_divisor = 0.0;
  enum class Source { Printed, Transposed, Divisor };
  Source source = Source::Printed;
  Eigen::VectorXi half_period_shift;  // (n, m): K = candidate + (n + B m)/2, zero if none needed
  double residual = 0.0;
  CMatrix Q;  // Q_{l j} = oint_{a_l} v_l A_j
};

// Requires the canonical marking.
RiemannConstants riemann_constants(const AbelMap& abel);
// K^x = K^O + (g-1) A^O(x).
CVector riemann_constants_at(const AbelMap& abel, const RiemannConstants& rc, const CurvePoint& x);

struct LatticeDecomposition {
  Eigen::VectorXd Z, Zp;       // e = B Z + Z'
  Eigen::VectorXi Zi, Zpi;
  double residual = 0.0;       // distance of (Z, Z') from integers
};
LatticeDecomposition lattice_decompose(const specfun::RiemannMatrix& B, const CVector& e);
// A((dz)) = sum_m A(e_m) - 2 A(inf+) - 2 A(inf-).
CVector abel_canonical_divisor(const AbelMap& abel);

class PrimeForm {
 public:
  // Without a fixed characteristic every odd delta with nonzero gradient is kept and
  // each pair of points uses the one whose omega_delta stays farthest from zero there.
  // At g >= 2 every omega_delta vanishes at some Weierstrass point, so no single
  // choice works for all pairs. The default (for omega() and numerator()) maximizes
  // the clearance over the listed points.
  PrimeForm(const AbelMap& abel, const std::vector<CurvePoint>& avoid = {},
            std::optional<specfun::ThetaCharacteristic> delta = std::nullopt);

  const specfun::ThetaCharacteristic& characteristic() const { return deltas_[default_]; }
  const specfun::ThetaCharacteristic& characteristic(int k) const { return deltas_[k]; }
  int characteristics() const { return static_cast<int>(deltas_.size()); }
  // Index of the characteristic used for the pair.
  int select(const Chart& cp, cplx xp, const Chart& cq, cplx xq) const;

  // omega_delta per dx in the chart.
  cplx omega(const Chart& c, cplx x) const;
  cplx omega(int k, const Chart& c, cplx x) const;
  // E in the charts of P and Q (values per sqrt(dx_P) sqrt(dx_Q)). The spinor
  // roots are principal except that nearby points in one chart share a branch.
  cplx value(const CurvePoint& p, const Chart& cp, cplx xp, const CurvePoint& q, const Chart& cq, cplx xq) const;
  // Same with characteristic k held fixed, e.g. along a deformation path.
  cplx value(int k, const CurvePoint& p, const Chart& cp, cplx xp, const CurvePoint& q, const Chart& cq, cplx xq) const;
  // Shorthand with both points at the centers of their natural charts.
  cplx value(const CurvePoint& p, const CurvePoint& q) const;
  // Theta numerator for a precomputed Abel difference.
  cplx numerator(const CVector& diff) const;
  cplx numerator(int k, const CVector& diff) const;

 private:
  double clearance(int k, const Chart& ch, cplx x = 0.0) const;

  const AbelMap& abel_;
  std::vector<specfun::ThetaCharacteristic> deltas_;
  std::vector<CVector> grads_;
  int default_ = 0;
  bool fixed_ = false;
};

}  // namespace hurwitz::curve
