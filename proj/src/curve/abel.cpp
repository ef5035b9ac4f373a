#include "hurwitz/curve/abel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hurwitz/specfun/quadrature.hpp"

namespace hurwitz::curve {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double angle_between(cplx a, cplx b) { return std::abs(std::arg(a / b)); }

CVector gauss_chart_integral(const HyperellipticCurve& c, const Chart& ch, cplx xa, cplx xb) {
  const auto& rule = specfun::gauss_legendre20();
  CVector s = CVector::Zero(c.genus());
  const cplx mid = 0.5 * (xa + xb), half = 0.5 * (xb - xa);
  for (size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * c.evaluate(ch, mid + half * rule.nodes[k]).u;
  return s * half;
}

}  // namespace

Chart natural_chart(const HyperellipticCurve& c, const CurvePoint& p) {
  switch (p.kind) {
    case CurvePoint::Kind::Finite: return c.regular_chart(p.z, p.sheet);
    case CurvePoint::Kind::Branch: return c.branch_chart(p.branch);
    case CurvePoint::Kind::Infinity: return c.infinity_chart(p.sheet);
  }
  fail(ErrorCode::InvalidInput, "unknown point kind");
}

DistinguishedParameter distinguished_parameter(const HyperellipticCurve& c, const CurvePoint& p, int order) {
  int expected = 0;
  if (p.kind == CurvePoint::Kind::Branch) expected = 1;
  if (p.kind == CurvePoint::Kind::Infinity) expected = -2;
  if (order != expected) fail(ErrorCode::WrongOrder, "order of df at the point does not match the local model");
  DistinguishedParameter d;
  d.point = p;
  d.order = order;
  d.exponent = 1.0 / (order + 1);
  d.chart = natural_chart(c, p);
  return d;
}

AbelMap::AbelMap(const HyperellipticCurve& c) : c_(c) {
  const auto& e = c.branch_points();
  double im_max = -1e300, im_min = 1e300, re_max = -1e300, re_sum = 0.0;
  for (cplx z : e) {
    im_max = std::max(im_max, z.imag());
    im_min = std::min(im_min, z.imag());
    re_max = std::max(re_max, z.real());
    re_sum += z.real();
  }
  span_ = c.scale();
  ytop_ = im_max + span_;
  ybot_ = im_min - span_;
  xright_ = re_max + span_;
  O_ = cplx(re_sum / e.size(), ytop_);
}

bool AbelMap::above_cuts(cplx z) const {
  const auto& e = c_.branch_points();
  for (int k = 0; k <= c_.genus(); ++k) {
    const cplx a = e[2 * k], b = e[2 * k + 1];
    if (z.real() < a.real() || z.real() > b.real()) continue;
    const double t = (z.real() - a.real()) / (b.real() - a.real());
    const double ycut = a.imag() + t * (b.imag() - a.imag());
    return z.imag() >= ycut;
  }
  return true;
}

int AbelMap::choose_sign(cplx y_ref, cplx z, cplx& y) const {
  const cplx y1 = c_.y1(z);
  const bool plus = std::abs(y1 - y_ref) <= std::abs(y1 + y_ref);
  y = plus ? y1 : -y1;
  if (angle_between(y, y_ref) > kPi / 3.0) fail(ErrorCode::SheetTrackingLoss, "y continuation jumped");
  return plus ? 1 : -1;
}

AbelMap::PathIntegral AbelMap::integrate_polyline(const std::vector<cplx>& v, cplx y_start) const {
  const auto& rule = specfun::gauss_legendre20();
  const auto& e = c_.branch_points();
  const int g = c_.genus();
  PathIntegral r;
  r.integral = CVector::Zero(g);
  cplx y = y_start;
  for (size_t s = 0; s + 1 < v.size(); ++s) {
    cplx z = v[s];
    const cplx end = v[s + 1];
    while (std::abs(end - z) > 0.0) {
      double dist = 1e300;
      for (cplx b : e) dist = std::min(dist, std::abs(z - b));
      if (dist < 1e-10 * span_) fail(ErrorCode::SheetTrackingLoss, "path runs into a branch point");
      const double rem = std::abs(end - z);
      const double h = std::min(rem, 0.2 * dist);
      const cplx z1 = h >= rem ? end : z + (end - z) * (h / rem);
      const cplx mid = 0.5 * (z + z1), half = 0.5 * (z1 - z);
      for (size_t k = 0; k < rule.nodes.size(); ++k) {
        const cplx zn = mid + half * rule.nodes[k];
        cplx yn;
        choose_sign(y, zn, yn);
        cplx zp = 1.0;
        for (int j = 0; j < g; ++j) {
          r.integral(j) += rule.weights[k] * half * zp / yn;
          zp *= zn;
        }
      }
      cplx ynew;
      choose_sign(y, z1, ynew);
      y = ynew;
      z = z1;
      ++r.steps;
    }
  }
  r.y_end = y;
  return r;
}

std::vector<cplx> AbelMap::route(const CurvePoint& p) const {
  const auto& e = c_.branch_points();
  const int g = c_.genus();
  cplx target;
  int sheet = p.sheet;
  switch (p.kind) {
    case CurvePoint::Kind::Finite: target = p.z; break;
    case CurvePoint::Kind::Branch: {
      double dmin = 1e300;
      for (int i = 0; i < static_cast<int>(e.size()); ++i)
        if (i != p.branch) dmin = std::min(dmin, std::abs(e[i] - e[p.branch]));
      target = e[p.branch] + kI * 0.25 * dmin;
      sheet = 1;
      break;
    }
    case CurvePoint::Kind::Infinity: target = cplx(p.sheet > 0 ? O_.real() : xright_, ytop_); break;
  }
  std::vector<cplx> v{O_};
  auto push = [&](cplx z) {
    if (std::abs(z - v.back()) > 0.0) v.push_back(z);
  };
  const bool above = above_cuts(target);
  if (sheet > 0) {
    if (above) {
      push(cplx(target.real(), ytop_));
    } else {
      push(cplx(xright_, ytop_));
      push(cplx(xright_, ybot_));
      push(cplx(target.real(), ybot_));
    }
  } else {
    const cplx m = 0.5 * (e[2 * g] + e[2 * g + 1]);
    push(cplx(m.real(), ytop_));
    push(cplx(m.real(), ybot_));
    if (above) {
      push(cplx(xright_, ybot_));
      push(cplx(xright_, ytop_));
      push(cplx(target.real(), ytop_));
    } else {
      push(cplx(target.real(), ybot_));
    }
  }
  push(target);
  return v;
}

CVector AbelMap::unnormalized(const CurvePoint& p) const {
  const auto path = route(p);
  const PathIntegral r = integrate_polyline(path, c_.y1(O_));
  CVector total = r.integral;
  switch (p.kind) {
    case CurvePoint::Kind::Finite: {
      const cplx want = double(p.sheet) * c_.y1(p.z);
      if (std::abs(r.y_end - want) > std::abs(r.y_end + want))
        fail(ErrorCode::SheetTrackingLoss, "path ended on the wrong sheet");
      return total;
    }
    case CurvePoint::Kind::Branch: {
      const Chart ch = c_.branch_chart(p.branch);
      const cplx za = path.back();
      cplx xa = std::sqrt(za - ch.center);
      if (std::abs(c_.evaluate(ch, xa).y - r.y_end) > std::abs(c_.evaluate(ch, -xa).y - r.y_end)) xa = -xa;
      return total + gauss_chart_integral(c_, ch, xa, 0.0);
    }
    case CurvePoint::Kind::Infinity: {
      double emax = 0.0;
      for (cplx b : c_.branch_points()) emax = std::max(emax, std::abs(b));
      const cplx za = path.back();
      const double R = std::max(4.0 * emax, 2.0 * std::abs(za));
      const cplx zb = za + kI * std::sqrt(R * R - za.real() * za.real()) - kI * za.imag();
      const PathIntegral up = integrate_polyline({za, zb}, r.y_end);
      total += up.integral;
      const Chart ch = c_.infinity_chart(p.sheet);
      const cplx xb = 1.0 / zb;
      if (std::abs(c_.evaluate(ch, xb).y - up.y_end) > std::abs(c_.evaluate(ch, xb).y + up.y_end))
        fail(ErrorCode::SheetTrackingLoss, "ray reached the other point at infinity");
      return total + gauss_chart_integral(c_, ch, xb, 0.0);
    }
  }
  return total;
}

CVector AbelMap::operator()(const CurvePoint& p) const { return c_.normalization() * unnormalized(p); }

CVector AbelMap::between(const CurvePoint& p, const CurvePoint& q) const { return (*this)(q) - (*this)(p); }

// ---------------------------------------------------------------------------

LatticeDecomposition lattice_decompose(const specfun::RiemannMatrix& B, const CVector& e) {
  LatticeDecomposition d;
  d.Z = B.imag_inverse() * e.imag();
  d.Zp = e.real() - B.matrix().real() * d.Z;
  d.Zi = d.Z.array().round().cast<int>();
  d.Zpi = d.Zp.array().round().cast<int>();
  d.residual = std::max((d.Z - d.Zi.cast<double>()).cwiseAbs().maxCoeff(),
                        (d.Zp - d.Zpi.cast<double>()).cwiseAbs().maxCoeff());
  return d;
}

CVector abel_canonical_divisor(const AbelMap& abel) {
  const int n = static_cast<int>(abel.curve().branch_points().size());
  CVector s = CVector::Zero(abel.curve().genus());
  for (int m = 0; m < n; ++m) s += abel(CurvePoint::branch_point(m));
  s -= 2.0 * abel(CurvePoint::infinity(1));
  s -= 2.0 * abel(CurvePoint::infinity(-1));
  return s;
}

namespace {

// Vanishing residual of theta(A(P) + K) over test points on both sheets.
double vanishing_residual(const AbelMap& abel, const CVector& K) {
  const auto& c = abel.curve();
  const int g = c.genus();
  std::vector<CVector> pts;
  if (g == 1) {
    pts.push_back(CVector::Zero(1));
  } else {
    // g - 1 points; g = 2 in practice, larger g uses repeated points.
    const cplx z0 = c.center() + c.scale() * cplx(0.37, 1.21);
    const cplx z1 = c.center() + c.scale() * cplx(-0.61, -1.43);
    for (int sheet : {1, -1}) {
      for (cplx z : {z0, z1}) {
        const CVector a = abel(CurvePoint::finite(z, sheet));
        pts.push_back(double(g - 1) * a);
      }
    }
  }
  double worst = 0.0;
  const auto zero = specfun::ThetaCharacteristic::zero(g);
  for (const auto& p : pts) {
    const auto r = specfun::riemann_theta(p + K, c.riemann(), zero);
    worst = std::max(worst, std::abs(r.value) / r.abs_sum);
  }
  return worst;
}

}  // namespace

RiemannConstants riemann_constants(const AbelMap& abel) {
  const auto& c = abel.curve();
  if (!c.canonical_marking()) fail(ErrorCode::InvalidInput, "Riemann constants need the canonical marking");
  const int g = c.genus();
  const CMatrix& C = c.normalization();
  const CMatrix& B = c.B();
  RiemannConstants rc;
  rc.Q = CMatrix::Zero(g, g);
  const int N = 256;
  for (int l = 0; l < g; ++l) {
    const auto L = c.a_loop(l, N);
    // v per dtheta on the loop
    std::vector<CVector> v(N);
    for (int n = 0; n < N; ++n) {
      CVector u(g);
      cplx zp = 1.0;
      for (int j = 0; j < g; ++j) {
        u(j) = zp * L.dzy[n];
        zp *= L.z[n];
      }
      v[n] = C * u;
    }
    // Start of the loop: cut midpoint approached from above on sheet 1.
    const cplx mid = 0.5 * (c.branch_points()[2 * l] + c.branch_points()[2 * l + 1]);
    std::vector<cplx> path{abel.anchor()};
    if (mid.real() != abel.anchor().real()) path.push_back(cplx(mid.real(), abel.top()));
    path.push_back(mid);
    auto pr = abel.integrate_polyline(path, c.y1(abel.anchor()));
    const CVector A0 = C * pr.integral;
    cplx prod = 1.0;
    for (int j = 0; j <= g; ++j)
      if (j != l) {
        const cplx u = (mid - 0.5 * (c.branch_points()[2 * j] + c.branch_points()[2 * j + 1])) /
                       (0.5 * (c.branch_points()[2 * j + 1] - c.branch_points()[2 * j]));
        prod *= 0.5 * (c.branch_points()[2 * j + 1] - c.branch_points()[2 * j]) * std::sqrt(u - 1.0) * std::sqrt(u + 1.0);
      }
    const cplx d = 0.5 * (c.branch_points()[2 * l + 1] - c.branch_points()[2 * l]);
    const cplx y_half = kI * d * prod;  // loop y at theta = pi/2
    const double theta0 = std::abs(y_half - pr.y_end) <= std::abs(-y_half - pr.y_end) ? kPi / 2.0 : 1.5 * kPi;
    for (int j = 0; j < g; ++j) {
      if (j == l) continue;
      // spectral primitive of the periodic integrand v_j(theta)
      std::vector<cplx> f(N);
      for (int n = 0; n < N; ++n) f[n] = v[n](j);
      std::vector<cplx> coef(N);
      for (int k = 0; k < N; ++k) {
        const int freq = k < N / 2 ? k : k - N;
        cplx s = 0.0;
        for (int n = 0; n < N; ++n) s += f[n] * std::exp(-kI * double(freq) * L.theta[n]);
        coef[k] = s / double(N);
      }
      auto primitive = [&](double th) {
        cplx s = coef[0] * th;
        for (int k = 1; k < N; ++k) {
          const int freq = k < N / 2 ? k : k - N;
          if (freq == -N / 2) continue;
          s += coef[k] / (kI * double(freq)) * std::exp(kI * double(freq) * th);
        }
        return s;
      };
      const cplx F0 = primitive(theta0);
      cplx q = 0.0;
      for (int n = 0; n < N; ++n) q += v[n](l) * (A0(j) + primitive(L.theta[n]) - F0);
      rc.Q(l, j) = q * (2.0 * kPi / N);
    }
  }
  rc.printed.resize(g);
  rc.transposed.resize(g);
  for (int i = 0; i < g; ++i) {
    rc.printed(i) = 0.5 + 0.5 * B(i, i);
    rc.transposed(i) = 0.5 + 0.5 * B(i, i);
    for (int j = 0; j < g; ++j)
      if (j != i) {
        rc.printed(i) -= rc.Q(i, j);
        rc.transposed(i) -= rc.Q(j, i);
      }
  }
  rc.residual_printed = vanishing_residual(abel, rc.printed);
  rc.residual_transposed = vanishing_residual(abel, rc.transposed);
  rc.printed_selected = rc.residual_printed <= rc.residual_transposed;
  // The loop integral formula assumes a-loops through the anchor. Our loops hug the
  // cuts instead, so the divisor route -A((dz))/2 competes on equal terms.
  rc.divisor = -0.5 * abel_canonical_divisor(abel);
  rc.residual_divisor = vanishing_residual(abel, rc.divisor);
  const CVector* bases[3] = {&rc.printed, &rc.transposed, &rc.divisor};
  const RiemannConstants::Source sources[3] = {RiemannConstants::Source::Printed,
                                               RiemannConstants::Source::Transposed,
                                               RiemannConstants::Source::Divisor};
  rc.residual = 1e300;
  rc.half_period_shift = Eigen::VectorXi::Zero(2 * g);
  for (int s = 0; s < 3; ++s)
    for (int mask = 0; mask < (1 << (2 * g)); ++mask) {
      Eigen::VectorXd n(g), m(g);
      for (int i = 0; i < g; ++i) {
        n(i) = (mask >> i) & 1;
        m(i) = (mask >> (g + i)) & 1;
      }
      const CVector K = *bases[s] + 0.5 * (n.cast<cplx>() + B * m.cast<cplx>());
      const double r = mask == 0 ? (s == 0 ? rc.residual_printed : s == 1 ? rc.residual_transposed : rc.residual_divisor)
                                 : vanishing_residual(abel, K);
      if (r < rc.residual) {
        rc.residual = r;
        rc.K = K;
        rc.source = sources[s];
        for (int i = 0; i < g; ++i) {
          rc.half_period_shift(i) = static_cast<int>(n(i));
          rc.half_period_shift(g + i) = static_cast<int>(m(i));
        }
      }
      if (r < 1e-10) break;
    }
  if (rc.residual > 1e-8) fail(ErrorCode::LatticeResolutionFailure, "no candidate satisfies the theta vanishing property");
  return rc;
}

CVector riemann_constants_at(const AbelMap& abel, const RiemannConstants& rc, const CurvePoint& x) {
  return rc.K + double(abel.curve().genus() - 1) * abel(x);
}

// ---------------------------------------------------------------------------

PrimeForm::PrimeForm(const AbelMap& abel, const std::vector<CurvePoint>& avoid,
                     std::optional<specfun::ThetaCharacteristic> delta)
    : abel_(abel) {
  const auto& c = abel.curve();
  const int g = c.genus();
  const CVector zero = CVector::Zero(g);
  auto gradient = [&](const specfun::ThetaCharacteristic& d) {
    return specfun::theta_jet(zero, c.riemann(), d).gradient;
  };
  if (delta) {
    if (!delta->odd) fail(ErrorCode::InvalidInput, "prime form needs an odd characteristic");
    deltas_.push_back(*delta);
    grads_.push_back(gradient(*delta));
    fixed_ = true;
    if (grads_[0].norm() < 1e-10) fail(ErrorCode::CharacteristicSingular, "theta[delta] gradient vanishes at 0");
    return;
  }
  double best = -1.0;
  for (const auto& d : specfun::half_characteristics(g, true)) {
    const CVector gr = gradient(d);
    if (gr.norm() < 1e-10) continue;
    deltas_.push_back(d);
    grads_.push_back(gr);
    double worst = gr.norm();
    if (!avoid.empty()) {
      worst = 1e300;
      for (const auto& p : avoid) worst = std::min(worst, clearance(static_cast<int>(grads_.size()) - 1, natural_chart(c, p)));
    }
    if (worst > best) {
      best = worst;
      default_ = static_cast<int>(grads_.size()) - 1;
    }
  }
  if (grads_.empty()) fail(ErrorCode::CharacteristicSingular, "all odd characteristics have vanishing gradient");
}

double PrimeForm::clearance(int k, const Chart& ch, cplx x) const {
  const CVector v = abel_.curve().differentials(ch, x);
  return std::abs(cplx(grads_[k].transpose() * v)) / (grads_[k].norm() * v.norm());
}

int PrimeForm::select(const Chart& cp, cplx xp, const Chart& cq, cplx xq) const {
  if (fixed_) return 0;
  int best = default_;
  double score = -1.0;
  for (int k = 0; k < static_cast<int>(grads_.size()); ++k) {
    const double s = std::min(clearance(k, cp, xp), clearance(k, cq, xq));
    if (s > score) {
      score = s;
      best = k;
    }
  }
  return best;
}

cplx PrimeForm::omega(const Chart& c, cplx x) const { return omega(default_, c, x); }

cplx PrimeForm::omega(int k, const Chart& c, cplx x) const {
  return grads_[k].transpose() * abel_.curve().differentials(c, x);
}

cplx PrimeForm::numerator(const CVector& diff) const { return numerator(default_, diff); }

cplx PrimeForm::numerator(int k, const CVector& diff) const {
  return specfun::riemann_theta(diff, abel_.curve().riemann(), deltas_[k]).value;
}

cplx PrimeForm::value(const CurvePoint& p, const Chart& cp, cplx xp, const CurvePoint& q, const Chart& cq,
                      cplx xq) const {
  return value(select(cp, xp, cq, xq), p, cp, xp, q, cq, xq);
}

cplx PrimeForm::value(int k, const CurvePoint& p, const Chart& cp, cplx xp, const CurvePoint& q, const Chart& cq,
                      cplx xq) const {
  const auto& c = abel_.curve();
  CVector ap = abel_(p), aq = abel_(q);
  if (xp != cplx(0.0)) ap += c.normalization() * gauss_chart_integral(c, cp, 0.0, xp);
  if (xq != cplx(0.0)) aq += c.normalization() * gauss_chart_integral(c, cq, 0.0, xq);
  const cplx hp = std::sqrt(omega(k, cp, xp));
  cplx hq = std::sqrt(omega(k, cq, xq));
  const bool same = cp.kind == cq.kind && cp.center == cq.center && cp.sheet == cq.sheet && cp.branch == cq.branch;
  if (same && std::abs(xp - xq) < 0.5 * cp.scale && std::abs(hq - hp) > std::abs(hq + hp)) hq = -hq;
  return numerator(k, aq - ap) / (hp * hq);
}

cplx PrimeForm::value(const CurvePoint& p, const CurvePoint& q) const {
  const auto& c = abel_.curve();
  return value(p, natural_chart(c, p), 0.0, q, natural_chart(c, q), 0.0);
}

}  // namespace hurwitz::curve
