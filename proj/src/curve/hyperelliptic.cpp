#include "hurwitz/curve/hyperelliptic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace hurwitz::curve {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx cut_factor(cplx z, cplx c, cplx d) {
  const cplx u = (z - c) / d;
  return d * std::sqrt(u - 1.0) * std::sqrt(u + 1.0);
}

bool same_chart(const Chart& a, const Chart& b) {
  return a.kind == b.kind && a.center == b.center && a.sheet == b.sheet && a.branch == b.branch;
}

}  // namespace

HyperellipticCurve::HyperellipticCurve(std::vector<cplx> branch_points, const PeriodOptions& opts)
    : e_(std::move(branch_points)) {
  const int n = static_cast<int>(e_.size());
  if (n < 4 || n % 2 != 0) fail(ErrorCode::InvalidInput, "need 2g+2 >= 4 branch points");
  g_ = n / 2 - 1;
  center_ = 0.0;
  for (cplx e : e_) center_ += e;
  center_ /= static_cast<double>(n);
  scale_ = 0.0;
  for (cplx e : e_) scale_ = std::max(scale_, std::abs(e - center_));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(e_[i] - e_[j]) <= 1e-8 * scale_) fail(ErrorCode::InvalidInput, "branch points must be distinct");
  for (int i = 0; i + 1 < n; ++i)
    if (!(e_[i + 1].real() > e_[i].real()))
      fail(ErrorCode::InvalidInput, "branch points must have strictly increasing real parts");

  lambda_ = {1.0};
  for (cplx e : e_) {
    std::vector<cplx> next(lambda_.size() + 1, 0.0);
    for (size_t i = 0; i < lambda_.size(); ++i) {
      next[i + 1] += lambda_[i];
      next[i] -= e * lambda_[i];
    }
    lambda_ = std::move(next);
  }
  for (int k = 0; k <= g_; ++k) {
    cut_c_.push_back(0.5 * (e_[2 * k] + e_[2 * k + 1]));
    cut_d_.push_back(0.5 * (e_[2 * k + 1] - e_[2 * k]));
  }
  marking_ = Eigen::MatrixXi::Identity(2 * g_, 2 * g_);
  compute_periods(opts);
  apply_marking();
}

cplx HyperellipticCurve::y1(cplx z) const {
  cplx y = 1.0;
  for (int k = 0; k <= g_; ++k) y *= cut_factor(z, cut_c_[k], cut_d_[k]);
  return y;
}

cplx HyperellipticCurve::polynomial(cplx z) const {
  cplx p = 1.0;
  for (cplx e : e_) p *= z - e;
  return p;
}

HyperellipticCurve::LoopSample HyperellipticCurve::a_loop(int k, int nodes) const {
  LoopSample s;
  const cplx c = cut_c_[k], d = cut_d_[k];
  for (int n = 0; n < nodes; ++n) {
    const double th = 2.0 * kPi * (n + 0.5) / nodes;
    const cplx z = c + d * std::cos(th);
    cplx prod = 1.0;
    for (int j = 0; j <= g_; ++j)
      if (j != k) prod *= cut_factor(z, cut_c_[j], cut_d_[j]);
    s.theta.push_back(th);
    s.z.push_back(z);
    s.y.push_back(kI * d * std::sin(th) * prod);
    s.dz.push_back(-d * std::sin(th));
    s.dzy.push_back(kI / prod);
  }
  return s;
}

HyperellipticCurve::LoopSample HyperellipticCurve::gap_loop(int j, int nodes) const {
  LoopSample s;
  const cplx c = 0.5 * (e_[2 * j + 1] + e_[2 * j + 2]);
  const cplx d = 0.5 * (e_[2 * j + 2] - e_[2 * j + 1]);
  for (int n = 0; n < nodes; ++n) {
    const double th = 2.0 * kPi * (n + 0.5) / nodes;
    const double sn = std::sin(th);
    const cplx z = c + d * std::cos(th);
    const cplx y = y1(z);
    s.theta.push_back(th);
    s.z.push_back(z);
    s.y.push_back(sn > 0 ? y : -y);
    s.dz.push_back(-d * sn);
    s.dzy.push_back(-d * std::abs(sn) / y);
  }
  return s;
}

cplx HyperellipticCurve::f_poly(cplx x, cplx w) const {
  auto lam = [&](int i) { return i < static_cast<int>(lambda_.size()) ? lambda_[i] : cplx(0.0); };
  cplx s = 0.0, xw = 1.0;
  for (int k = 0; k <= g_ + 1; ++k) {
    s += xw * (2.0 * lam(2 * k) + lam(2 * k + 1) * (x + w));
    xw *= x * w;
  }
  return s;
}

cplx HyperellipticCurve::f_poly_d22(cplx z) const {
  auto lam = [&](int i) { return i < static_cast<int>(lambda_.size()) ? lambda_[i] : cplx(0.0); };
  cplx s = 0.0;
  for (int k = 2; k <= g_ + 1; ++k)
    s += 2.0 * lam(2 * k) * double(k * (k - 1)) * std::pow(z, 2 * k - 2) +
         lam(2 * k + 1) * double(k * (k - 1)) * std::pow(z, 2 * k - 1);
  for (int k = 1; k <= g_ + 1; ++k) s += lam(2 * k + 1) * double((k + 1) * k) * std::pow(z, 2 * k - 1);
  return s;
}

void HyperellipticCurve::compute_periods(const PeriodOptions& opts) {
  const int g = g_;
  // Sample points for the holomorphic part of the cycle integrals of the algebraic bidifferential.
  std::vector<cplx> qs;
  for (int s = 0; s <= g; ++s)
    qs.push_back(center_ + 2.0 * scale_ * std::exp(kI * (0.3 + 2.0 * kPi * s / (g + 1))));

  auto integrate = [&](int nodes, CMatrix& A, CMatrix& G, CMatrix& Ta, CMatrix& Tg) {
    A = CMatrix::Zero(g, g);
    G = CMatrix::Zero(g, g);
    Ta = CMatrix::Zero(g + 1, g);  // (sample, cycle)
    Tg = CMatrix::Zero(g + 1, g);
    const double w = 2.0 * kPi / nodes;
    for (int k = 0; k < g; ++k) {
      for (int pass = 0; pass < 2; ++pass) {
        const LoopSample L = pass == 0 ? a_loop(k, nodes) : gap_loop(k, nodes);
        CMatrix& P = pass == 0 ? A : G;
        CMatrix& T = pass == 0 ? Ta : Tg;
        for (int n = 0; n < nodes; ++n) {
          cplx zp = 1.0;
          for (int j = 0; j < g; ++j) {
            P(k, j) += w * zp * L.dzy[n];
            zp *= L.z[n];
          }
          for (int s = 0; s <= g; ++s) {
            const cplx dlt = L.z[n] - qs[s];
            T(s, k) += w * f_poly(L.z[n], qs[s]) * L.dzy[n] / (4.0 * dlt * dlt);
          }
        }
      }
    }
  };

  CMatrix A, G, Ta, Tg, A2, G2, Ta2, Tg2;
  int nodes = opts.start_nodes;
  integrate(nodes, A, G, Ta, Tg);
  for (;;) {
    integrate(2 * nodes, A2, G2, Ta2, Tg2);
    const double ref = std::max(A2.cwiseAbs().maxCoeff(), G2.cwiseAbs().maxCoeff());
    const double tref = std::max(Ta2.cwiseAbs().maxCoeff(), Tg2.cwiseAbs().maxCoeff());
    period_cert_ = std::max((A2 - A).cwiseAbs().maxCoeff(), (G2 - G).cwiseAbs().maxCoeff()) / ref;
    const double tcert = std::max((Ta2 - Ta).cwiseAbs().maxCoeff(), (Tg2 - Tg).cwiseAbs().maxCoeff()) / tref;
    nodes *= 2;
    A = A2, G = G2, Ta = Ta2, Tg = Tg2;
    if (std::max(period_cert_, tcert) < opts.tolerance) break;
    if (nodes >= opts.max_nodes) {
      if (period_cert_ > 1e-9) fail(ErrorCode::IllConditionedPeriods, "period quadrature did not converge");
      break;
    }
  }
  period_nodes_ = nodes;

  Eigen::JacobiSVD<CMatrix> svd(A);
  const auto sv = svd.singularValues();
  cond_ = sv(0) / sv(sv.size() - 1);
  if (!(cond_ < opts.max_condition)) fail(ErrorCode::IllConditionedPeriods, "a-period matrix is ill-conditioned");

  // Fit T(s, k) = sum_j Mc(k, j) q_s^j.
  CMatrix V(g + 1, g);
  for (int s = 0; s <= g; ++s)
    for (int j = 0; j < g; ++j) V(s, j) = std::pow(qs[s], j);
  auto fit = [&](const CMatrix& T) {
    const CMatrix X = V.colPivHouseholderQr().solve(T);
    const double resid = (V * X - T).cwiseAbs().maxCoeff() / std::max(1.0, T.cwiseAbs().maxCoeff());
    if (resid > 1e-9) fail(ErrorCode::IllConditionedPeriods, "bidifferential cycle integrals are not holomorphic in Q");
    return CMatrix(X.transpose());
  };
  const CMatrix Mgap = fit(Tg);

  // b_i = sum_{j >= i} c_j with a global sign fixed by Im B > 0.
  auto accumulate = [&](const CMatrix& gap) {
    CMatrix out = CMatrix::Zero(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) out.row(i) += gap.row(j);
    return out;
  };
  A0_ = A;
  Ma0_ = fit(Ta);
  const CMatrix Bsum = accumulate(G);
  const CMatrix C = A.transpose().inverse();
  const CMatrix Btest = C * Bsum.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Btest.imag() + Btest.imag().transpose()));
  b_sign_ = es.eigenvalues().maxCoeff() > 0 ? 1 : -1;
  if (es.eigenvalues().minCoeff() * es.eigenvalues().maxCoeff() <= 0)
    fail(ErrorCode::IllConditionedPeriods, "b-period matrix has indefinite imaginary part");
  Bp0_ = double(b_sign_) * Bsum;
  Mb0_ = double(b_sign_) * accumulate(Mgap);
}

bool HyperellipticCurve::canonical_marking() const {
  return marking_ == Eigen::MatrixXi::Identity(2 * g_, 2 * g_);
}

void HyperellipticCurve::apply_marking() {
  const int g = g_;
  const Eigen::MatrixXcd M = marking_.cast<double>().cast<cplx>();
  const auto M11 = M.topLeftCorner(g, g), M12 = M.topRightCorner(g, g);
  const auto M21 = M.bottomLeftCorner(g, g), M22 = M.bottomRightCorner(g, g);
  A_ = M11 * A0_ + M12 * Bp0_;
  Bp_ = M21 * A0_ + M22 * Bp0_;
  Ma_ = M11 * Ma0_ + M12 * Mb0_;
  Mb_ = M21 * Ma0_ + M22 * Mb0_;
  C_ = A_.transpose().inverse();
  CMatrix B = C_ * Bp_.transpose();
  const double asym = (B - B.transpose()).cwiseAbs().maxCoeff() / B.cwiseAbs().maxCoeff();
  if (asym > 1e-8) fail(ErrorCode::IllConditionedPeriods, "period matrix is not symmetric");
  B = 0.5 * (B + B.transpose());
  riemann_ = std::make_shared<const specfun::RiemannMatrix>(B);
  CMatrix N = A_.inverse() * Ma_;
  n_asym_ = (N - N.transpose()).cwiseAbs().maxCoeff() / std::max(1e-300, N.cwiseAbs().maxCoeff());
  N_ = 0.5 * (N + N.transpose());
}

HyperellipticCurve HyperellipticCurve::with_marking(const Eigen::MatrixXi& M) const {
  const int g = g_;
  if (M.rows() != 2 * g || M.cols() != 2 * g) fail(ErrorCode::InvalidInput, "marking must be 2g x 2g");
  Eigen::MatrixXi J = Eigen::MatrixXi::Zero(2 * g, 2 * g);
  J.topRightCorner(g, g) = Eigen::MatrixXi::Identity(g, g);
  J.bottomLeftCorner(g, g) = -Eigen::MatrixXi::Identity(g, g);
  if (M.transpose() * J * M != J) fail(ErrorCode::InvalidInput, "marking is not symplectic");
  HyperellipticCurve out = *this;
  out.marking_ = M * marking_;
  out.apply_marking();
  return out;
}

Chart HyperellipticCurve::regular_chart(cplx z0, int sheet) const {
  if (sheet != 1 && sheet != -1) fail(ErrorCode::InvalidInput, "sheet must be +1 or -1");
  Chart c;
  c.kind = ChartKind::Regular;
  c.center = z0;
  c.sheet = sheet;
  c.scale = std::numeric_limits<double>::infinity();
  for (cplx e : e_) c.scale = std::min(c.scale, std::abs(z0 - e));
  if (c.scale <= 1e-12 * scale_) fail(ErrorCode::DomainError, "regular chart centered at a branch point");
  c.y0 = double(sheet) * y1(z0);
  return c;
}

Chart HyperellipticCurve::branch_chart(int m) const {
  if (m < 0 || m >= static_cast<int>(e_.size())) fail(ErrorCode::InvalidInput, "branch index out of range");
  Chart c;
  c.kind = ChartKind::Branch;
  c.branch = m;
  c.center = e_[m];
  cplx prod = 1.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(e_.size()); ++i)
    if (i != m) {
      prod *= e_[m] - e_[i];
      dmin = std::min(dmin, std::abs(e_[m] - e_[i]));
    }
  c.y0 = std::sqrt(prod);
  c.scale = std::sqrt(dmin);
  return c;
}

Chart HyperellipticCurve::infinity_chart(int sheet) const {
  if (sheet != 1 && sheet != -1) fail(ErrorCode::InvalidInput, "sheet must be +1 or -1");
  Chart c;
  c.kind = ChartKind::Infinity;
  c.sheet = sheet;
  double emax = 0.0;
  for (cplx e : e_) emax = std::max(emax, std::abs(e));
  c.scale = emax > 0.0 ? 1.0 / emax : 1e300;
  return c;
}

ChartPoint HyperellipticCurve::evaluate(const Chart& c, cplx x) const {
  ChartPoint p;
  p.x = x;
  p.u.resize(g_);
  switch (c.kind) {
    case ChartKind::Regular: {
      p.z = c.center + x;
      cplx r = 1.0;
      for (cplx e : e_) r *= std::sqrt(1.0 + x / (c.center - e));
      p.y = c.y0 * r;
      p.dz = 1.0;
      p.q = 1.0 / p.y;
      break;
    }
    case ChartKind::Branch: {
      const cplx em = e_[c.branch];
      p.z = em + x * x;
      cplx G = c.y0;
      for (int i = 0; i < static_cast<int>(e_.size()); ++i)
        if (i != c.branch) G *= std::sqrt(1.0 + x * x / (em - e_[i]));
      p.y = x * G;
      p.dz = 2.0 * x;
      p.q = 2.0 / G;
      break;
    }
    case ChartKind::Infinity: {
      cplx R = 1.0;
      for (cplx e : e_) R *= std::sqrt(1.0 - e * x);
      const double s = c.sheet;
      p.infinite = x == cplx(0.0);
      p.z = p.infinite ? cplx(std::numeric_limits<double>::infinity()) : 1.0 / x;
      p.y = p.infinite ? p.z : s * R / std::pow(x, g_ + 1);
      p.dz = p.infinite ? p.z : -1.0 / (x * x);
      p.q = -s * std::pow(x, g_ - 1) / R;
      for (int j = 0; j < g_; ++j) p.u(j) = -s * std::pow(x, g_ - 1 - j) / R;
      p.h0 = x;
      p.h1 = 1.0;
      p.dzh = -1.0;
      p.qh = -s / R;
      return p;
    }
  }
  cplx zp = 1.0;
  for (int j = 0; j < g_; ++j) {
    p.u(j) = zp * p.q;
    zp *= p.z;
  }
  p.h0 = 1.0;
  p.h1 = p.z;
  p.dzh = p.dz;
  p.qh = p.q;
  return p;
}

CVector HyperellipticCurve::differentials(const Chart& c, cplx x) const { return C_ * evaluate(c, x).u; }

std::vector<CVector> HyperellipticCurve::differential_jet(const Chart& c, cplx x, int order) const {
  const double r = 0.3 * (c.scale - std::abs(x));
  if (!(r > 0.0)) fail(ErrorCode::DomainError, "jet center outside the chart");
  const int M = 64;
  std::vector<CVector> samples;
  for (int n = 0; n < M; ++n) samples.push_back(differentials(c, x + r * std::exp(kI * (2.0 * kPi * n / M))));
  std::vector<CVector> out;
  for (int k = 0; k <= order; ++k) {
    CVector a = CVector::Zero(g_);
    for (int n = 0; n < M; ++n) a += samples[n] * std::exp(-kI * (2.0 * kPi * n * k / M));
    out.push_back(a / (M * std::pow(r, k)));
  }
  return out;
}

cplx HyperellipticCurve::w_algebraic(const ChartPoint& p, const ChartPoint& q, cplx delta) const {
  // Near the diagonal the two terms cancel to O(delta^2); F is summed in extended
  // precision and delta comes from the chart coordinates when both share a chart.
  using lc = std::complex<long double>;
  auto L = [](cplx v) { return lc(v.real(), v.imag()); };
  auto lam = [&](int i) { return i < static_cast<int>(lambda_.size()) ? L(lambda_[i]) : lc(0.0L); };
  const int G = g_ + 1;
  const lc p0 = L(p.h0), p1 = L(p.h1), q0 = L(q.h0), q1 = L(q.h1);
  lc F = 0.0L;
  for (int k = 0; k <= G; ++k) {
    const lc xk = std::pow(p1, k), wk = std::pow(q1, k);
    F += 2.0L * lam(2 * k) * xk * std::pow(p0, G - k) * wk * std::pow(q0, G - k);
    if (k < G)
      F += lam(2 * k + 1) * (xk * p1 * std::pow(p0, G - k - 1) * wk * std::pow(q0, G - k) +
                             xk * std::pow(p0, G - k) * wk * q1 * std::pow(q0, G - k - 1));
  }
  const lc num = L(p.dzh) * L(q.dzh) / 2.0L + F * L(p.qh) * L(q.qh) / 4.0L;
  const lc d = L(delta);
  const lc w = num / (d * d);
  return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

cplx HyperellipticCurve::bidifferential_raw(const Chart& cp, cplx xp, const Chart& cq, cplx xq) const {
  const ChartPoint p = evaluate(cp, xp), q = evaluate(cq, xq);
  cplx delta = p.h1 * q.h0 - q.h1 * p.h0;
  if (same_chart(cp, cq)) {
    if (cp.kind == ChartKind::Regular) delta = xp - xq;
    if (cp.kind == ChartKind::Branch) delta = (xp - xq) * (xp + xq);
  }
  return w_algebraic(p, q, delta) - cplx(p.u.transpose() * N_ * q.u);
}

cplx HyperellipticCurve::bidifferential(const Chart& cp, cplx xp, const Chart& cq, cplx xq) const {
  if (same_chart(cp, cq) && std::abs(xp - xq) < 1e-2 * cp.scale)
    fail(ErrorCode::DiagonalTooClose, "points closer than the differentiation-stability threshold");
  return bidifferential_raw(cp, xp, cq, xq);
}

HyperellipticCurve::Connection HyperellipticCurve::bergman_connection(const Chart& c, cplx x0) const {
  const double h = 1e-3 * c.scale;
  if (std::abs(x0) + 4.0 * h > 0.9 * c.scale) fail(ErrorCode::DomainError, "stencil leaves the chart");
  if (c.kind == ChartKind::Branch && std::abs(x0) < 0.2 * c.scale) {
    // Near a branch point both stencil points sit at z ~ e_m and W cancels like
    // 1/h^4; take the value from a Cauchy integral over stencils at |x| = 0.45 scale.
    const double rho = 0.45 * c.scale;
    Connection r;
    cplx half = 0.0;
    for (int n : {16, 32}) {
      cplx s = 0.0;
      for (int j = 0; j < n; ++j) {
        const cplx x = rho * std::exp(kI * (2.0 * kPi * j / n));
        const Connection cj = bergman_connection(c, x);
        r.certificate = std::max(r.certificate, cj.certificate);
        s += cj.value * x / (x - x0);
      }
      r.value = s / double(n);
      if (n == 16) half = r.value;
    }
    r.certificate = std::max(r.certificate, std::abs(r.value - half));
    return r;
  }
  auto E = [&](double hh) {
    cplx s = 0.0;
    for (int j = 0; j < 4; ++j) {
      const cplx w = std::pow(kI, j);
      const cplx a = x0 + hh * w, b = x0 + 2.0 * hh * w;
      s += bidifferential_raw(c, a, c, b) - 1.0 / ((a - b) * (a - b));
    }
    return 6.0 * s / 4.0;
  };
  const cplx e1 = E(h), e2 = E(h / 2.0);
  Connection r;
  r.value = (16.0 * e2 - e1) / 15.0;
  r.certificate = std::abs(e2 - e1);
  if (r.certificate > 1e-4 * std::max(1.0, std::abs(r.value)))
    fail(ErrorCode::ExtrapolationUnstable, "Richardson ladder disagrees");
  return r;
}

cplx HyperellipticCurve::bergman_connection_closed_form(cplx z, int) const {
  const cplx P = polynomial(z);
  cplx dP = 0.0, d2P = 0.0;
  for (size_t i = 1; i < lambda_.size(); ++i) dP += double(i) * lambda_[i] * std::pow(z, int(i) - 1);
  for (size_t i = 2; i < lambda_.size(); ++i) d2P += double(i * (i - 1)) * lambda_[i] * std::pow(z, int(i) - 2);
  cplx corr = 0.0;
  for (int i = 0; i < g_; ++i)
    for (int j = 0; j < g_; ++j) corr += N_(i, j) * std::pow(z, i + j);
  return 6.0 * ((f_poly_d22(z) - d2P) / (8.0 * P) + dP * dP / (16.0 * P * P) - corr / P);
}

HyperellipticCurve::Connection HyperellipticCurve::schiffer_connection(const Chart& c, cplx x0) const {
  Connection r = bergman_connection(c, x0);
  const CVector v = differentials(c, x0);
  const Eigen::MatrixXcd Yinv = riemann_->imag_inverse().cast<cplx>();
  r.value -= 6.0 * kPi * cplx(v.transpose() * Yinv * v);
  return r;
}

double HyperellipticCurve::bergman_kernel(const Chart& c, cplx x0) const {
  const CVector v = differentials(c, x0);
  const Eigen::MatrixXcd Yinv = riemann_->imag_inverse().cast<cplx>();
  return cplx(v.adjoint() * Yinv * v).real();
}

CVector HyperellipticCurve::raw_cycle_of_walg(const ChartPoint& q, bool b_cycle) const {
  if (q.infinite) fail(ErrorCode::DomainError, "cycle integral at the point at infinity");
  const int nodes = period_nodes_;
  const double w = 2.0 * kPi / nodes;
  CVector out = CVector::Zero(g_);
  CVector gap = CVector::Zero(g_);
  for (int k = 0; k < g_; ++k) {
    const LoopSample L = b_cycle ? gap_loop(k, nodes) : a_loop(k, nodes);
    cplx s = 0.0;
    for (int n = 0; n < nodes; ++n) {
      const cplx dlt = L.z[n] - q.z;
      s += w * f_poly(L.z[n], q.z) * L.dzy[n] / (4.0 * dlt * dlt);
    }
    (b_cycle ? gap : out)(k) = s * q.q;
  }
  if (b_cycle)
    for (int i = 0; i < g_; ++i)
      for (int j = i; j < g_; ++j) out(i) += double(b_sign_) * gap(j);
  return out;
}

CVector HyperellipticCurve::a_cycle_of_bidifferential(const Chart& cq, cplx xq) const {
  const ChartPoint q = evaluate(cq, xq);
  const CVector ta = raw_cycle_of_walg(q, false), tb = raw_cycle_of_walg(q, true);
  const Eigen::MatrixXcd M = marking_.cast<double>().cast<cplx>();
  const CVector a = M.topLeftCorner(g_, g_) * ta + M.topRightCorner(g_, g_) * tb;
  return a - A_ * N_ * q.u;
}

CVector HyperellipticCurve::b_cycle_of_bidifferential(const Chart& cq, cplx xq) const {
  const ChartPoint q = evaluate(cq, xq);
  const CVector ta = raw_cycle_of_walg(q, false), tb = raw_cycle_of_walg(q, true);
  const Eigen::MatrixXcd M = marking_.cast<double>().cast<cplx>();
  const CVector b = M.bottomLeftCorner(g_, g_) * ta + M.bottomRightCorner(g_, g_) * tb;
  return b - Bp_ * N_ * q.u;
}

double HyperellipticCurve::bergman_area_integral(double rel_tol) const {
  using boost::math::quadrature::gauss_kronrod;
  const Eigen::MatrixXcd Yinv = riemann_->imag_inverse().cast<cplx>();
  auto kernel = [&](double x, double y) {
    const cplx z(x, y);
    const cplx yy = y1(z);
    CVector u(g_);
    cplx zp = 1.0;
    for (int j = 0; j < g_; ++j) {
      u(j) = zp / yy;
      zp *= z;
    }
    const CVector v = C_ * u;
    return 2.0 * cplx(v.adjoint() * Yinv * v).real();  // both sheets
  };
  std::vector<double> xs, ys;
  for (cplx e : e_) {
    xs.push_back(e.real());
    ys.push_back(e.imag());
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), ys.end());
  const double inf = std::numeric_limits<double>::infinity();
  auto split_integral = [&](const std::vector<double>& cuts, auto&& f, double tol) {
    double s = 0.0;
    std::vector<double> pts{-inf};
    pts.insert(pts.end(), cuts.begin(), cuts.end());
    pts.push_back(inf);
    for (size_t i = 0; i + 1 < pts.size(); ++i) s += gauss_kronrod<double, 15>::integrate(f, pts[i], pts[i + 1], 10, tol);
    return s;
  };
  auto row = [&](double y) {
    return split_integral(xs, [&](double x) { return kernel(x, y); }, 0.1 * rel_tol);
  };
  return split_integral(ys, row, rel_tol);
}

}  // namespace hurwitz::curve
