#include "hurwitz/specfun/theta.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace hurwitz::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

bool is_half_integer_entry(double v) { return v == 0.0 || v == 0.5; }

// Visits all m in Z^g with |T(m + c)| <= R.
void enumerate_ellipsoid(const Eigen::MatrixXd& T, const Eigen::VectorXd& c, double R,
                         const std::function<void(const Eigen::VectorXi&)>& visit) {
  const int g = static_cast<int>(T.rows());
  Eigen::VectorXi m(g);
  Eigen::VectorXd x(g);
  std::function<void(int, double)> rec = [&](int i, double budget) {
    if (i < 0) {
      visit(m);
      return;
    }
    double shift = 0.0;
    for (int j = i + 1; j < g; ++j) shift += T(i, j) * x(j);
    const double center = -shift / T(i, i);
    const double half = std::sqrt(std::max(budget, 0.0)) / T(i, i);
    const int lo = static_cast<int>(std::ceil(center - half - c(i)));
    const int hi = static_cast<int>(std::floor(center + half - c(i)));
    for (int k = lo; k <= hi; ++k) {
      m(i) = k;
      x(i) = k + c(i);
      const double r = T(i, i) * x(i) + shift;
      rec(i - 1, budget - r * r);
    }
  };
  rec(g - 1, R * R);
}

double tail_bound(int g, double rho, double R) {
  const double x = R - rho / 2.0;
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * g * std::pow(2.0 / rho, g) * boost::math::tgamma(0.5 * g, x * x);
}

ThetaResult theta_sweep(const CVector& t, const RiemannMatrix& Bm, const ThetaCharacteristic& ch,
                        const std::vector<CVector>& directions, bool want_gradient,
                        const ThetaOptions& opts) {
  const int g = Bm.genus();
  if (t.size() != g || ch.genus() != g) fail(ErrorCode::InvalidInput, "theta argument size mismatch");
  const CMatrix& B = Bm.matrix();
  const Eigen::MatrixXd& T = Bm.cholesky_upper();
  const Eigen::VectorXd s = Bm.imag_inverse() * t.imag();
  const Eigen::VectorXd c = ch.a + s;
  const double e0 = std::exp(std::min(700.0, (T * s).squaredNorm()));
  double dir_norm = 1.0;
  const double tinv = T.inverse().norm();
  const CVector tb = t + ch.b.cast<cplx>();
  double R = std::sqrt(-std::log(opts.tolerance)) + Bm.shortest_vector() / 2.0;
  for (;;) {
    ThetaResult res;
    res.radius = R;
    cplx sum = 0.0;
    CVector grad = CVector::Zero(want_gradient ? g : 0);
    double abs_sum = 0.0;
    int count = 0;
    enumerate_ellipsoid(T, c, R, [&](const Eigen::VectorXi& m) {
      const Eigen::VectorXd n = m.cast<double>() + ch.a;
      const CVector nc = n.cast<cplx>();
      const cplx expo = kI * kPi * nc.dot(B * nc) + 2.0 * kI * kPi * nc.dot(tb);
      cplx term = std::exp(expo);
      for (const CVector& u : directions) term *= 2.0 * kI * kPi * nc.dot(u);
      sum += term;
      abs_sum += std::abs(term);
      if (want_gradient) grad += (2.0 * kI * kPi) * term * nc;
      ++count;
    });
    dir_norm = 1.0;
    const int order = static_cast<int>(directions.size()) + (want_gradient ? 1 : 0);
    double umax = 1.0;
    for (const CVector& u : directions) umax = std::max(umax, u.norm());
    for (int k = 0; k < order; ++k) dir_norm *= 2.0 * kPi * umax * (tinv * (R + 2.0) + s.norm() + 1.0);
    const double bound = tail_bound(g, Bm.shortest_vector(), R) * e0 * dir_norm;
    if (bound <= opts.tolerance * std::max(abs_sum, 1e-300)) {
      res.value = sum;
      res.gradient = grad;
      res.terms = count;
      res.tail_bound = bound;
      res.abs_sum = abs_sum;
      return res;
    }
    R += 0.5;
    if (R > opts.max_radius)
      fail(ErrorCode::TruncationFailure, "theta ellipsoid radius exceeds cap");
  }
}

}  // namespace

ThetaCharacteristic ThetaCharacteristic::zero(int g) {
  return make(Eigen::VectorXd::Zero(g), Eigen::VectorXd::Zero(g));
}

ThetaCharacteristic ThetaCharacteristic::make(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidInput, "characteristic halves differ in length");
  for (int i = 0; i < a.size(); ++i)
    if (!is_half_integer_entry(a(i)) || !is_half_integer_entry(b(i)))
      fail(ErrorCode::InvalidInput, "characteristic entries must be 0 or 1/2");
  ThetaCharacteristic ch{a, b, false};
  const long p = std::lround(4.0 * a.dot(b));
  ch.odd = (p % 2) != 0;
  return ch;
}

std::vector<ThetaCharacteristic> half_characteristics(int g, bool odd) {
  std::vector<ThetaCharacteristic> out;
  for (int mask = 0; mask < (1 << (2 * g)); ++mask) {
    Eigen::VectorXd a(g), b(g);
    for (int i = 0; i < g; ++i) {
      a(i) = ((mask >> i) & 1) ? 0.5 : 0.0;
      b(i) = ((mask >> (g + i)) & 1) ? 0.5 : 0.0;
    }
    auto ch = ThetaCharacteristic::make(a, b);
    if (ch.odd == odd) out.push_back(ch);
  }
  return out;
}

RiemannMatrix::RiemannMatrix(const CMatrix& B) : B_(B) {
  const int g = static_cast<int>(B.rows());
  if (g < 1 || B.cols() != g) fail(ErrorCode::InvalidInput, "Riemann matrix must be square");
  const double asym = (B - B.transpose()).norm();
  if (asym > 1e-10 * std::max(1.0, B.norm()))
    fail(ErrorCode::InvalidInput, "Riemann matrix not symmetric");
  B_ = 0.5 * (B + B.transpose());
  Y_ = B_.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Y_);
  min_eig_ = es.eigenvalues().minCoeff();
  if (!(min_eig_ > 0.0)) fail(ErrorCode::InvalidInput, "Im B is not positive definite");
  Yinv_ = Y_.inverse();
  Eigen::LLT<Eigen::MatrixXd> llt(kPi * Y_);
  T_ = llt.matrixU();
  double r0 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g; ++i) r0 = std::min(r0, T_.col(i).norm());
  rho_ = r0;
  enumerate_ellipsoid(T_, Eigen::VectorXd::Zero(g), r0, [&](const Eigen::VectorXi& m) {
    if (m.isZero()) return;
    rho_ = std::min(rho_, (T_ * m.cast<double>()).norm());
  });
}

ThetaResult riemann_theta(const CVector& t, const RiemannMatrix& B, const ThetaCharacteristic& ch,
                          const std::vector<CVector>& directions, const ThetaOptions& opts) {
  return theta_sweep(t, B, ch, directions, false, opts);
}

ThetaResult theta_jet(const CVector& t, const RiemannMatrix& B, const ThetaCharacteristic& ch,
                      const ThetaOptions& opts) {
  return theta_sweep(t, B, ch, {}, true, opts);
}

cplx theta(const CVector& t, const RiemannMatrix& B, const ThetaCharacteristic& ch) {
  return riemann_theta(t, B, ch).value;
}

cplx jacobi_theta1_prime(cplx tau) {
  CMatrix B(1, 1);
  B(0, 0) = tau;
  const RiemannMatrix rm(B);
  Eigen::VectorXd h(1);
  h(0) = 0.5;
  const auto ch = ThetaCharacteristic::make(h, h);
  CVector e = CVector::Ones(1);
  return -riemann_theta(CVector::Zero(1), rm, ch, {e}).value;
}

}  // namespace hurwitz::specfun
