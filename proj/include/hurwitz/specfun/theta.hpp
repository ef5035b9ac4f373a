#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz::specfun {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct ThetaCharacteristic {
  Eigen::VectorXd a;  // entries in {0, 1/2}
  Eigen::VectorXd b;
  bool odd = false;

  static ThetaCharacteristic zero(int g);
  // Validates entries and derives the parity flag 4<a,b> mod 2.
  static ThetaCharacteristic make(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
  int genus() const { return static_cast<int>(a.size()); }
};

// All half-integer characteristics of the requested parity.
std::vector<ThetaCharacteristic> half_characteristics(int g, bool odd);

class RiemannMatrix {
 public:
  // Requires symmetry to 1e-10 relative and Im B positive definite.
  explicit RiemannMatrix(const CMatrix& B);
  int genus() const { return static_cast<int>(B_.rows()); }
  const CMatrix& matrix() const { return B_; }
  const Eigen::MatrixXd& imag() const { return Y_; }
  const Eigen::MatrixXd& imag_inverse() const { return Yinv_; }
  // Upper triangular T with |T x|^2 = pi x^T Im(B) x.
  const Eigen::MatrixXd& cholesky_upper() const { return T_; }
  double shortest_vector() const { return rho_; }
  double min_imag_eigenvalue() const { return min_eig_; }

 private:
  CMatrix B_;
  Eigen::MatrixXd Y_, Yinv_, T_;
  double rho_ = 0.0;
  double min_eig_ = 0.0;
};

struct ThetaOptions {
  double tolerance = 1e-12;
  double max_radius = 12.0;
};

struct ThetaResult {
  cplx value;
  CVector gradient;  // filled by theta_jet only
  int terms = 0;
  double radius = 0.0;
  double tail_bound = 0.0;
  double abs_sum = 0.0;
};

// theta[a;b](t|B) = sum_m exp(pi i (m+a)B(m+a) + 2 pi i (m+a)(t+b)), differentiated
// once along each listed direction. The truncation ellipsoid grows until the
// tail bound drops below tolerance times the sum of term magnitudes.
ThetaResult riemann_theta(const CVector& t, const RiemannMatrix& B, const ThetaCharacteristic& ch,
                          const std::vector<CVector>& directions = {}, const ThetaOptions& opts = {});

// Value and gradient in one lattice sweep.
ThetaResult theta_jet(const CVector& t, const RiemannMatrix& B, const ThetaCharacteristic& ch,
                      const ThetaOptions& opts = {});

cplx theta(const CVector& t, const RiemannMatrix& B, const ThetaCharacteristic& ch);

// -d/dt theta[1/2;1/2](0|tau) = 2 pi eta(tau)^3.
cplx jacobi_theta1_prime(cplx tau);

}  // namespace hurwitz::specfun
