#pragma once

#include <Eigen/Core>

namespace resram {

/// One classical fourth-order Runge-Kutta step of x' = rhs(x).
template <typename Scalar, int N, typename Rhs>
Eigen::Matrix<Scalar, N, 1> rk4_step(const Rhs& rhs, const Eigen::Matrix<Scalar, N, 1>& x, Scalar h) {
  const Eigen::Matrix<Scalar, N, 1> k1 = rhs(x);
  const Eigen::Matrix<Scalar, N, 1> k2 = rhs(x + (h / 2) * k1);
  const Eigen::Matrix<Scalar, N, 1> k3 = rhs(x + (h / 2) * k2);
  const Eigen::Matrix<Scalar, N, 1> k4 = rhs(x + h * k3);
  return x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

/// Affine linear system x' = A x + b; every switch topology of the bitline reduces to one.
template <typename Scalar, int N>
struct AffineSystem {
  Eigen::Matrix<Scalar, N, N> a = Eigen::Matrix<Scalar, N, N>::Zero();
  Eigen::Matrix<Scalar, N, 1> b = Eigen::Matrix<Scalar, N, 1>::Zero();

  Eigen::Matrix<Scalar, N, 1> operator()(const Eigen::Matrix<Scalar, N, 1>& x) const { return a * x + b; }
};

}  // namespace resram
