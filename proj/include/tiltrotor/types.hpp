// Common Eigen aliases and small scalar helpers shared by every module.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>

namespace tiltrotor {

template <typename Scalar> using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar> using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

using Vec2d = Vec2<double>;
using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;
using Mat2d = Mat2<double>;
using Mat3d = Mat3<double>;
using Mat4d = Mat4<double>;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// sign(0) is 0, which keeps sliding-mode equilibria exact.
template <typename Scalar> constexpr Scalar sgn(Scalar x) {
  return static_cast<Scalar>((Scalar(0) < x) - (x < Scalar(0)));
}

// |x|^p * sign(x)
template <typename Scalar> Scalar signed_pow(Scalar x, Scalar p) {
  using std::abs;
  using std::pow;
  return sgn(x) * pow(abs(x), p);
}

}  // namespace tiltrotor
