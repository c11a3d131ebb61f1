// Body/inertial and tilt/body rotations.
//
// Inertial Z points up. R_bg maps body-frame vectors into the inertial frame;
// positive theta raises the nose. R_beta maps tilt-frame vectors (z along the
// rotor shafts) into the body frame.
#pragma once

#include "tiltrotor/types.hpp"

#include <cmath>

namespace tiltrotor {

template <typename Scalar> Mat3<Scalar> rotation_bg(Scalar phi, Scalar theta, Scalar psi) {
  using std::cos;
  using std::sin;
  const Scalar cf = cos(phi), sf = sin(phi);
  const Scalar ct = cos(theta), st = sin(theta);
  const Scalar cp = cos(psi), sp = sin(psi);
  Mat3<Scalar> R;
  R << ct * cp, cf * sp + sf * st * cp, sf * sp - cf * st * cp,
      -ct * sp, cf * cp - sf * st * sp, sf * cp + cf * st * sp,
      st, -sf * ct, cf * ct;
  return R;
}

template <typename Derived> auto rotation_bg(const Eigen::MatrixBase<Derived>& x_a) {
  return rotation_bg(x_a(0), x_a(1), x_a(2));
}

template <typename Scalar> Mat3<Scalar> rotation_beta(Scalar beta) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(beta), s = sin(beta);
  Mat3<Scalar> R;
  R << c, Scalar(0), s,
      Scalar(0), Scalar(1), Scalar(0),
      -s, Scalar(0), c;
  return R;
}

// Unit direction of the rotor thrust in the inertial frame.
template <typename Scalar> Vec3<Scalar> thrust_direction(Scalar phi, Scalar theta, Scalar psi, Scalar beta) {
  using std::cos;
  using std::sin;
  return rotation_bg(phi, theta, psi) * Vec3<Scalar>(sin(beta), Scalar(0), cos(beta));
}

}  // namespace tiltrotor
