// Free wings (co-tilting with the rotors, immersed in their downwash), fixed
// wings, vertical tail and the moment contributions of every airframe part.
//
// Rotor numbering: 1 front right, 2 front left, 3 rear left, 4 rear right.
// Rotors 1 and 3 turn one way, 2 and 4 the other, hence the (-1)^(i+1)
// weights on reactive and gyroscopic terms.
#pragma once

#include "tiltrotor/types.hpp"

#include <array>
#include <cmath>

namespace tiltrotor {

struct WingParams {
  double S_fi = 4.3795;      // one free wing, m^2
  double S_ri = 21.875;      // one fixed-wing side, m^2
  double C_f = 0.5;          // free-wing lift slope (alpha_f), 1/rad
  double C_r = 0.15;         // free-wing lift slope (flap), 1/rad
  double C_Df0 = 0.008;
  double A_f = 4.0;
  double C_w0 = 0.32;
  double C_w_alpha = 0.5;
  double C_w_delta = 0.15;
  double C_Dw0 = 0.008;
  double A_w = 12.0;
  double alpha_max = 25.0 * kPi / 180.0;
  double d_f = 2.0;          // tilt axis to free-wing centre, m
  double d_r = 1.0445;       // free-wing chord-wise extent used for the tilt airflow, m
  double l1 = 4.09;          // front rotor lateral arm, m
  double l2 = 2.805;         // rear rotor lateral arm, m
  double l3 = 5.68;          // rear rotor longitudinal arm, m
  double l4 = 3.49;          // front rotor longitudinal arm, m
  double l5 = 5.728;         // fixed-wing lift lateral arm (quarter span), m

  double tilt_airflow_arm() const { return d_f + 0.25 * d_r; }
};

// Vertical tail. Zero area disables it, which is the default: the scenarios
// fly without sideslip.
struct TailParams {
  double S_t = 0.0;
  double C_Dt = 0.0;
  double C_Lt_beta = 0.0;  // side-force slope against sideslip, 1/rad
};

template <typename Scalar> struct FreeWingForces {
  Scalar L{0};        // total lift, N
  Scalar D{0};        // drag, N
  Scalar L_flap{0};   // part of L produced by the flap deflection
  Scalar L_alpha{0};  // part of L produced by the incidence
  Scalar alpha_f{0};  // rad
  Scalar V_rt{0};     // resultant airspeed over the wing, m/s
  bool stalled = false;
};

template <typename Scalar> struct FixedWingForces {
  Scalar L5{0}, L6{0};  // right, left lift, N
  Scalar D5{0}, D6{0};
};

template <typename Scalar> struct TailForces {
  Scalar f_rl{0};  // side force, N
  Scalar f_rd{0};  // drag, N
};

template <typename Scalar> Scalar oswald_factor(Scalar A) {
  using std::pow;
  return Scalar(1.78) * (Scalar(1) - Scalar(0.045) * pow(A, Scalar(0.68))) - Scalar(0.46);
}

// V_x, V_z: airspeed in the tilt frame (V_z along the shaft, positive towards
// the rotor); v_i: downwash of the rotor ahead of the wing.
template <typename Scalar>
FreeWingForces<Scalar> free_wing_forces(Scalar v_i, Scalar V_x, Scalar V_z, Scalar beta_dot, Scalar delta,
                                        const WingParams& wp, Scalar rho) {
  using std::atan;
  using std::sqrt;
  FreeWingForces<Scalar> out;
  const Scalar num = V_x + Scalar(wp.tilt_airflow_arm()) * beta_dot;
  const Scalar den = v_i + V_z;
  out.V_rt = sqrt(num * num + den * den);
  if (den != Scalar(0)) {
    out.alpha_f = atan(num / den);
  } else if (num != Scalar(0)) {
    out.alpha_f = sgn(num) * Scalar(kPi / 2);
  }
  out.stalled = std::abs(static_cast<double>(out.alpha_f)) > wp.alpha_max;

  const Scalar q = Scalar(0.5) * rho * Scalar(wp.S_fi) * out.V_rt * out.V_rt;
  const Scalar C_L = Scalar(wp.C_f) * out.alpha_f + Scalar(wp.C_r) * delta;
  const Scalar C_D = Scalar(wp.C_Df0) + C_L * C_L / (Scalar(kPi * wp.A_f) * oswald_factor(Scalar(wp.A_f)));
  out.L_alpha = q * Scalar(wp.C_f) * out.alpha_f;
  out.L_flap = q * Scalar(wp.C_r) * delta;
  out.L = q * C_L;
  out.D = q * C_D;
  return out;
}

template <typename Scalar>
FixedWingForces<Scalar> fixed_wing_forces(Scalar V, Scalar alpha, Scalar delta5, Scalar delta6, const WingParams& wp,
                                          Scalar rho) {
  const Scalar q = Scalar(0.5) * rho * Scalar(wp.S_ri) * V * V;
  const Scalar k = Scalar(1) / (Scalar(kPi * wp.A_w) * oswald_factor(Scalar(wp.A_w)));
  auto side = [&](Scalar delta, Scalar& L, Scalar& D) {
    const Scalar C_L = Scalar(wp.C_w0) + Scalar(wp.C_w_alpha) * alpha + Scalar(wp.C_w_delta) * delta;
    L = q * C_L;
    D = q * (Scalar(wp.C_Dw0) + k * C_L * C_L);
  };
  FixedWingForces<Scalar> out;
  side(delta5, out.L5, out.D5);
  side(delta6, out.L6, out.D6);
  return out;
}

template <typename Scalar>
TailForces<Scalar> tail_forces(Scalar V, Scalar sideslip, const TailParams& tp, Scalar rho) {
  const Scalar q = Scalar(0.5) * rho * V * V * Scalar(tp.S_t);
  return {q * Scalar(tp.C_Lt_beta) * sideslip, q * Scalar(tp.C_Dt)};
}

enum class TiltDirection { Forward, Backward };

// Largest tilt rate that keeps the free wings below alpha_max. Throws
// DomainError when v_i + V_z <= 0 and InfeasibleTiltError for a non-positive
// bound.
double stall_rate_limit(double v_i, double V_z, double V_x, TiltDirection direction, const WingParams& wp);

template <typename Scalar> Scalar alternating_sum(const std::array<Scalar, 4>& v) {
  return v[0] - v[1] + v[2] - v[3];
}

template <typename Scalar> Scalar alternating_sum(const Vec4<Scalar>& v) { return v(0) - v(1) + v(2) - v(3); }

// Rotor spin gyroscopics from tilting, expressed in the body frame.
template <typename Scalar>
Vec3<Scalar> gyroscopic_moment(Scalar beta, Scalar beta_dot, const Vec4<Scalar>& Omega, Scalar J_r) {
  using std::cos;
  using std::sin;
  const Scalar g = J_r * alternating_sum(Omega) * beta_dot;
  // R_beta applied to the tilt-frame x axis
  return Vec3<Scalar>(cos(beta), Scalar(0), -sin(beta)) * g;
}

template <typename Scalar>
Vec3<Scalar> thrust_vector_moment(const Vec4<Scalar>& T, Scalar beta, const WingParams& wp) {
  using std::cos;
  using std::sin;
  const Scalar roll = (T(1) - T(0)) * Scalar(wp.l1) + (T(2) - T(3)) * Scalar(wp.l2);
  const Scalar pitch = (T(0) + T(1)) * Scalar(wp.l4) - (T(2) + T(3)) * Scalar(wp.l3);
  return Vec3<Scalar>(roll * cos(beta), pitch * cos(beta), -roll * sin(beta));
}

template <typename Scalar> Vec3<Scalar> reactive_torque(const Vec4<Scalar>& Q, Scalar beta) {
  using std::cos;
  using std::sin;
  const Scalar s = alternating_sum(Q);
  return Vec3<Scalar>(sin(beta) * s, Scalar(0), cos(beta) * s);
}

// Aileron-like moment of the fixed-wing lift pair.
template <typename Scalar> Vec3<Scalar> fixed_wing_moment(Scalar L5, Scalar L6, Scalar alpha, const WingParams& wp) {
  using std::cos;
  using std::sin;
  const Scalar d = (L6 - L5) * Scalar(wp.l5);
  return Vec3<Scalar>(d * cos(alpha), Scalar(0), -d * sin(alpha));
}

// Moment of the four free-wing lifts L(0..3).
template <typename Scalar> Vec3<Scalar> free_wing_moment(const Vec4<Scalar>& L, Scalar beta, const WingParams& wp) {
  using std::cos;
  using std::sin;
  const Scalar lateral = (L(1) - L(0)) * Scalar(wp.l1) + (L(2) - L(3)) * Scalar(wp.l2);
  const Scalar pitch = (L(0) + L(1)) * Scalar(wp.l4) - (L(2) + L(3)) * Scalar(wp.l3);
  return Vec3<Scalar>(lateral * sin(beta), pitch * sin(beta), lateral * cos(beta));
}

template <typename Scalar> Vec3<Scalar> tail_moment(Scalar f_rl, const WingParams& wp) {
  return Vec3<Scalar>(Scalar(0), Scalar(0), f_rl * Scalar(wp.l3));
}

// Reaction of the tilt actuator on the fuselage, about body pitch.
template <typename Scalar> Vec3<Scalar> tilt_reaction_moment(Scalar J_4, Scalar beta_ddot) {
  return Vec3<Scalar>(Scalar(0), J_4 * beta_ddot, Scalar(0));
}

}  // namespace tiltrotor
