// Rotor aerodynamics: momentum-theory inflow and the blade-element closed
// forms linking collective pitch, thrust and drag torque.
//
// Coefficients use the factor-2 convention C_T = 2T / (rho Omega^2 R^2 A) and
// C_Q = 2Q / (rho Omega^2 R^3 A), A = pi R^2. Do not mix with the more common
// 1/2 rho A (Omega R)^2 normalisation.
#pragma once

#include "tiltrotor/types.hpp"

#include <cmath>

namespace tiltrotor {

struct RotorParams {
  double R = 2.0966;                 // radius, m
  int p = 4;                         // blade count
  double b_bar1 = 0.1613 / 2.0966;   // chord / radius
  double a_inf = 0.012;              // blade lift-curve slope, 1/rad
  double C_d0 = 0.008;               // blade profile drag coefficient
  double delta_phi_star = -7.0 * kPi / 180.0;  // linear twist, rad
  double Omega = 200.0 / 2.0966;     // rad/s
  double rho = 1.225;                // kg/m^3
  double J_r = 8.5;                  // spin inertia, kg m^2
  double kappa = 1.15;               // induced power factor

  double solidity() const { return p * b_bar1 / kPi; }
  double tip_speed() const { return Omega * R; }
  double disk_area() const { return kPi * R * R; }
  // T = C_T * thrust_scale(), Q = C_Q * torque_scale()
  double thrust_scale() const { return 0.5 * rho * Omega * Omega * R * R * disk_area(); }
  double torque_scale() const { return 0.5 * rho * Omega * Omega * R * R * R * disk_area(); }
};

// Non-dimensional inflow seen by one rotor, all velocities over Omega R.
template <typename Scalar> struct InflowState {
  Scalar mu_x{0};      // in-plane, along the tilt-frame x axis
  Scalar mu_y{0};      // sideslip
  Scalar mu_z{0};      // along the shaft, positive climbing
  Scalar rho_beta{0};  // tilt rate over Omega
  Scalar v_bar{0};     // induced velocity over Omega R
};

template <typename Scalar> struct ThrustMap {
  Scalar C_T;
  Scalar T;   // N
  Scalar h1;  // N/rad, T = h1 phi_7 + h2
  Scalar h2;  // N
};

template <typename Scalar> struct TorqueMap {
  Scalar C_Q;
  Scalar Q;   // N m
  Scalar d1;  // N m/rad, Q = d1 phi_7 + d2
  Scalar d2;  // N m
};

// Q = slope * T + offset at a frozen inflow.
template <typename Scalar> struct ThrustTorqueMap {
  Scalar slope;   // m
  Scalar offset;  // N m
};

namespace detail {

template <typename Scalar> Scalar blade_lift_factor(const RotorParams& rp) {
  return Scalar(rp.p * rp.b_bar1 * rp.a_inf);
}

}  // namespace detail

template <typename Scalar>
Scalar thrust_coefficient(Scalar T, const RotorParams& rp) {
  return T / Scalar(rp.thrust_scale());
}

// Blade-element thrust at collective phi_7 (pitch at 0.7 R).
template <typename Scalar>
ThrustMap<Scalar> thrust_from_pitch(Scalar phi_7, const InflowState<Scalar>& in, const RotorParams& rp) {
  const Scalar k = detail::blade_lift_factor<Scalar>(rp);
  const Scalar dphi = Scalar(rp.delta_phi_star);
  const Scalar mu2 = in.mu_x * in.mu_x + in.mu_y * in.mu_y;
  const Scalar slope_term = Scalar(1) + Scalar(1.5) * mu2;
  const Scalar offset_term = (Scalar(0.05) - Scalar(0.3) * mu2) * dphi - Scalar(1.5) * (in.v_bar + in.mu_z) -
                             Scalar(0.75) * in.mu_y * in.rho_beta;

  ThrustMap<Scalar> out;
  out.C_T = k / (Scalar(3) * Scalar(kPi)) * (phi_7 * slope_term + offset_term);
  out.T = out.C_T * Scalar(rp.thrust_scale());
  const Scalar dim = Scalar(rp.rho * rp.Omega * rp.Omega * std::pow(rp.R, 4)) * k / Scalar(6);
  out.h1 = dim * slope_term;
  out.h2 = dim * offset_term;
  return out;
}

// Inverse of thrust_from_pitch.
template <typename Scalar>
Scalar pitch_from_thrust(Scalar C_T, const InflowState<Scalar>& in, const RotorParams& rp) {
  const Scalar k = detail::blade_lift_factor<Scalar>(rp);
  const Scalar mu2 = in.mu_x * in.mu_x + in.mu_y * in.mu_y;
  const Scalar num = Scalar(3) * Scalar(kPi) * C_T / k + (Scalar(0.3) * mu2 - Scalar(0.05)) * Scalar(rp.delta_phi_star) +
                     Scalar(1.5) * (in.v_bar + in.mu_z) + Scalar(0.75) * in.mu_y * in.rho_beta;
  return num / (Scalar(1) + Scalar(1.5) * mu2);
}

template <typename Scalar>
TorqueMap<Scalar> torque_from_pitch(Scalar phi_7, const InflowState<Scalar>& in, const RotorParams& rp) {
  const Scalar k = detail::blade_lift_factor<Scalar>(rp);
  const Scalar pi = Scalar(kPi);
  const Scalar a = Scalar(rp.a_inf);
  const Scalar flow = in.v_bar + in.mu_z + Scalar(0.5) * in.mu_y * in.rho_beta;
  const Scalar mu2 = in.mu_x * in.mu_x + in.mu_y * in.mu_y;

  const Scalar d1_bar = k / (Scalar(3) * pi) * flow;
  const Scalar d2_bar =
      k / pi *
      (Scalar(rp.C_d0) / (Scalar(4) * a) * (Scalar(1) + mu2) + flow * Scalar(rp.delta_phi_star) / Scalar(60) -
       Scalar(0.5) * (in.v_bar * in.v_bar + in.mu_z * in.mu_z + Scalar(2) * in.v_bar * in.mu_z +
                      Scalar(0.25) * in.rho_beta * in.rho_beta));

  const Scalar scale = Scalar(rp.torque_scale());
  TorqueMap<Scalar> out;
  out.C_Q = d1_bar * phi_7 + d2_bar;
  out.Q = out.C_Q * scale;
  out.d1 = d1_bar * scale;
  out.d2 = d2_bar * scale;
  return out;
}

// Q as an affine function of T at fixed inflow; throws SingularMapError when
// the thrust map has no pitch authority.
ThrustTorqueMap<double> thrust_torque_map(const InflowState<double>& in, const RotorParams& rp);

double torque_from_thrust(double T, const InflowState<double>& in, const RotorParams& rp);

struct PowerCoefficients {
  double C_Pi;  // induced
  double C_P0;  // profile
  double C_P;
};

PowerCoefficients power_coefficients(double C_T, double sigma, double C_d0, double kappa);

// ---------------------------------------------------------------------------
// Induced velocity

enum class InflowRegime { Momentum, VortexRing };

struct InducedVelocity {
  double v_i = 0.0;     // m/s
  double v_h = 0.0;     // hover value for the same thrust, m/s
  InflowRegime regime = InflowRegime::Momentum;
  double residual = 0.0;  // normalised quartic residual (momentum branch)
  int iterations = 0;
  bool bisection = false;
};

double hover_induced_velocity(double T, double rho, double R);

// True inside the empirical vortex-ring region, velocities in hover units.
bool in_vortex_ring(double V_xh, double V_zh);

// Johnson's fit for the normalised induced velocity inside the vortex ring.
double vortex_ring_inflow(double V_xh, double V_zh);

// Positive root of x^4 + 2 Vz x^3 + (Vx^2 + Vy^2 + Vz^2) x^2 - 1 in hover units.
InducedVelocity normalized_momentum_inflow(double V_xh, double V_yh, double V_zh);

// Rotor-frame airspeed components (V_z positive when climbing along the shaft).
InducedVelocity induced_velocity(double T, double V_x, double V_y, double V_z, double rho, double R);

// Jump between the Johnson branch and the momentum root at the ring boundary
// for a given edgewise speed; reported, not smoothed.
double vortex_ring_boundary_jump(double V_xh);

}  // namespace tiltrotor
