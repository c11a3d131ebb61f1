#include "tiltrotor/dynamics.hpp"

#include "tiltrotor/errors.hpp"
#include "tiltrotor/frames.hpp"

#include <cmath>
#include <string>
#include <tuple>

namespace tiltrotor {

RigidState::Vector RigidState::pack() const {
  Vector v;
  v << x_p, v_p, x_a, w_a, beta, beta_dot;
  return v;
}

RigidState RigidState::unpack(const Vector& v) {
  RigidState s;
  s.x_p = v.segment<3>(0);
  s.v_p = v.segment<3>(3);
  s.x_a = v.segment<3>(6);
  s.w_a = v.segment<3>(9);
  s.beta = v(12);
  s.beta_dot = v(13);
  return s;
}

Airflow airflow(const RigidState& state, const AircraftParams& params) {
  Airflow air;
  air.V_b = rotation_bg(state.x_a).transpose() * (state.v_p - params.wind);
  air.V_beta = rotation_beta(state.beta).transpose() * air.V_b;
  air.speed = air.V_b.norm();
  if (air.speed >= kMinAlphaAirspeed) {
    air.alpha = std::atan2(-air.V_b.z(), air.V_b.x());
    air.sideslip = std::asin(air.V_b.y() / air.speed);
  }
  return air;
}

RotorOutput rotor_output(double T, const Airflow& air, double beta_dot, const RotorParams& rp) {
  RotorOutput out;
  out.T = T;
  const InducedVelocity iv = induced_velocity(T, air.V_beta.x(), air.V_beta.y(), air.V_beta.z(), rp.rho, rp.R);
  out.v_i = iv.v_i;
  out.regime = iv.regime;

  const double tip = rp.tip_speed();
  out.inflow.mu_x = air.V_beta.x() / tip;
  out.inflow.mu_y = air.V_beta.y() / tip;
  out.inflow.mu_z = air.V_beta.z() / tip;
  out.inflow.rho_beta = beta_dot / rp.Omega;
  out.inflow.v_bar = iv.v_i / tip;

  out.C_T = thrust_coefficient(T, rp);
  out.phi_7 = pitch_from_thrust(out.C_T, out.inflow, rp);
  const TorqueMap<double> q = torque_from_pitch(out.phi_7, out.inflow, rp);
  out.Q = q.Q;
  out.C_Q = q.C_Q;
  out.torque_map = thrust_torque_map(out.inflow, rp);
  return out;
}

AeroLoads evaluate_aero(const RigidState& state, const ControlInput& input, const AircraftParams& params) {
  AeroLoads loads;
  loads.air = airflow(state, params);
  const Airflow& air = loads.air;
  for (int i = 0; i < 4; ++i) {
    loads.rotors[i] = rotor_output(input.T(i), air, state.beta_dot, params.rotor);
    const double delta = i >= 2 ? input.delta : 0.0;
    loads.free_wings[i] = free_wing_forces(loads.rotors[i].v_i, air.V_beta.x(), air.V_beta.z(), state.beta_dot, delta,
                                           params.wing, params.rho);
  }
  loads.fixed = fixed_wing_forces(air.speed, air.alpha, input.delta_56(0), input.delta_56(1), params.wing, params.rho);
  loads.tail = tail_forces(air.speed, air.sideslip, params.tail, params.rho);
  return loads;
}

ForceSet assemble_forces(const RigidState& state, const ControlInput& input, const AeroLoads& loads,
                         const AircraftParams& params) {
  const double sb = std::sin(state.beta), cb = std::cos(state.beta);
  const double sa = std::sin(loads.air.alpha), ca = std::cos(loads.air.alpha);

  double free_lift = 0.0, free_drag = 0.0;
  for (const auto& w : loads.free_wings) {
    free_lift += w.L;
    free_drag += w.D;
  }
  const double fixed_lift = loads.fixed.L5 + loads.fixed.L6;
  const double fixed_drag = loads.fixed.D5 + loads.fixed.D6;

  // Body-frame aerodynamic force: fixed-wing lift normal and drag opposite to
  // the relative wind, free-wing lift against the tilt-frame x axis and drag
  // against the shaft, tail side force and drag.
  const Vec3d body = fixed_lift * Vec3d(sa, 0.0, ca) + fixed_drag * Vec3d(-ca, 0.0, sa) +
                     free_lift * Vec3d(-cb, 0.0, sb) + free_drag * Vec3d(-sb, 0.0, -cb) +
                     loads.tail.f_rl * Vec3d(0.0, -1.0, 0.0) + loads.tail.f_rd * Vec3d(-1.0, 0.0, 0.0);

  const Mat3d R = rotation_bg(state.x_a);
  ForceSet out;
  out.direction = R * Vec3d(sb, 0.0, cb);
  out.u_p = out.direction * input.T.sum();
  out.Gamma_p = R * body;
  out.Gamma_p.z() -= params.m * params.g;
  return out;
}

MomentSet assemble_moments(const RigidState& state, const ControlInput& input, const AeroLoads& loads,
                           const AircraftParams& params) {
  const WingParams& w = params.wing;
  const Vec4d& T = input.T;
  const double sb = std::sin(state.beta), cb = std::cos(state.beta);
  const double sa = std::sin(loads.air.alpha), ca = std::cos(loads.air.alpha);

  Vec4d Q;
  for (int i = 0; i < 4; ++i) Q(i) = loads.rotors[i].Q;
  const auto& fw = loads.free_wings;

  const double u11 = (T(1) - T(0)) * w.l1 + (T(2) - T(3)) * w.l2;
  const double u21 = (T(0) + T(1)) * w.l4 - (T(2) + T(3)) * w.l3;
  const double u31 = alternating_sum(Q);
  const double u22 = (fw[2].L_flap + fw[3].L_flap) * w.l3;

  MomentSet out;
  out.u_ac = Vec3d(u11, u21, u31);
  out.u_as = Vec3d(u31, u22, -u11);
  out.u_a = cb * out.u_ac + sb * out.u_as;
  out.u_beta = Vec3d(0.0, input.M_beta, 0.0);

  const double L5 = loads.fixed.L5, L6 = loads.fixed.L6;
  const double lateral = (fw[1].L - fw[0].L) * w.l1 + (fw[2].L - fw[3].L) * w.l2;
  out.Gamma_a.x() = (L6 - L5) * w.l5 * ca + lateral * sb;
  out.Gamma_a.y() = (fw[0].L + fw[1].L) * w.l4 * sb - (fw[2].L_alpha + fw[3].L_alpha) * w.l3 * sb;
  out.Gamma_a.z() = (L5 - L6) * w.l5 * sa + lateral * cb + loads.tail.f_rl * w.l3;
  return out;
}

PlantEvaluation evaluate_plant(const RigidState& state, const ControlInput& input, const AircraftParams& params) {
  PlantEvaluation out;
  out.loads = evaluate_aero(state, input, params);
  out.forces = assemble_forces(state, input, out.loads, params);
  out.moments = assemble_moments(state, input, out.loads, params);
  return out;
}

namespace {

// a e^{-k t} sin(3t) + b e^{-l t} cos(t), the shape shared by every channel.
struct DampedPair {
  double a, k, b, l;
  double value(double t) const { return a * std::exp(-k * t) * std::sin(3.0 * t) + b * std::exp(-l * t) * std::cos(t); }
  double rate(double t) const {
    return a * std::exp(-k * t) * (3.0 * std::cos(3.0 * t) - k * std::sin(3.0 * t)) -
           b * std::exp(-l * t) * (std::sin(t) + l * std::cos(t));
  }
};

constexpr DampedPair kForceChannels[3] = {{2.0, 2.0, 1.0, 1.0}, {1.0, 1.0, 2.0, 0.5}, {0.5, 1.0, 3.0, 2.0}};
constexpr DampedPair kMomentChannels[3] = {{0.5, 2.0, 0.8, 1.0}, {0.5, 1.0, 0.5, 0.5}, {2.0, 2.0, 0.5, 1.0}};
constexpr double kForceAmplitude = 50.0;
constexpr double kMomentAmplitude = 20.0;

}  // namespace

std::pair<Vec3d, Vec3d> uncertainty_signals(double t) {
  Vec3d p, a;
  for (int i = 0; i < 3; ++i) {
    p(i) = kForceAmplitude * kForceChannels[i].value(t);
    a(i) = kMomentAmplitude * kMomentChannels[i].value(t);
  }
  return {p, a};
}

std::pair<Vec3d, Vec3d> uncertainty_signal_rates(double t) {
  Vec3d p, a;
  for (int i = 0; i < 3; ++i) {
    p(i) = kForceAmplitude * kForceChannels[i].rate(t);
    a(i) = kMomentAmplitude * kMomentChannels[i].rate(t);
  }
  return {p, a};
}

std::pair<Vec3d, Vec3d> DisturbanceModel::evaluate(double t, const RigidState& state,
                                                   const AircraftParams& params) const {
  Vec3d Delta_p = Vec3d::Zero();
  Vec3d Delta_a = Vec3d::Zero();
  if (enabled) {
    const auto [p, a] = uncertainty_signals(t);
    Delta_p = scale * p;
    Delta_a = scale * a;
  }
  if (gyroscopic) {
    const Vec4d Omega = Vec4d::Constant(params.rotor.Omega);
    Delta_a += gyroscopic_moment(state.beta, state.beta_dot, Omega, params.rotor.J_r);
  }
  return {Delta_p, Delta_a};
}

Derivative state_derivative(const RigidState& state, const ControlInput& input, double t,
                            const AircraftParams& params, const DisturbanceModel& disturbance) {
  if (std::abs(state.x_a.y()) >= kPi / 2.0 - kPitchGuard)
    throw IntegrationError("pitch angle reached the Euler singularity guard at t = " + std::to_string(t));

  Derivative d;
  d.plant = evaluate_plant(state, input, params);
  std::tie(d.Delta_p, d.Delta_a) = disturbance.evaluate(t, state, params);

  const ForceSet& f = d.plant.forces;
  const MomentSet& mo = d.plant.moments;
  const Vec3d accel = (f.u_p + f.Gamma_p + d.Delta_p) / params.m;
  const Vec3d ang_accel = (mo.u_a + mo.u_beta + mo.Gamma_a + d.Delta_a).cwiseQuotient(params.J);

  d.xdot << state.v_p, accel, state.w_a, ang_accel, state.beta_dot, -input.M_beta / params.J_4;
  return d;
}

}  // namespace tiltrotor
