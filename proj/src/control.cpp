#include "tiltrotor/control.hpp"

#include "tiltrotor/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tiltrotor {

double default_thrust_limit(const AircraftParams& params) {
  return 1.2 * rated_thrust(params.m, params.design.rho_mT, params.g);
}

// ---------------------------------------------------------------------------
// Tilt profile

TiltReference TiltProfile::eval(double t) const {
  const double M = M_t();
  const double tau = t - t_0;
  TiltReference r;  // excursion from beta_start, forward sense
  if (tau <= 0.0) {
  } else if (tau < t_1) {
    r.beta = 0.5 * M * tau * tau;
    r.beta_dot = M * tau;
    r.beta_ddot = M;
  } else if (tau < 2.0 * t_1) {
    const double u = tau - t_1;
    r.beta = 0.5 * M * t_1 * t_1 + M * t_1 * u - 0.5 * M * u * u;
    r.beta_dot = M * t_1 - M * u;
    r.beta_ddot = -M;
  } else {
    r.beta = M * t_1 * t_1;
  }
  if (direction == TiltDirection::Backward) {
    r.beta = kPi / 2.0 - r.beta;
    r.beta_dot = -r.beta_dot;
    r.beta_ddot = -r.beta_ddot;
  }
  return r;
}

double TiltProfile::excursion_integral(double t) const {
  const double M = M_t();
  const double tau = t - t_0;
  double g = 0.0;
  if (tau <= 0.0) {
  } else if (tau < t_1) {
    g = M * tau * tau * tau / 6.0;
  } else if (tau < 2.0 * t_1) {
    const double u = tau - t_1;
    g = M * t_1 * t_1 * t_1 / 6.0 + 0.5 * M * t_1 * t_1 * u + 0.5 * M * t_1 * u * u - M * u * u * u / 6.0;
  } else {
    g = M * t_1 * t_1 * t_1 + M * t_1 * t_1 * (tau - 2.0 * t_1);
  }
  return direction == TiltDirection::Forward ? g : -g;
}

TiltFeasibility tilt_feasibility(const TiltProfile& profile, double v_i, double V_x, double V_z, const WingParams& wp) {
  TiltFeasibility f;
  f.peak_rate = profile.peak_rate();
  const double axial = v_i + V_z;
  const double room = axial * std::tan(wp.alpha_max);
  f.bound = (profile.direction == TiltDirection::Forward ? room + V_x : room - V_x) / wp.tilt_airflow_arm();
  f.margin = f.bound - f.peak_rate;
  f.t_1_min = f.bound > 0.0 ? 0.5 * kPi / f.bound : std::numeric_limits<double>::infinity();
  f.pass = axial > 0.0 && f.bound > 0.0 && f.margin > 0.0;
  return f;
}

// ---------------------------------------------------------------------------
// Reference

Reference TransitionReference::at(double t) const {
  Reference r;
  r.tilt = profile.eval(t);
  const double span = profile.beta_end() - profile.beta_start();
  const double gain = (V_end - V_start) / span;  // speed per radian of tilt
  const double excursion = r.tilt.beta - profile.beta_start();

  r.x = x0;
  r.x.x() += V_start * t + gain * profile.excursion_integral(t);
  r.v = Vec3d(V_start + gain * excursion, 0.0, 0.0);
  r.a = Vec3d(gain * r.tilt.beta_dot, 0.0, 0.0);
  r.att = attitude;
  if (t >= step.time) {
    r.x += step.position;
    r.att += step.attitude;
    r.tilt.beta += step.beta;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Control laws

Vec3d attitude_control(const Vec3d& x_a, const Vec3d& rate_estimate, const Vec3d& disturbance_estimate,
                       const Reference& ref, const Vec3d& u_beta, const Vec3d& Gamma_a, const Vec3d& J,
                       const ControllerGains& g) {
  const Vec3d e = x_a - ref.att;
  const Vec3d e_hat = rate_estimate - ref.att_rate;
  return -J.cwiseProduct(g.k1 * e + g.k2 * e_hat - ref.att_acc) - u_beta - Gamma_a - disturbance_estimate;
}

Vec3d position_control(const Vec3d& x_p, const Vec3d& velocity_estimate, const Vec3d& disturbance_estimate,
                       const Reference& ref, const Vec3d& Gamma_p, double m, const ControllerGains& g) {
  const Vec3d e = x_p - ref.x;
  const Vec3d e_hat = velocity_estimate - ref.v;
  return -m * (g.k3 * e + g.k4 * e_hat) - Gamma_p - disturbance_estimate + m * ref.a;
}

double tilt_control(double beta, double beta_dot, const TiltReference& ref, double J_4, const ControllerGains& g,
                    const ActuatorLimits& limits) {
  const double M = J_4 * (g.k5 * (beta - ref.beta) + g.k6 * (beta_dot - ref.beta_dot) - ref.beta_ddot);
  const double cap = J_4 * limits.tilt_accel_max;
  return std::clamp(M, -cap, cap);
}

// ---------------------------------------------------------------------------
// Allocation

Mat3d low_tilt_matrix(double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  Mat3d M;
  M << c, 0, s,
      0, c, 0,
      -s, 0, c;
  return M;
}

Mat3d high_tilt_matrix(double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  Mat3d M;
  M << s, 0, -c,
      0, s, 0,
      c, 0, s;
  return M;
}

Mat3d low_tilt_inverse(double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  Mat3d M;
  M << c, 0, -s,
      0, 1.0 / c, 0,
      s, 0, c;
  return M;
}

Mat3d high_tilt_inverse(double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  Mat3d M;
  M << s, 0, c,
      0, 1.0 / s, 0,
      -c, 0, s;
  return M;
}

TiltRegime select_regime(double beta, TiltRegime previous, double beta_w, double band) {
  if (previous == TiltRegime::LowTilt) return beta > beta_w + band ? TiltRegime::HighTilt : TiltRegime::LowTilt;
  return beta < beta_w - band ? TiltRegime::LowTilt : TiltRegime::HighTilt;
}

namespace {
constexpr double kMinAllocationDeterminant = 0.5;
}

Allocation allocate(const Vec3d& u_a, double beta, TiltRegime regime) {
  Allocation a;
  a.regime = regime;
  if (regime == TiltRegime::LowTilt) {
    if (std::cos(beta) < kMinAllocationDeterminant)
      throw AllocationError("low-tilt allocation used at beta = " + std::to_string(beta));
    const Vec3d u_ac = low_tilt_inverse(beta) * u_a;
    a.u11 = u_ac(0);
    a.u21 = u_ac(1);
    a.u31 = u_ac(2);
  } else {
    if (std::sin(beta) < kMinAllocationDeterminant)
      throw AllocationError("high-tilt allocation used at beta = " + std::to_string(beta));
    const Vec3d u_as = high_tilt_inverse(beta) * u_a;
    a.u31 = u_as(0);
    a.u22 = u_as(1);
    a.u11 = -u_as(2);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Mixer

Mat4d mixer_matrix(const std::array<ThrustTorqueMap<double>, 4>& maps, const WingParams& wp) {
  Mat4d A;
  A << 1, 1, 1, 1,
      -wp.l1, wp.l1, wp.l2, -wp.l2,
      wp.l4, wp.l4, -wp.l3, -wp.l3,
      maps[0].slope, -maps[1].slope, maps[2].slope, -maps[3].slope;
  return A;
}

namespace {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty() const { return !(lo <= hi); }
};

// Totals tau for which base + tau w stays within [T_min, T_max] elementwise.
Interval feasible_totals(const Vec4d& base, const Vec4d& w, const ActuatorLimits& limits) {
  Interval iv;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(w(i)) < 1e-12) {
      if (base(i) < limits.T_min || base(i) > limits.T_max) iv.lo = 1.0, iv.hi = 0.0;
      continue;
    }
    double a = (limits.T_min - base(i)) / w(i);
    double b = (limits.T_max - base(i)) / w(i);
    if (a > b) std::swap(a, b);
    iv.lo = std::max(iv.lo, a);
    iv.hi = std::min(iv.hi, b);
  }
  return iv;
}

}  // namespace

MixerResult mix(const MixerTargets& targets, const std::array<ThrustTorqueMap<double>, 4>& maps,
                const WingParams& wp, const ActuatorLimits& limits) {
  const Mat4d A = mixer_matrix(maps, wp);
  const Eigen::FullPivLU<Mat4d> lu(A);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-9)
    throw AllocationError("mixer matrix is singular");

  const double offset = maps[0].offset - maps[1].offset + maps[2].offset - maps[3].offset;
  const Vec4d w = lu.solve(Vec4d(1, 0, 0, 0));
  const Vec4d fixed = lu.solve(Vec4d(0, 0, 0, -offset));
  const Vec4d moments = lu.solve(Vec4d(0, targets.roll, targets.pitch, targets.yaw));

  MixerResult out;
  auto finish = [&](double scale, const Interval& iv) {
    out.moment_scale = scale;
    out.T_total = std::clamp(targets.T_total, iv.lo, iv.hi);
    // The clamp only removes rounding at an active bound.
    out.T = (fixed + scale * moments + out.T_total * w).cwiseMax(limits.T_min).cwiseMin(limits.T_max);
    out.saturated = scale < 1.0 || out.T_total != targets.T_total;
    return out;
  };

  const Interval full = feasible_totals(fixed + moments, w, limits);
  if (!full.empty()) return finish(1.0, full);

  const Interval none = feasible_totals(fixed, w, limits);
  if (none.empty()) {
    out.T_total = targets.T_total;
    out.T = (fixed + out.T_total * w).cwiseMax(limits.T_min).cwiseMin(limits.T_max);
    out.moment_scale = 0.0;
    out.saturated = true;
    return out;
  }
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (feasible_totals(fixed + mid * moments, w, limits).empty() ? hi : lo) = mid;
  }
  return finish(lo, feasible_totals(fixed + lo * moments, w, limits));
}

double delta_from_pitch_demand(double u22, double V_rt, const WingParams& wp, double rho,
                               const ActuatorLimits& limits) {
  if (V_rt < limits.V_rt_min)
    throw EffectivenessError("flap airspeed " + std::to_string(V_rt) + " m/s below threshold");
  const double per_rad = 2.0 * 0.5 * rho * wp.S_fi * V_rt * V_rt * wp.C_r * wp.l3;
  return std::clamp(u22 / per_rad, -limits.delta_max, limits.delta_max);
}

// ---------------------------------------------------------------------------
// Transition controller

ControlOutput control_step(const ControllerState& state, double t, const RigidState& measured,
                           const ObserverBank& bank, const TransitionReference& reference,
                           const AircraftParams& params, const ControllerConfig& config) {
  const Reference ref = reference.at(t);
  ControlOutput out;
  out.next = state;
  out.next.regime = select_regime(measured.beta, state.regime, config.beta_w, config.hysteresis);

  ControlInput& input = out.input;
  input.T = state.T;
  input.delta = out.next.regime == TiltRegime::LowTilt ? 0.0 : state.delta;
  input.M_beta = tilt_control(measured.beta, measured.beta_dot, ref.tilt, params.J_4, config.gains, config.limits);
  const Vec3d u_beta(0.0, input.M_beta, 0.0);

  for (int pass = 0; pass < std::max(config.passes, 1); ++pass) {
    const PlantEvaluation plant = evaluate_plant(measured, input, params);

    out.u_p = position_control(measured.x_p, bank.velocity_estimate(), bank.force_disturbance(params.m), ref,
                               plant.forces.Gamma_p, params.m, config.gains);
    const Vec3d& n = plant.forces.direction;
    out.T_total_demand = out.u_p.dot(n);
    out.unactuated = out.u_p - out.T_total_demand * n;

    out.u_a = attitude_control(measured.x_a, bank.rate_estimate(), bank.moment_disturbance(params.J), ref, u_beta,
                               plant.moments.Gamma_a, params.J, config.gains);
    const Allocation alloc = allocate(out.u_a, measured.beta, out.next.regime);

    std::array<ThrustTorqueMap<double>, 4> maps;
    for (int i = 0; i < 4; ++i) maps[i] = plant.loads.rotors[i].torque_map;
    const MixerTargets targets{std::max(out.T_total_demand, 0.0), alloc.u11, alloc.u21, alloc.u31};
    const MixerResult mixed = mix(targets, maps, params.wing, config.limits);
    input.T = mixed.T;
    out.saturated = mixed.saturated || out.T_total_demand < 0.0;

    out.delta_held = false;
    if (out.next.regime == TiltRegime::LowTilt) {
      input.delta = 0.0;
    } else {
      const auto& w3 = plant.loads.free_wings[2];
      const auto& w4 = plant.loads.free_wings[3];
      const double V_rt = std::sqrt(0.5 * (w3.V_rt * w3.V_rt + w4.V_rt * w4.V_rt));
      try {
        input.delta = delta_from_pitch_demand(alloc.u22, V_rt, params.wing, params.rho, config.limits);
      } catch (const EffectivenessError&) {
        input.delta = state.delta;
        out.delta_held = true;
      }
    }
  }

  out.next.T = input.T;
  out.next.delta = input.delta;
  return out;
}

}  // namespace tiltrotor
