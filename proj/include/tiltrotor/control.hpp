// Attitude, position and tilt control laws, the beta-switched allocation and
// the thrust mixer.
#pragma once

#include "tiltrotor/airframe_aero.hpp"
#include "tiltrotor/dynamics.hpp"
#include "tiltrotor/observers.hpp"
#include "tiltrotor/params.hpp"
#include "tiltrotor/types.hpp"

#include <array>
#include <limits>

namespace tiltrotor {

struct ControllerGains {
  double k1 = 5.0;   // attitude error
  double k2 = 5.0;   // attitude rate error
  double k3 = 2.5;   // position error
  double k4 = 4.5;   // velocity error
  double k5 = 2.63;  // tilt error
  double k6 = 4.55;  // tilt rate error
};

struct ActuatorLimits {
  double T_min = 0.0;
  double T_max = 13774.0;               // per rotor, N
  double delta_max = deg2rad(30.0);     // rear flap, rad
  double tilt_accel_max = 5.0;          // |M_beta| <= J_4 * this, rad/s^2
  double V_rt_min = 5.0;                // flap effectiveness threshold, m/s
};

// 1.2 rho_mT m g / 4.
double default_thrust_limit(const AircraftParams& params);

// ---------------------------------------------------------------------------
// Tilt profile: bang-bang tilt acceleration of magnitude M_t = pi / (2 t_1^2)
// starting at t_0, from 0 to pi/2 (forward) or pi/2 to 0 (backward). Phases
// are closed on the left so a sample taken at a phase boundary already holds
// the new acceleration.

struct TiltReference {
  double beta = 0.0;
  double beta_dot = 0.0;
  double beta_ddot = 0.0;
};

struct TiltProfile {
  TiltDirection direction = TiltDirection::Forward;
  double t_1 = 5.0;
  double t_0 = 0.0;

  double M_t() const { return kPi / (2.0 * t_1 * t_1); }
  double beta_start() const { return direction == TiltDirection::Forward ? 0.0 : kPi / 2.0; }
  double beta_end() const { return kPi / 2.0 - beta_start(); }
  double peak_rate() const { return M_t() * t_1; }

  TiltReference eval(double t) const;
  // Integral of (beta_d - beta_start) from t_0 to t.
  double excursion_integral(double t) const;
};

struct TiltFeasibility {
  double peak_rate = 0.0;  // M_t t_1
  double bound = 0.0;      // stall rate limit at the t_1 condition
  double margin = 0.0;     // bound - peak_rate
  double t_1_min = 0.0;    // smallest admissible t_1 at that condition
  bool pass = false;
};

// Peak profile rate against the free-wing stall bound for the flight
// condition (v_i, tilt-frame V_x, V_z) met at t_0 + t_1.
TiltFeasibility tilt_feasibility(const TiltProfile& profile, double v_i, double V_x, double V_z, const WingParams& wp);

// ---------------------------------------------------------------------------
// Reference trajectory for a transition: straight flight along X at constant
// altitude, speed ramped in step with the tilt profile.

struct Reference {
  Vec3d x = Vec3d::Zero();
  Vec3d v = Vec3d::Zero();
  Vec3d a = Vec3d::Zero();
  Vec3d att = Vec3d::Zero();
  Vec3d att_rate = Vec3d::Zero();
  Vec3d att_acc = Vec3d::Zero();
  TiltReference tilt;
};

// Constant offsets added to the reference from `time` on; used to excite
// clean error transients for the closed-loop checks.
struct ReferenceStep {
  double time = std::numeric_limits<double>::infinity();
  Vec3d position = Vec3d::Zero();
  Vec3d attitude = Vec3d::Zero();
  double beta = 0.0;
};

struct TransitionReference {
  TiltProfile profile;
  Vec3d x0 = Vec3d(0.0, 0.0, 100.0);  // X_d(0), Y_d(0), Z_d
  double V_start = 0.0;
  double V_end = 100.0;
  Vec3d attitude = Vec3d::Zero();
  ReferenceStep step;

  Reference at(double t) const;
};

// ---------------------------------------------------------------------------
// Control laws

// u_a = -J (k1 e_a + k2 e_a_hat - a_dd) - u_beta - Gamma_a - Delta_a_hat
Vec3d attitude_control(const Vec3d& x_a, const Vec3d& rate_estimate, const Vec3d& disturbance_estimate,
                       const Reference& ref, const Vec3d& u_beta, const Vec3d& Gamma_a, const Vec3d& J,
                       const ControllerGains& gains);

// u_p = -m (k3 e_p + k4 e_p_hat) - Gamma_p - Delta_p_hat + m x_dd
Vec3d position_control(const Vec3d& x_p, const Vec3d& velocity_estimate, const Vec3d& disturbance_estimate,
                       const Reference& ref, const Vec3d& Gamma_p, double m, const ControllerGains& gains);

// M_beta = J_4 (k5 e_beta + k6 e_beta_dot - beta_dd), clamped to the limits.
double tilt_control(double beta, double beta_dot, const TiltReference& ref, double J_4, const ControllerGains& gains,
                    const ActuatorLimits& limits);

// ---------------------------------------------------------------------------
// Allocation

enum class TiltRegime { LowTilt, HighTilt };

Mat3d low_tilt_matrix(double beta);   // M_c
Mat3d high_tilt_matrix(double beta);  // M_s
Mat3d low_tilt_inverse(double beta);
Mat3d high_tilt_inverse(double beta);

// Regime for the current tilt, switching at beta_w with a +/- band hysteresis.
TiltRegime select_regime(double beta, TiltRegime previous, double beta_w, double band);

struct Allocation {
  TiltRegime regime = TiltRegime::LowTilt;
  double u11 = 0.0;  // thrust-differential roll
  double u21 = 0.0;  // thrust-differential pitch (zero in high tilt)
  double u31 = 0.0;  // reactive-torque yaw
  double u22 = 0.0;  // flap pitch (zero in low tilt)
};

// Solves M_c u_ac = u_a (low tilt, u22 = 0) or M_s u_as = u_a (high tilt,
// u21 = 0). Throws AllocationError if the active matrix is near singular.
Allocation allocate(const Vec3d& u_a, double beta, TiltRegime regime);

// ---------------------------------------------------------------------------
// Mixer

struct MixerTargets {
  double T_total = 0.0;
  double roll = 0.0;   // u11
  double pitch = 0.0;  // u21
  double yaw = 0.0;    // u31 = sum (-1)^(i+1) Q_i
};

struct MixerResult {
  Vec4d T = Vec4d::Zero();
  double T_total = 0.0;       // applied total
  double moment_scale = 1.0;  // fraction of the moment targets kept
  bool saturated = false;
};

// Rows: total thrust, roll, pitch, yaw with Q_i = slope_i T_i + offset_i.
Mat4d mixer_matrix(const std::array<ThrustTorqueMap<double>, 4>& maps, const WingParams& wp);

// Exact solve when the result lies in [T_min, T_max]. Otherwise the total is
// moved inside the feasible interval first and, if that is not enough, the
// moment targets are scaled down; both set the saturation flag.
MixerResult mix(const MixerTargets& targets, const std::array<ThrustTorqueMap<double>, 4>& maps,
                const WingParams& wp, const ActuatorLimits& limits);

// Flap angle producing the rear free-wing pitch moment u22. Throws
// EffectivenessError when V_rt is below the threshold; clamps to delta_max.
double delta_from_pitch_demand(double u22, double V_rt, const WingParams& wp, double rho, const ActuatorLimits& limits);

// ---------------------------------------------------------------------------
// Complete transition controller

struct ControllerConfig {
  ControllerGains gains;
  ActuatorLimits limits;
  double beta_w = kPi / 4.0;
  double hysteresis = deg2rad(0.5);
  int passes = 2;  // Gamma re-evaluations with the freshly mixed thrusts
};

// Value carried from one control step to the next.
struct ControllerState {
  TiltRegime regime = TiltRegime::LowTilt;
  Vec4d T = Vec4d::Zero();  // last applied thrusts
  double delta = 0.0;       // last applied flap (held when ineffective)
};

struct ControlOutput {
  ControlInput input;
  ControllerState next;
  Vec3d u_p = Vec3d::Zero();           // desired force
  Vec3d u_a = Vec3d::Zero();           // desired moment
  double T_total_demand = 0.0;         // projection of u_p on the thrust axis
  Vec3d unactuated = Vec3d::Zero();    // part of u_p off the thrust axis
  bool saturated = false;
  bool delta_held = false;
};

// Measured: position, attitude, tilt and tilt rate. Velocities, Euler rates
// and disturbances come from the observers. The aerodynamic terms Gamma_p,
// Gamma_a are evaluated from the model at the measured flight condition.
ControlOutput control_step(const ControllerState& state, double t, const RigidState& measured,
                           const ObserverBank& bank, const TransitionReference& reference,
                           const AircraftParams& params, const ControllerConfig& config);

}  // namespace tiltrotor
