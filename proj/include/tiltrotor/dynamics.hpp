// Rigid-body plant: aerodynamic evaluation, generalized force and moment
// assembly, the disturbance model and the equations of motion.
//
// Attitude follows the simplified model in which Euler angles are driven
// directly by J^-1 times the applied moments.
#pragma once

#include "tiltrotor/airframe_aero.hpp"
#include "tiltrotor/params.hpp"
#include "tiltrotor/rotor_aero.hpp"
#include "tiltrotor/types.hpp"

#include <array>
#include <utility>

namespace tiltrotor {

struct RigidState {
  Vec3d x_p = Vec3d::Zero();  // X, Y, Z (Z up), m
  Vec3d v_p = Vec3d::Zero();  // m/s
  Vec3d x_a = Vec3d::Zero();  // phi, theta, psi, rad
  Vec3d w_a = Vec3d::Zero();  // Euler rates, rad/s
  double beta = 0.0;          // 0 helicopter mode, pi/2 airplane mode
  double beta_dot = 0.0;

  using Vector = Eigen::Matrix<double, 14, 1>;
  Vector pack() const;
  static RigidState unpack(const Vector& v);
};

struct ControlInput {
  Vec4d T = Vec4d::Zero();         // rotor thrusts, N
  double M_beta = 0.0;             // tilt torque, N m
  double delta = 0.0;              // rear free-wing flaps (both), rad
  Vec2d delta_56 = Vec2d::Zero();  // fixed-wing flaps right/left, rad
};

// Below this airspeed the fixed-wing incidence is frozen at zero.
inline constexpr double kMinAlphaAirspeed = 0.5;

struct Airflow {
  Vec3d V_b = Vec3d::Zero();     // body-frame airspeed (aircraft relative to air)
  Vec3d V_beta = Vec3d::Zero();  // same, tilt frame
  double speed = 0.0;
  double alpha = 0.0;     // fixed-wing incidence, positive with the relative wind from below
  double sideslip = 0.0;
};

struct RotorOutput {
  double T = 0.0;
  double Q = 0.0;
  double phi_7 = 0.0;
  double v_i = 0.0;
  double C_T = 0.0;
  double C_Q = 0.0;
  InflowRegime regime = InflowRegime::Momentum;
  InflowState<double> inflow;
  ThrustTorqueMap<double> torque_map{0.0, 0.0};
};

struct AeroLoads {
  Airflow air;
  std::array<RotorOutput, 4> rotors;
  std::array<FreeWingForces<double>, 4> free_wings;
  FixedWingForces<double> fixed;
  TailForces<double> tail;
};

struct ForceSet {
  Vec3d u_p = Vec3d::Zero();      // thrust, inertial
  Vec3d Gamma_p = Vec3d::Zero();  // aero + gravity, inertial
  Vec3d direction = Vec3d::UnitZ();
};

struct MomentSet {
  Vec3d u_a = Vec3d::Zero();
  Vec3d u_ac = Vec3d::Zero();
  Vec3d u_as = Vec3d::Zero();
  Vec3d u_beta = Vec3d::Zero();
  Vec3d Gamma_a = Vec3d::Zero();
};

struct PlantEvaluation {
  AeroLoads loads;
  ForceSet forces;
  MomentSet moments;
};

Airflow airflow(const RigidState& state, const AircraftParams& params);

// One rotor at thrust T in the given airflow.
RotorOutput rotor_output(double T, const Airflow& air, double beta_dot, const RotorParams& rp);

AeroLoads evaluate_aero(const RigidState& state, const ControlInput& input, const AircraftParams& params);

ForceSet assemble_forces(const RigidState& state, const ControlInput& input, const AeroLoads& loads,
                         const AircraftParams& params);

MomentSet assemble_moments(const RigidState& state, const ControlInput& input, const AeroLoads& loads,
                           const AircraftParams& params);

PlantEvaluation evaluate_plant(const RigidState& state, const ControlInput& input, const AircraftParams& params);

// Analytic lumped uncertainties, unscaled: first force (N), second moment (N m).
std::pair<Vec3d, Vec3d> uncertainty_signals(double t);

// Time derivative of uncertainty_signals, used for observer gain bounds.
std::pair<Vec3d, Vec3d> uncertainty_signal_rates(double t);

struct DisturbanceModel {
  bool enabled = true;
  double scale = 1.0;
  bool gyroscopic = true;  // add rotor tilt gyroscopics to the moment channel

  // Delta_p and Delta_a at time t.
  std::pair<Vec3d, Vec3d> evaluate(double t, const RigidState& state, const AircraftParams& params) const;
};

// |theta| closer than this to pi/2 aborts the integration.
inline constexpr double kPitchGuard = 1e-3;

struct Derivative {
  RigidState::Vector xdot;
  PlantEvaluation plant;
  Vec3d Delta_p = Vec3d::Zero();
  Vec3d Delta_a = Vec3d::Zero();
};

Derivative state_derivative(const RigidState& state, const ControlInput& input, double t,
                            const AircraftParams& params, const DisturbanceModel& disturbance);

}  // namespace tiltrotor
