// Equilibrium solvers on the full plant model.
#pragma once

#include "tiltrotor/dynamics.hpp"
#include "tiltrotor/params.hpp"

namespace tiltrotor {

struct TrimResult {
  Vec4d T = Vec4d::Zero();  // rotor thrusts, N
  double theta = 0.0;       // pitch attitude, rad (equals alpha in level flight)
  double delta = 0.0;       // rear flap, rad
  double alpha = 0.0;       // fixed-wing incidence, rad
  double force_residual = 0.0;   // N
  double moment_residual = 0.0;  // N m
  int iterations = 0;
  bool flap_within_limits = true;
  RigidState state;
  ControlInput input;
};

// Hover at beta = 0 with zero airspeed: vertical force and all three moments
// balanced by the four thrusts. Throws NumericError if Newton stalls.
TrimResult trim_hover(const AircraftParams& params, double tolerance = 1e-9);

// Level flight at speed V with beta = pi/2. Unknowns: total thrust, pitch
// attitude and rear flap; the thrust split keeps the rotor pitch moment zero.
// Throws NumericError when no equilibrium is found.
TrimResult trim_cruise(const AircraftParams& params, double V, double tolerance = 1e-6,
                       double delta_max = deg2rad(30.0));

}  // namespace tiltrotor
