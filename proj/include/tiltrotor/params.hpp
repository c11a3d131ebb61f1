// Complete parameter set of the aircraft. Defaults reproduce the reference
// quad tilt-rotor (3313 kg).
#pragma once

#include "tiltrotor/airframe_aero.hpp"
#include "tiltrotor/rotor_aero.hpp"
#include "tiltrotor/sizing.hpp"
#include "tiltrotor/types.hpp"

#include <string>

namespace tiltrotor {

struct AircraftParams {
  double m = 3313.0;
  double g = kGravity;
  double rho = 1.225;
  Vec3d J{220.0, 220.0, 400.0};  // roll, pitch, yaw, kg m^2
  double J_4 = 50.0;             // tilt mechanism, kg m^2
  double S_front = 12.3458;      // front fixed-wing root area, m^2
  double S_w = 43.75;            // total fixed-wing area, m^2
  Vec3d wind = Vec3d::Zero();    // inertial, m/s

  RotorParams rotor;
  WingParams wing;
  TailParams tail;
  DesignTargets design;

  double weight() const { return m * g; }
};

// Reference aircraft with every value filled in.
AircraftParams reference_aircraft();

// Back-solved loadings consistent with the reference wing areas.
DesignTargets reference_design_targets();

// Throws ValidationError naming the first offending field.
void validate(const AircraftParams& params);

// Reads a YAML parameter file. Missing optional geometry (R, b, p, S_w, S_fi,
// S_ri, l5, Omega) is derived from the [design] section through the sizing
// relations; a missing required key raises ConfigError naming the key.
AircraftParams load_params(const std::string& path);
AircraftParams parse_params(const std::string& yaml_text);

// Writes the full parameter set, derived values included.
std::string dump_params(const AircraftParams& params);

}  // namespace tiltrotor
