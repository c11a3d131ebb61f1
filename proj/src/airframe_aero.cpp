#include "tiltrotor/airframe_aero.hpp"

#include "tiltrotor/errors.hpp"

#include <cmath>
#include <string>

namespace tiltrotor {

double stall_rate_limit(double v_i, double V_z, double V_x, TiltDirection direction, const WingParams& wp) {
  const double axial = v_i + V_z;
  if (!(axial > 0.0)) throw DomainError("stall rate limit needs v_i + V_z > 0");
  const double lift_room = axial * std::tan(wp.alpha_max);
  const double bound = (direction == TiltDirection::Forward ? lift_room + V_x : lift_room - V_x) / wp.tilt_airflow_arm();
  if (!(bound > 0.0))
    throw InfeasibleTiltError("no admissible tilt rate: bound " + std::to_string(bound) + " rad/s");
  return bound;
}

}  // namespace tiltrotor
