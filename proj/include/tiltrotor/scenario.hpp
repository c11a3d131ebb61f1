// Closed-loop transition scenarios: configuration, the simulation loop, the
// CSV trajectory log and the run summary.
#pragma once

#include "tiltrotor/control.hpp"
#include "tiltrotor/dynamics.hpp"
#include "tiltrotor/observers.hpp"
#include "tiltrotor/params.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tiltrotor {

enum class ObserverInit {
  Zero,      // every estimate starts at zero
  Measured,  // position estimates start at the measured position, the rest at zero
};

struct ScenarioConfig {
  std::string name = "hover_to_level";
  std::string params_path;  // empty: reference aircraft

  TransitionReference reference;
  RigidState initial;
  Vec4d initial_thrusts = Vec4d::Constant(8117.0);

  DisturbanceModel disturbance;

  double dt = 1e-3;
  double t_end = 40.0;
  double log_interval = 0.01;

  ObserverGains observer_gains;
  int observer_substeps = 20;
  ObserverInit observer_init = ObserverInit::Measured;

  ControllerConfig controller;
  std::optional<double> T_max;  // default 1.2 rho_mT m g / 4

  std::string csv_path;
  std::string summary_path;
  unsigned long seed = 0;  // reserved, nothing is random
};

// Defaults of the two reference experiments.
ScenarioConfig hover_to_level_scenario();
ScenarioConfig level_to_hover_scenario();

// Reads a YAML scenario; unspecified keys keep the defaults of the scenario's
// direction. Relative paths resolve against base_dir.
ScenarioConfig parse_scenario(const std::string& yaml_text, const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path);

void validate(const ScenarioConfig& config);

// Everything known at one integration step, handed to step observers.
struct StepRecord {
  long step = 0;
  double t = 0.0;
  RigidState state;
  ObserverBank bank;
  ControlOutput control;
  Reference reference;
  Vec3d Delta_p = Vec3d::Zero();
  Vec3d Delta_a = Vec3d::Zero();
  PlantEvaluation plant;
};

struct ScenarioSummary {
  std::string name;
  bool completed = false;
  std::string abort_reason;
  long abort_step = -1;

  long steps = 0;
  double t_final = 0.0;
  RigidState final_state;

  double max_altitude_error = 0.0;  // max |Z - Z_d| over the run
  double final_altitude_error = 0.0;
  double final_speed = 0.0;         // |v_p| at t_final
  double final_forward_speed = 0.0;
  double final_beta_error = 0.0;    // beta - beta_end at t_final
  double beta_at_profile_end = 0.0; // beta at t_0 + 2 t_1
  double t_reach = std::numeric_limits<double>::quiet_NaN();  // first beta within 1e-5 of beta_end
  double max_attitude_error_tail = 0.0;  // max over the last tail_window seconds, rad
  double tail_window = 10.0;
  Vec3d final_position_error = Vec3d::Zero();
  Vec3d final_attitude_error = Vec3d::Zero();
  double max_unactuated = 0.0;  // N

  long saturated_steps = 0;
  long delta_held_steps = 0;
  std::vector<double> regime_switch_times;
  double observer_convergence_time = std::numeric_limits<double>::quiet_NaN();
  TiltFeasibility feasibility;
};

struct ScenarioResult {
  ScenarioSummary summary;
  std::string csv;  // complete trajectory log
};

using StepCallback = std::function<void(const StepRecord&)>;

// Runs the closed loop: RK4 plant with the controller held over each step,
// observers sub-stepped between the step ends. Deterministic.
ScenarioResult run_scenario(const ScenarioConfig& config, const AircraftParams& params,
                            const StepCallback& on_step = {});

// Header and rows of the trajectory log.
std::string csv_header();

std::string summary_yaml(const ScenarioSummary& summary);

// Writes csv and summary to the configured paths (skipping empty ones).
void write_outputs(const ScenarioConfig& config, const ScenarioResult& result);

}  // namespace tiltrotor
