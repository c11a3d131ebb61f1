#include "tiltrotor/scenario.hpp"

#include "tiltrotor/errors.hpp"
#include "tiltrotor/integrator.hpp"

#include "yaml_util.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace tiltrotor {

ScenarioConfig hover_to_level_scenario() {
  ScenarioConfig c;
  c.name = "hover_to_level";
  c.reference.profile = TiltProfile{TiltDirection::Forward, 5.0, 0.0};
  c.reference.x0 = Vec3d(0.0, 0.0, 100.0);
  c.reference.V_start = 0.0;
  c.reference.V_end = 100.0;
  c.reference.attitude = Vec3d(0.0, deg2rad(5.0), 0.0);
  c.initial.x_p = Vec3d(1.0, -1.0, 102.0);
  c.initial.x_a = Vec3d(deg2rad(5.0), deg2rad(3.0), deg2rad(-5.0));
  c.initial_thrusts = Vec4d::Constant(8117.0);
  return c;
}

ScenarioConfig level_to_hover_scenario() {
  ScenarioConfig c = hover_to_level_scenario();
  c.name = "level_to_hover";
  c.reference.profile.direction = TiltDirection::Backward;
  c.reference.V_start = 100.0;
  c.reference.V_end = 0.0;
  c.reference.attitude = Vec3d::Zero();
  c.initial.v_p = Vec3d(100.0, 0.0, 0.0);
  c.initial.beta = kPi / 2.0;
  c.initial_thrusts = Vec4d::Constant(1917.0);
  return c;
}

void validate(const ScenarioConfig& c) {
  if (!(c.dt > 0.0)) throw ValidationError("integration.dt must be positive");
  if (!(c.t_end > 0.0)) throw ValidationError("integration.t_end must be positive");
  if (!(c.log_interval > 0.0)) throw ValidationError("integration.log_interval must be positive");
  if (c.observer_substeps < 1) throw ValidationError("observer.substeps must be at least 1");
  if (!(c.reference.profile.t_1 > 0.0)) throw ValidationError("reference.t_1 must be positive");
  if (std::abs(c.initial.x_a.y()) >= kPi / 2.0 - kPitchGuard)
    throw ValidationError("initial.attitude: pitch must stay away from +/- 90 deg");
  if (c.initial.beta < 0.0 || c.initial.beta > kPi / 2.0) throw ValidationError("initial.beta must lie in [0, pi/2]");
  if (!c.reference.x0.allFinite() || !c.reference.attitude.allFinite())
    throw ValidationError("reference values must be finite");
  if ((c.initial_thrusts.array() < 0.0).any()) throw ValidationError("initial.thrusts must be non-negative");
}

// ---------------------------------------------------------------------------
// Scenario files

ScenarioConfig parse_scenario(const std::string& yaml_text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse scenario: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("scenario file must be a mapping");

  const std::string direction = root["direction"] ? root["direction"].as<std::string>() : "hover_to_level";
  ScenarioConfig c;
  if (direction == "hover_to_level") {
    c = hover_to_level_scenario();
  } else if (direction == "level_to_hover") {
    c = level_to_hover_scenario();
  } else {
    throw ConfigError("direction must be hover_to_level or level_to_hover, got '" + direction + "'");
  }
  if (root["name"]) c.name = root["name"].as<std::string>();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (std::filesystem::path(base_dir) / path).lexically_normal().string();
  };
  if (root["params"]) c.params_path = resolve(root["params"].as<std::string>());
  if (root["seed"]) c.seed = root["seed"].as<unsigned long>();

  if (const YAML::Node r = root["reference"]) {
    TransitionReference& ref = c.reference;
    ref.x0.x() = yaml::optional(r, "reference", "X0").value_or(ref.x0.x());
    ref.x0.y() = yaml::optional(r, "reference", "Y0").value_or(ref.x0.y());
    ref.x0.z() = yaml::optional(r, "reference", "Z_d").value_or(ref.x0.z());
    ref.V_start = yaml::optional(r, "reference", "V_start").value_or(ref.V_start);
    ref.V_end = yaml::optional(r, "reference", "V_end").value_or(ref.V_end);
    ref.attitude = yaml::optional_vector<3>(r, "reference", "attitude").value_or(ref.attitude);
    ref.profile.t_1 = yaml::optional(r, "reference", "t_1").value_or(ref.profile.t_1);
    ref.profile.t_0 = yaml::optional(r, "reference", "t_0").value_or(ref.profile.t_0);
    if (const YAML::Node s = r["step"]) {
      ref.step.time = yaml::required(s, "reference.step", "time");
      ref.step.position = yaml::optional_vector<3>(s, "reference.step", "position").value_or(Vec3d::Zero());
      ref.step.attitude = yaml::optional_vector<3>(s, "reference.step", "attitude").value_or(Vec3d::Zero());
      ref.step.beta = yaml::optional(s, "reference.step", "beta").value_or(0.0);
    }
  }

  if (const YAML::Node i = root["initial"]) {
    RigidState& s = c.initial;
    s.x_p = yaml::optional_vector<3>(i, "initial", "position").value_or(s.x_p);
    s.v_p = yaml::optional_vector<3>(i, "initial", "velocity").value_or(s.v_p);
    s.x_a = yaml::optional_vector<3>(i, "initial", "attitude").value_or(s.x_a);
    s.w_a = yaml::optional_vector<3>(i, "initial", "rates").value_or(s.w_a);
    s.beta = yaml::optional(i, "initial", "beta").value_or(s.beta);
    s.beta_dot = yaml::optional(i, "initial", "beta_dot").value_or(s.beta_dot);
    c.initial_thrusts = yaml::optional_vector<4>(i, "initial", "thrusts").value_or(c.initial_thrusts);
  }

  if (const YAML::Node d = root["disturbance"]) {
    if (d["enabled"]) c.disturbance.enabled = d["enabled"].as<bool>();
    if (d["gyroscopic"]) c.disturbance.gyroscopic = d["gyroscopic"].as<bool>();
    c.disturbance.scale = yaml::optional(d, "disturbance", "scale").value_or(c.disturbance.scale);
  }

  if (const YAML::Node n = root["integration"]) {
    c.dt = yaml::optional(n, "integration", "dt").value_or(c.dt);
    c.t_end = yaml::optional(n, "integration", "t_end").value_or(c.t_end);
    c.log_interval = yaml::optional(n, "integration", "log_interval").value_or(c.log_interval);
  }

  if (const YAML::Node o = root["observer"]) {
    ObserverGains& g = c.observer_gains;
    g.k_p1 = yaml::optional(o, "observer", "k_p1").value_or(g.k_p1);
    g.k_p2 = yaml::optional(o, "observer", "k_p2").value_or(g.k_p2);
    g.k_p3 = yaml::optional(o, "observer", "k_p3").value_or(g.k_p3);
    g.k_a1 = yaml::optional(o, "observer", "k_a1").value_or(g.k_a1);
    g.k_a2 = yaml::optional(o, "observer", "k_a2").value_or(g.k_a2);
    g.k_a3 = yaml::optional(o, "observer", "k_a3").value_or(g.k_a3);
    if (o["substeps"]) c.observer_substeps = o["substeps"].as<int>();
    if (o["init"]) {
      const std::string init = o["init"].as<std::string>();
      if (init == "zero") {
        c.observer_init = ObserverInit::Zero;
      } else if (init == "measured") {
        c.observer_init = ObserverInit::Measured;
      } else {
        throw ConfigError("observer.init must be zero or measured, got '" + init + "'");
      }
    }
  }

  if (const YAML::Node k = root["controller"]) {
    ControllerConfig& cc = c.controller;
    ControllerGains& g = cc.gains;
    g.k1 = yaml::optional(k, "controller", "k1").value_or(g.k1);
    g.k2 = yaml::optional(k, "controller", "k2").value_or(g.k2);
    g.k3 = yaml::optional(k, "controller", "k3").value_or(g.k3);
    g.k4 = yaml::optional(k, "controller", "k4").value_or(g.k4);
    g.k5 = yaml::optional(k, "controller", "k5").value_or(g.k5);
    g.k6 = yaml::optional(k, "controller", "k6").value_or(g.k6);
    if (auto T_max = yaml::optional(k, "controller", "T_max")) c.T_max = *T_max;
    cc.limits.delta_max = yaml::optional(k, "controller", "delta_max").value_or(cc.limits.delta_max);
    cc.limits.tilt_accel_max = yaml::optional(k, "controller", "tilt_accel_max").value_or(cc.limits.tilt_accel_max);
    cc.limits.V_rt_min = yaml::optional(k, "controller", "V_rt_min").value_or(cc.limits.V_rt_min);
    cc.beta_w = yaml::optional(k, "controller", "beta_w").value_or(cc.beta_w);
    cc.hysteresis = yaml::optional(k, "controller", "hysteresis").value_or(cc.hysteresis);
  }

  if (const YAML::Node out = root["output"]) {
    if (out["csv"]) c.csv_path = resolve(out["csv"].as<std::string>());
    if (out["summary"]) c.summary_path = resolve(out["summary"].as<std::string>());
  }
  validate(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open scenario file '" + path + "'");
  std::stringstream text;
  text << file.rdbuf();
  return parse_scenario(text.str(), std::filesystem::path(path).parent_path().string());
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

constexpr double kReachTolerance = 1e-5;
constexpr double kConvergenceTolerance = 1e-3;

ObserverSample sample(const RigidState& s, const PlantEvaluation& plant,
                      const AircraftParams& p) {
  ObserverSample o;
  o.position = s.x_p;
  o.velocity = s.v_p;
  o.known_p = (plant.forces.u_p + plant.forces.Gamma_p) / p.m;
  o.rates = s.w_a;
  o.known_a = (plant.moments.u_a + plant.moments.u_beta + plant.moments.Gamma_a).cwiseQuotient(p.J);
  return o;
}

void append_row(fmt::memory_buffer& buf, double t, const RigidState& s, const ControlInput& u,
                const ObserverBank& bank, const AircraftParams& p) {
  const Vec3d dp = bank.force_disturbance(p.m);
  const Vec3d da = bank.moment_disturbance(p.J);
  const double row[] = {t,
                        s.x_p.x(), s.x_p.y(), s.x_p.z(),
                        s.v_p.x(), s.v_p.y(), s.v_p.z(),
                        s.x_a.x(), s.x_a.y(), s.x_a.z(),
                        s.w_a.x(), s.w_a.y(), s.w_a.z(),
                        s.beta, s.beta_dot, -u.M_beta / p.J_4,
                        u.T(0), u.T(1), u.T(2), u.T(3),
                        u.M_beta, u.delta,
                        dp.x(), dp.y(), dp.z(),
                        da.x(), da.y(), da.z()};
  bool first = true;
  for (double v : row) {
    if (!first) buf.push_back(',');
    fmt::format_to(std::back_inserter(buf), "{:.10g}", v);
    first = false;
  }
  buf.push_back('\n');
}

}  // namespace

std::string csv_header() {
  return "t,X,Y,Z,Vx,Vy,Vz,phi,theta,psi,p_rate,q_rate,r_rate,beta,beta_dot,beta_ddot,T1,T2,T3,T4,M_beta,delta,"
         "dhat_p1,dhat_p2,dhat_p3,dhat_a1,dhat_a2,dhat_a3\n";
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const AircraftParams& params, const StepCallback& on_step) {
  validate(cfg);
  ControllerConfig ctrl = cfg.controller;
  ctrl.limits.T_max = cfg.T_max.value_or(default_thrust_limit(params));
  const TransitionReference& reference = cfg.reference;
  const TiltProfile& profile = reference.profile;

  RigidState x = cfg.initial;
  ObserverBank bank;
  if (cfg.observer_init == ObserverInit::Measured) bank.position.col(0) = x.x_p;
  ControllerState cs;
  cs.T = cfg.initial_thrusts;
  cs.regime = x.beta > ctrl.beta_w ? TiltRegime::HighTilt : TiltRegime::LowTilt;

  ScenarioResult result;
  ScenarioSummary& sum = result.summary;
  sum.name = cfg.name;
  fmt::memory_buffer csv;
  const std::string header = csv_header();
  csv.append(header.data(), header.data() + header.size());

  const long steps = std::lround(cfg.t_end / cfg.dt);
  const long log_every = std::max(1L, std::lround(cfg.log_interval / cfg.dt));
  const long feasibility_step = std::lround((profile.t_0 + profile.t_1) / cfg.dt);
  const long profile_end_step = std::lround((profile.t_0 + 2.0 * profile.t_1) / cfg.dt);
  const double direction = profile.beta_end() > profile.beta_start() ? 1.0 : -1.0;
  double last_unconverged = -1.0;  // time of the last step with an estimate error above tolerance

  auto rhs_for = [&](const ControlInput& u) {
    return [&, u](double t, const RigidState::Vector& v) {
      return RigidState::Vector(state_derivative(RigidState::unpack(v), u, t, params, cfg.disturbance).xdot);
    };
  };

  long k = 0;
  try {
    for (;; ++k) {
      const double t = static_cast<double>(k) * cfg.dt;
      const ControlOutput u = control_step(cs, t, x, bank, reference, params, ctrl);
      const Derivative d0 = state_derivative(x, u.input, t, params, cfg.disturbance);
      const Reference ref = reference.at(t);

      if (k % log_every == 0) append_row(csv, t, x, u.input, bank, params);
      if (on_step) on_step(StepRecord{k, t, x, bank, u, ref, d0.Delta_p, d0.Delta_a, d0.plant});

      // Statistics at t.
      sum.max_altitude_error = std::max(sum.max_altitude_error, std::abs(x.x_p.z() - ref.x.z()));
      sum.max_unactuated = std::max(sum.max_unactuated, u.unactuated.norm());
      if (u.saturated) ++sum.saturated_steps;
      if (u.delta_held) ++sum.delta_held_steps;
      if (u.next.regime != cs.regime) sum.regime_switch_times.push_back(t);
      if (std::isnan(sum.t_reach) && direction * (x.beta - profile.beta_end()) >= -kReachTolerance) sum.t_reach = t;
      if (t >= cfg.t_end - sum.tail_window - 1e-9)
        sum.max_attitude_error_tail =
            std::max(sum.max_attitude_error_tail, (x.x_a - ref.att).lpNorm<Eigen::Infinity>());
      const double estimate_error = std::max({(bank.position_estimate() - x.x_p).lpNorm<Eigen::Infinity>(),
                                              (bank.velocity_estimate() - x.v_p).lpNorm<Eigen::Infinity>(),
                                              (bank.rate_estimate() - x.w_a).lpNorm<Eigen::Infinity>()});
      if (estimate_error >= kConvergenceTolerance) last_unconverged = t;
      if (k == feasibility_step) {
        double v_i = 0.0;
        for (const auto& r : d0.plant.loads.rotors) v_i += 0.25 * r.v_i;
        const Vec3d& Vb = d0.plant.loads.air.V_beta;
        sum.feasibility = tilt_feasibility(profile, v_i, Vb.x(), Vb.z(), params.wing);
      }
      if (k == profile_end_step) sum.beta_at_profile_end = x.beta;

      sum.steps = k;
      sum.t_final = t;
      sum.final_state = x;
      sum.final_position_error = x.x_p - ref.x;
      sum.final_attitude_error = x.x_a - ref.att;
      if (k >= steps) break;

      const RigidState::Vector next = rk4_step(rhs_for(u.input), t, x.pack(), cfg.dt);
      if (!next.allFinite()) throw IntegrationError("non-finite state after step " + std::to_string(k));
      const RigidState x1 = RigidState::unpack(next);
      const Derivative d1 = state_derivative(x1, u.input, t + cfg.dt, params, cfg.disturbance);
      bank = observer_advance(bank, sample(x, d0.plant, params), sample(x1, d1.plant, params),
                              cfg.observer_gains, cfg.dt, cfg.observer_substeps);
      cs = u.next;
      x = x1;
    }
    sum.completed = true;
  } catch (const std::runtime_error& e) {
    sum.completed = false;
    sum.abort_reason = e.what();
    sum.abort_step = k;
  }

  const RigidState& f = sum.final_state;
  sum.final_altitude_error = sum.final_position_error.z();
  sum.final_speed = f.v_p.norm();
  sum.final_forward_speed = f.v_p.x();
  sum.final_beta_error = f.beta - profile.beta_end();
  if (last_unconverged < 0.0) {
    sum.observer_convergence_time = 0.0;
  } else if (last_unconverged < sum.t_final) {
    sum.observer_convergence_time = last_unconverged + cfg.dt;
  }
  result.csv = fmt::to_string(csv);
  return result;
}

std::string summary_yaml(const ScenarioSummary& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(10);
  auto vec = [&](const char* key, const Vec3d& v) {
    out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << v(0) << v(1) << v(2) << YAML::EndSeq;
  };
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "completed" << YAML::Value << s.completed;
  if (!s.completed) {
    out << YAML::Key << "abort_reason" << YAML::Value << s.abort_reason;
    out << YAML::Key << "abort_step" << YAML::Value << s.abort_step;
  }
  out << YAML::Key << "steps" << YAML::Value << s.steps;
  out << YAML::Key << "t_final" << YAML::Value << s.t_final;
  vec("final_position", s.final_state.x_p);
  vec("final_velocity", s.final_state.v_p);
  vec("final_attitude", s.final_state.x_a);
  out << YAML::Key << "final_beta" << YAML::Value << s.final_state.beta;
  vec("final_position_error", s.final_position_error);
  vec("final_attitude_error", s.final_attitude_error);
  out << YAML::Key << "final_altitude_error" << YAML::Value << s.final_altitude_error;
  out << YAML::Key << "max_altitude_error" << YAML::Value << s.max_altitude_error;
  out << YAML::Key << "final_speed" << YAML::Value << s.final_speed;
  out << YAML::Key << "final_forward_speed" << YAML::Value << s.final_forward_speed;
  out << YAML::Key << "final_beta_error" << YAML::Value << s.final_beta_error;
  out << YAML::Key << "beta_at_profile_end" << YAML::Value << s.beta_at_profile_end;
  out << YAML::Key << "t_reach" << YAML::Value << s.t_reach;
  out << YAML::Key << "tail_window" << YAML::Value << s.tail_window;
  out << YAML::Key << "max_attitude_error_tail" << YAML::Value << s.max_attitude_error_tail;
  out << YAML::Key << "max_unactuated_force" << YAML::Value << s.max_unactuated;
  out << YAML::Key << "saturated_steps" << YAML::Value << s.saturated_steps;
  out << YAML::Key << "delta_held_steps" << YAML::Value << s.delta_held_steps;
  out << YAML::Key << "regime_switch_times" << YAML::Value << YAML::Flow << s.regime_switch_times;
  out << YAML::Key << "observer_convergence_time" << YAML::Value << s.observer_convergence_time;
  out << YAML::Key << "tilt_feasibility" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "peak_rate" << YAML::Value << s.feasibility.peak_rate;
  out << YAML::Key << "bound" << YAML::Value << s.feasibility.bound;
  out << YAML::Key << "margin" << YAML::Value << s.feasibility.margin;
  out << YAML::Key << "t_1_min" << YAML::Value << s.feasibility.t_1_min;
  out << YAML::Key << "pass" << YAML::Value << s.feasibility.pass;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void write_outputs(const ScenarioConfig& config, const ScenarioResult& result) {
  auto write = [](const std::string& path, const std::string& text) {
    if (path.empty()) return;
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream file(p, std::ios::binary);
    if (!file) throw ConfigError("cannot write '" + path + "'");
    file << text;
  };
  write(config.csv_path, result.csv);
  write(config.summary_path, summary_yaml(result.summary));
}

}  // namespace tiltrotor
