#include "tiltrotor/verify.hpp"

#include "tiltrotor/control.hpp"
#include "tiltrotor/errors.hpp"
#include "tiltrotor/integrator.hpp"
#include "tiltrotor/observers.hpp"
#include "tiltrotor/oracles/quadrature.hpp"
#include "tiltrotor/params.hpp"
#include "tiltrotor/rotor_aero.hpp"
#include "tiltrotor/scenario.hpp"
#include "tiltrotor/sizing.hpp"
#include "tiltrotor/trim.hpp"

#include <fmt/format.h>
#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

namespace tiltrotor {

bool CriterionResult::pass() const {
  return error.empty() && !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

Check within(std::string name, double value, double target, double tol, std::string note = {}) {
  return {std::move(name), std::abs(value - target) <= tol, value, fmt::format("{} +/- {:g}", target, tol),
          std::move(note)};
}

Check at_most(std::string name, double value, double limit, std::string note = {}) {
  return {std::move(name), value <= limit, value, fmt::format("<= {:g}", limit), std::move(note)};
}

Check is_true(std::string name, bool ok, std::string note = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, "true", std::move(note)};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ---------------------------------------------------------------------------
// 1. Sizing

std::vector<Check> sizing_checks() {
  const DesignTargets d = reference_design_targets();
  const double R = rotor_radius(3313.0, 60.0);
  const BladeGeometry blade = blade_geometry(R, d.rho_b, d.sigma);
  const WingGeometry wing = wing_geometry(d.m, d.WL_w, d.WL_ws, d.A_w, d.S_front);
  return {within("rotor_radius(3313, 60)", R, 2.0966, 5e-4),
          within("blade chord b", blade.b, 0.1613, 5e-4),
          within("blade count p", blade.p, 4.0, 0.0),
          within("free-wing area S_fi", wing.S_fi, 4.3795, 1e-3, "from back-solved wing loadings")};
}

// ---------------------------------------------------------------------------
// 2. Hover trim

std::vector<Check> hover_trim_checks() {
  const AircraftParams p = reference_aircraft();
  const TrimResult trim = trim_hover(p);
  std::vector<Check> out;
  out.push_back(within("total thrust vs mg", trim.T.sum(), p.weight(), 0.1,
                       "free-wing profile drag in the downwash adds a download"));
  for (int i = 0; i < 4; ++i)
    out.push_back(within(fmt::format("T{} relative to 8117 N", i + 1), trim.T(i) / 8117.0, 1.0, 0.01,
                         "front/rear split set by the l3/l4 pitch balance"));
  out.push_back(at_most("force residual (N)", trim.force_residual, 1e-9));
  out.push_back(at_most("moment residual (N m)", trim.moment_residual, 1e-9));
  return out;
}

// ---------------------------------------------------------------------------
// 3. Inflow

std::vector<Check> inflow_checks() {
  double worst = 0.0;
  int points = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const double Vx = 4.0 * i / 9.0;
        const double Vy = -1.0 + 2.0 * j / 9.0;
        const double Vz = -4.0 + 8.0 * k / 9.0;
        if (in_vortex_ring(std::hypot(Vx, Vy), Vz)) continue;
        const double x = normalized_momentum_inflow(Vx, Vy, Vz).v_i;
        const double r = ((x + 2.0 * Vz) * x + Vx * Vx + Vy * Vy + Vz * Vz) * x * x - 1.0;
        worst = std::max(worst, std::abs(r));
        ++points;
      }
    }
  }
  double axial = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double Vz = 10.0 * i / 99.0;
    const double exact = -0.5 * Vz + std::sqrt(0.25 * Vz * Vz + 1.0);
    axial = std::max(axial, rel_err(normalized_momentum_inflow(0.0, 0.0, Vz).v_i, exact));
  }
  // Same in dimensional form, through the regime dispatch.
  const RotorParams rp;
  const double v_h = hover_induced_velocity(8117.0, rp.rho, rp.R);
  for (int i = 0; i < 100; ++i) {
    const double Vz = 30.0 * i / 99.0;
    const double exact = -0.5 * Vz + std::sqrt(0.25 * Vz * Vz + v_h * v_h);
    axial = std::max(axial, rel_err(induced_velocity(8117.0, 0.0, 0.0, Vz, rp.rho, rp.R).v_i, exact));
  }
  const double edgewise = normalized_momentum_inflow(1.0, 0.0, 0.0).v_i;
  const bool ring = in_vortex_ring(0.0, -1.0);
  const InducedVelocity johnson = induced_velocity(8117.0, 0.0, 0.0, -v_h, rp.rho, rp.R);
  return {at_most(fmt::format("quartic residual over {} grid points", points), worst, 1e-10),
          at_most("axial closed form, relative", axial, 1e-8),
          within("edgewise v_ih at (V_Xh, V_Zh) = (1, 0)", edgewise, 0.7862, 1e-4),
          is_true("(0, -1) is inside the vortex ring", ring),
          within("vortex-ring v_ih at (V_Zh, V_Xh) = (-1, 0)", johnson.v_i / v_h, 1.618, 1e-3)};
}

// ---------------------------------------------------------------------------
// 4. Blade-element closed forms against quadrature

std::vector<Check> closed_form_checks() {
  const RotorParams rp;
  const double vals[3][6] = {{0.0, -0.05, -0.05, -0.01, 0.0, 0.0},
                             {0.15, 0.0, 0.02, 0.0, 0.05, 0.2},
                             {0.3, 0.05, 0.1, 0.01, 0.1, 0.4}};
  double thrust = 0.0, torque = 0.0, roundtrip = 0.0, composition = 0.0;
  int points = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          for (int e = 0; e < 3; ++e)
            for (int f = 0; f < 3; ++f) {
              InflowState<double> in;
              in.mu_x = vals[a][0];
              in.mu_y = vals[b][1];
              in.mu_z = vals[c][2];
              in.rho_beta = vals[d][3];
              in.v_bar = vals[e][4];
              const double phi = vals[f][5];
              const auto T = thrust_from_pitch(phi, in, rp);
              const auto Q = torque_from_pitch(phi, in, rp);
              thrust = std::max(thrust, rel_err(T.C_T, oracles::thrust_coefficient_quadrature(phi, in, rp)));
              torque = std::max(torque, rel_err(Q.C_Q, oracles::torque_coefficient_quadrature(phi, in, rp)));
              const double phi_back = pitch_from_thrust(T.C_T, in, rp);
              roundtrip = std::max(roundtrip, std::abs(phi_back - phi) / std::max(std::abs(phi), 1.0));
              const double composed = torque_from_pitch(phi_back, in, rp).Q;
              composition =
                  std::max(composition, std::abs(torque_from_thrust(T.T, in, rp) - composed) /
                                            std::max(std::abs(composed), 1.0));
              ++points;
            }
  return {at_most(fmt::format("thrust closed form vs quadrature ({} points)", points), thrust, 1e-6),
          at_most("torque closed form vs quadrature", torque, 1e-6),
          at_most("pitch -> thrust -> pitch roundtrip", roundtrip, 1e-12),
          at_most("thrust-torque composition identity", composition, 1e-12)};
}

// ---------------------------------------------------------------------------
// 5. Observers on a rigid-body truth model

std::vector<Check> observer_checks() {
  const AircraftParams p = reference_aircraft();
  const ObserverGains gains;
  const double dt = 1e-3, horizon = 40.0, settle_limit = horizon - 30.0;
  const int substeps = 20;

  // Known accelerations stand in for the modelled forces and moments.
  auto known_p = [](double t) {
    return Vec3d(0.2 * std::sin(0.5 * t), 0.1 * std::cos(0.3 * t), -0.1 * std::sin(0.7 * t));
  };
  auto known_a = [](double t) {
    return Vec3d(0.05 * std::sin(0.4 * t), -0.05 * std::cos(0.6 * t), 0.02 * std::sin(0.2 * t));
  };
  using State = Eigen::Matrix<double, 12, 1>;
  auto rhs = [&](double t, const State& s) {
    const auto [Dp, Da] = uncertainty_signals(t);
    State d;
    d << s.segment<3>(3), known_p(t) + Dp / p.m, s.segment<3>(9), known_a(t) + Da.cwiseQuotient(p.J);
    return d;
  };

  Vec3d peak_p = Vec3d::Zero(), peak_a = Vec3d::Zero();
  const long steps = std::lround(horizon / dt);
  for (long k = 0; k <= steps; ++k) {
    const auto [Dp, Da] = uncertainty_signals(k * dt);
    peak_p = peak_p.cwiseMax(Dp.cwiseAbs() / p.m);
    peak_a = peak_a.cwiseMax(Da.cwiseAbs().cwiseQuotient(p.J));
  }

  State s;
  s << 1.0, -1.0, 102.0, 0, 0, 0, deg2rad(5.0), deg2rad(3.0), deg2rad(-5.0), 0, 0, 0;
  ObserverBank bank;  // zeroed estimates
  double last_state = 0.0, last_dist = 0.0;
  for (long k = 0; k < steps; ++k) {
    const double t = k * dt;
    const ObserverSample begin{s.segment<3>(0), s.segment<3>(3), known_p(t), s.segment<3>(9), known_a(t)};
    s = rk4_step(rhs, t, s, dt);
    const ObserverSample end{s.segment<3>(0), s.segment<3>(3), known_p(t + dt), s.segment<3>(9), known_a(t + dt)};
    bank = observer_advance(bank, begin, end, gains, dt, substeps);

    const auto [Dp, Da] = uncertainty_signals(t + dt);
    const double state_err = std::max({(bank.position_estimate() - end.position).lpNorm<Eigen::Infinity>(),
                                       (bank.velocity_estimate() - end.velocity).lpNorm<Eigen::Infinity>(),
                                       (bank.rate_estimate() - end.rates).lpNorm<Eigen::Infinity>()});
    const double dist_err =
        std::max((bank.position.col(2) - Dp / p.m).cwiseAbs().cwiseQuotient(peak_p).maxCoeff(),
                 (bank.attitude.col(1) - Da.cwiseQuotient(p.J)).cwiseAbs().cwiseQuotient(peak_a).maxCoeff());
    if (state_err >= 1e-3) last_state = t + dt;
    if (dist_err >= 0.02) last_dist = t + dt;
  }

  const auto [bound_p, bound_a] = disturbance_rate_bounds(p.m, p.J, 1.0);
  const GainReport report = validate_gains(gains, bound_p, bound_a);
  const LyapunovCertificates cert = lyapunov_certificates(gains);
  const Eigen::Vector3cd roots = report.position_roots;
  const double root_err = std::max({std::abs(roots(0) - std::complex<double>(-3.0, 0.0)),
                                    std::abs(roots(1) - std::complex<double>(-2.0, 0.0)),
                                    std::abs(roots(2) - std::complex<double>(-1.0, 0.0))});
  return {at_most("state estimates settled below 1e-3 by (s)", last_state, settle_limit,
                  "must then hold for the remaining 30 s"),
          at_most("disturbance estimates settled within 2% of peak by (s)", last_dist, settle_limit),
          at_most("(6, 11, 6) roots vs {-1, -2, -3}", root_err, 1e-9),
          is_true("gain validation against the disturbance-rate bounds", report.pass),
          at_most("-min eig P_p", -cert.eig_p.minCoeff(), 0.0),
          at_most("-min eig P_a", -cert.eig_a.minCoeff(), 0.0)};
}

// ---------------------------------------------------------------------------
// 6. Closed-loop error dynamics after the observers have settled

ScenarioConfig hover_hold_config(const AircraftParams& p) {
  ScenarioConfig c = hover_to_level_scenario();
  c.name = "hover_hold";
  c.reference.profile.t_0 = 1e9;  // profile at rest
  c.reference.V_start = 0.0;
  c.reference.V_end = 0.0;
  c.reference.attitude = Vec3d::Zero();
  c.initial = RigidState{};
  c.initial.x_p = c.reference.x0;
  c.initial_thrusts = trim_hover(p).T;
  return c;
}

// e(t) of e'' = -a e - b e' from (e0, e0').
double second_order(double a, double b, double e0, double de0, double t) {
  Mat2d A;
  A << 0.0, 1.0, -a, -b;
  const Mat2d E = (A * t).exp();
  return E(0, 0) * e0 + E(0, 1) * de0;
}

struct Transient {
  double worst = 0.0;  // max |e - e_analytic|
  double scale = 0.0;  // max |e_analytic|
  double ratio() const { return worst / scale; }
};

std::vector<Check> linear_equivalence_checks() {
  const AircraftParams p = reference_aircraft();
  const double t_step = 8.0, window = 10.0;
  const ControllerGains g;
  std::vector<Check> out;

  // error(record) and its rate, per channel
  using Channel = std::function<std::pair<double, double>(const StepRecord&)>;
  auto measure = [&](ReferenceStep step, double a, double b, const Channel& channel) {
    ScenarioConfig c = hover_hold_config(p);
    c.reference.step = step;
    c.t_end = t_step + window;
    Transient tr;
    bool started = false;
    double e0 = 0.0, de0 = 0.0;
    const ScenarioResult r = run_scenario(c, p, [&](const StepRecord& rec) {
      if (rec.t < t_step - 1e-9) return;
      const auto [e, de] = channel(rec);
      if (!started) {
        e0 = e;
        de0 = de;
        started = true;
      }
      const double ref = second_order(a, b, e0, de0, rec.t - t_step);
      tr.worst = std::max(tr.worst, std::abs(e - ref));
      tr.scale = std::max(tr.scale, std::abs(ref));
    });
    if (!r.summary.completed) throw IntegrationError("hover hold aborted: " + r.summary.abort_reason);
    return tr;
  };

  ReferenceStep att;
  att.time = t_step;
  att.attitude = Vec3d(0.05, 0.05, 0.05);
  for (int axis = 0; axis < 3; ++axis) {
    const Transient tr = measure(att, g.k1, g.k2, [axis](const StepRecord& rec) {
      return std::pair{rec.state.x_a(axis) - rec.reference.att(axis), rec.state.w_a(axis) - rec.reference.att_rate(axis)};
    });
    static const char* names[] = {"roll", "pitch", "yaw"};
    out.push_back(at_most(fmt::format("{} error vs analytic, relative L-inf", names[axis]), tr.ratio(), 0.01));
  }

  ReferenceStep pos;
  pos.time = t_step;
  pos.position = Vec3d(0.0, 0.0, 1.0);
  const Transient z = measure(pos, g.k3, g.k4, [](const StepRecord& rec) {
    return std::pair{rec.state.x_p.z() - rec.reference.x.z(), rec.state.v_p.z() - rec.reference.v.z()};
  });
  out.push_back(at_most("altitude error vs analytic, relative L-inf", z.ratio(), 0.01,
                        "horizontal position is not actuated with the attitude held"));

  ReferenceStep tilt;
  tilt.time = t_step;
  tilt.beta = 0.1;
  const Transient beta = measure(tilt, g.k5, g.k6, [](const StepRecord& rec) {
    return std::pair{rec.state.beta - rec.reference.tilt.beta, rec.state.beta_dot - rec.reference.tilt.beta_dot};
  });
  out.push_back(at_most("tilt error vs analytic, relative L-inf", beta.ratio(), 0.01));
  return out;
}

// ---------------------------------------------------------------------------
// 7, 8. Transition scenarios

std::vector<Check> hover_to_level_checks() {
  const AircraftParams p = reference_aircraft();
  const ScenarioConfig c = hover_to_level_scenario();
  const ScenarioSummary s = run_scenario(c, p).summary;
  return {is_true("run completed", s.completed, s.abort_reason),
          within("t at which beta reaches pi/2 (s)", s.t_reach, 10.0, 0.05),
          within("forward speed at t_end (m/s)", s.final_forward_speed, 100.0, 1.0),
          at_most("max |Z - 100| (m)", s.max_altitude_error, 2.0),
          at_most("|Z - 100| at t_end (m)", std::abs(s.final_altitude_error), 0.1),
          at_most("attitude error over the last 10 s (deg)", rad2deg(s.max_attitude_error_tail), 0.5),
          is_true("tilt feasibility at t_0 + t_1", s.feasibility.pass,
                  fmt::format("peak rate {:.4f} rad/s, stall bound {:.4f} rad/s", s.feasibility.peak_rate,
                              s.feasibility.bound))};
}

std::vector<Check> level_to_hover_checks() {
  const AircraftParams p = reference_aircraft();
  const ScenarioConfig c = level_to_hover_scenario();
  const ScenarioSummary s = run_scenario(c, p).summary;
  return {is_true("run completed", s.completed, s.abort_reason),
          at_most("speed at t_end (m/s)", s.final_speed, 0.5),
          at_most("|beta| at t_end (rad)", std::abs(s.final_state.beta), 1e-3),
          at_most("max |Z - 100| (m)", s.max_altitude_error, 2.0),
          at_most("|Z - 100| at t_end (m)", std::abs(s.final_altitude_error), 0.1)};
}

// ---------------------------------------------------------------------------
// 9. Cruise thrust

std::vector<Check> cruise_checks() {
  const AircraftParams p = reference_aircraft();
  const TrimResult hover = trim_hover(p);
  const TrimResult cruise = trim_cruise(p, 100.0);
  const double hover_mean = hover.T.mean();
  return {at_most("max cruise thrust / mean hover thrust", cruise.T.maxCoeff() / hover_mean, 0.5),
          {"mean cruise thrust per rotor (N), reported", true, cruise.T.mean(), "reported only",
           fmt::format("quoted figure 1917 N; difference {:+.0f} N from the trimmed model", cruise.T.mean() - 1917.0)}};
}

// ---------------------------------------------------------------------------
// 10. Determinism

std::vector<Check> determinism_checks() {
  const AircraftParams p = reference_aircraft();
  const ScenarioConfig c = hover_to_level_scenario();
  const std::string a = run_scenario(c, p).csv;
  const std::string b = run_scenario(c, p).csv;
  return {is_true("two runs give byte-identical CSV", a == b, fmt::format("{} bytes", a.size()))};
}

struct Criterion {
  const char* title;
  std::vector<Check> (*run)();
};

const std::map<int, Criterion>& criteria() {
  static const std::map<int, Criterion> table = {
      {1, {"sizing reproduction", sizing_checks}},
      {2, {"hover trim", hover_trim_checks}},
      {3, {"inflow solver", inflow_checks}},
      {4, {"thrust/torque closed forms vs quadrature", closed_form_checks}},
      {5, {"observer suite", observer_checks}},
      {6, {"closed-loop linear equivalence", linear_equivalence_checks}},
      {7, {"hover-to-level scenario", hover_to_level_checks}},
      {8, {"level-to-hover scenario", level_to_hover_checks}},
      {9, {"cruise-thrust sanity", cruise_checks}},
      {10, {"determinism", determinism_checks}},
  };
  return table;
}

}  // namespace

CriterionResult run_criterion(int id) {
  const auto it = criteria().find(id);
  if (it == criteria().end()) throw ConfigError(fmt::format("no acceptance criterion {}", id));
  CriterionResult r;
  r.id = id;
  r.title = it->second.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.checks = it->second.run();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::string> suite_names() { return {"sizing", "rotor", "observer", "control", "scenario", "all"}; }

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> suites = {
      {"sizing", {1}},
      {"rotor", {3, 4}},
      {"observer", {5}},
      {"control", {6}},
      {"scenario", {2, 7, 8, 9, 10}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
  };
  const auto it = suites.find(suite);
  if (it == suites.end()) throw ConfigError("unknown suite '" + suite + "'");
  return it->second;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id));
  return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass(); });
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    out += fmt::format("criterion {:>2}: {}  {} ({:.2f} s)\n", r.id, r.pass() ? "PASS" : "FAIL", r.title, r.seconds);
    if (!r.error.empty()) out += fmt::format("    error: {}\n", r.error);
    for (const Check& c : r.checks) {
      out += fmt::format("    [{}] {:<52} {:>14.6g}  {}", c.pass ? "ok" : "!!", c.name, c.value, c.bound);
      if (!c.note.empty()) out += "  (" + c.note + ")";
      out += "\n";
    }
  }
  return out;
}

std::string format_json(const std::vector<CriterionResult>& results) {
  nlohmann::json doc = nlohmann::json::array();
  for (const CriterionResult& r : results) {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : r.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"bound", c.bound}, {"note", c.note}});
    }
    nlohmann::json entry = {{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"seconds", r.seconds},
                            {"checks", checks}};
    if (!r.error.empty()) entry["error"] = r.error;
    doc.push_back(entry);
  }
  return doc.dump(2) + "\n";
}

}  // namespace tiltrotor
