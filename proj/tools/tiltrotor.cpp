// Command-line front end: sizing, trim, scenario runs and verification.
#include "tiltrotor/errors.hpp"
#include "tiltrotor/params.hpp"
#include "tiltrotor/scenario.hpp"
#include "tiltrotor/sizing.hpp"
#include "tiltrotor/trim.hpp"
#include "tiltrotor/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace tr = tiltrotor;

namespace {

tr::AircraftParams load_aircraft(const std::string& path) {
  return path.empty() ? tr::reference_aircraft() : tr::load_params(path);
}

int cmd_size(const std::string& config) {
  const tr::AircraftParams p = load_aircraft(config);
  const tr::SizingResult s = tr::size(p.design);
  fmt::print("R: {:.4f}  # rotor radius, m\n", s.R);
  fmt::print("b: {:.4f}  # blade chord, m\n", s.b);
  fmt::print("p: {}  # blades per rotor\n", s.p);
  fmt::print("T_e: {:.1f}  # rated thrust per rotor, N\n", s.T_e);
  fmt::print("S_w: {:.4f}  # fixed-wing area, m^2\n", s.S_w);
  fmt::print("l_w: {:.4f}  # fixed-wing span, m\n", s.l_w);
  fmt::print("c_w: {:.4f}  # fixed-wing chord, m\n", s.c_w);
  fmt::print("S_fi: {:.4f}  # area of one free wing, m^2\n", s.S_fi);
  fmt::print("C_T_opt: {:.6f}\n", s.C_T_opt);
  return 0;
}

void print_trim(const char* name, const tr::TrimResult& t) {
  fmt::print("{}:\n", name);
  fmt::print("  T: [{:.4f}, {:.4f}, {:.4f}, {:.4f}]\n", t.T(0), t.T(1), t.T(2), t.T(3));
  fmt::print("  T_total: {:.4f}\n", t.T.sum());
  fmt::print("  theta_deg: {:.4f}\n", tr::rad2deg(t.theta));
  fmt::print("  delta_deg: {:.4f}\n", tr::rad2deg(t.delta));
  fmt::print("  force_residual: {:.3e}\n", t.force_residual);
  fmt::print("  moment_residual: {:.3e}\n", t.moment_residual);
  fmt::print("  iterations: {}\n", t.iterations);
}

int cmd_trim(const std::string& config, const std::vector<double>& speeds) {
  const tr::AircraftParams p = load_aircraft(config);
  print_trim("hover", tr::trim_hover(p));
  for (double V : speeds) print_trim(fmt::format("cruise_{:g}", V).c_str(), tr::trim_cruise(p, V));
  return 0;
}

struct RunOptions {
  std::string scenario;
  std::string config;
  std::string out;
  std::optional<double> dt, t_end, disturbance_scale;
  std::optional<unsigned long> seed;
};

int cmd_run(const RunOptions& o) {
  tr::ScenarioConfig c = tr::load_scenario(o.scenario);
  if (o.dt) c.dt = *o.dt;
  if (o.t_end) c.t_end = *o.t_end;
  if (o.disturbance_scale) c.disturbance.scale = *o.disturbance_scale;
  if (o.seed) c.seed = *o.seed;
  if (!o.out.empty()) {
    c.csv_path = o.out;
    c.summary_path = std::filesystem::path(o.out).replace_extension(".summary.yaml").string();
  }
  if (c.csv_path.empty()) c.csv_path = c.name + ".csv";
  if (c.summary_path.empty()) c.summary_path = std::filesystem::path(c.csv_path).replace_extension(".summary.yaml").string();
  tr::validate(c);

  const tr::AircraftParams p = load_aircraft(!o.config.empty() ? o.config : c.params_path);
  const tr::ScenarioResult r = tr::run_scenario(c, p);
  tr::write_outputs(c, r);
  std::cout << tr::summary_yaml(r.summary);
  if (!r.summary.completed) {
    std::cerr << "error: integration aborted at step " << r.summary.abort_step << ": " << r.summary.abort_reason
              << "\n";
    return 3;
  }
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& json_path) {
  const auto results = tr::run_criteria(tr::suite_criteria(suite));
  std::cout << tr::format_table(results);
  if (!json_path.empty()) std::ofstream(json_path) << tr::format_json(results);
  return tr::all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quad tilt-rotor transition toolkit"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "aircraft parameter file (YAML); default is the reference aircraft");

  auto* size = app.add_subcommand("size", "conceptual sizing from the design section");

  auto* trim = app.add_subcommand("trim", "hover and cruise equilibria");
  std::vector<double> speeds{100.0};
  trim->add_option("--speed", speeds, "cruise speeds, m/s");

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "simulate a transition scenario");
  run->add_option("scenario", run_opts.scenario, "scenario file (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--dt", run_opts.dt, "integration step, s");
  run->add_option("--t-end", run_opts.t_end, "final time, s");
  run->add_option("--out", run_opts.out, "CSV path; the summary goes beside it");
  run->add_option("--disturbance-scale", run_opts.disturbance_scale, "scale of the lumped uncertainty signals");
  run->add_option("--seed", run_opts.seed, "reserved; runs are deterministic");

  std::string suite = "all";
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "run acceptance checks");
  verify->add_option("suite", suite, "sizing | rotor | observer | control | scenario | all")
      ->check(CLI::IsMember(tr::suite_names()));
  verify->add_option("--json", json_path, "also write the machine-readable report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*size) return cmd_size(config);
    if (*trim) return cmd_trim(config, speeds);
    if (*run) {
      run_opts.config = config;
      return cmd_run(run_opts);
    }
    if (*verify) return cmd_verify(suite, json_path);
  } catch (const tr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tr::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
