#include "tiltrotor/errors.hpp"
#include "tiltrotor/scenario.hpp"
#include "tiltrotor/trim.hpp"

#include <gtest/gtest.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tiltrotor;

namespace {

const std::string kScenarios = std::string(TILTROTOR_SOURCE_DIR) + "/scenarios";

// Trimmed hover at the reference point with a short horizon.
ScenarioConfig hover_hold(double t_end) {
  const AircraftParams p = reference_aircraft();
  const TrimResult trim = trim_hover(p);
  ScenarioConfig c = hover_to_level_scenario();
  c.reference.profile.t_0 = 1e9;
  c.reference.V_end = 0.0;
  c.reference.attitude = Vec3d::Zero();
  c.initial = trim.state;
  c.initial.x_p = c.reference.x0;
  c.initial_thrusts = trim.T;
  c.t_end = t_end;
  return c;
}

double max_altitude_error(const ScenarioConfig& c) {
  double worst = 0.0;
  run_scenario(c, reference_aircraft(), [&](const StepRecord& r) {
    worst = std::max(worst, std::abs(r.state.x_p.z() - r.reference.x.z()));
  });
  return worst;
}

}  // namespace

TEST(ScenarioConfig, DirectionDefaults) {
  const ScenarioConfig h = parse_scenario("direction: hover_to_level\n");
  EXPECT_EQ(h.reference.profile.direction, TiltDirection::Forward);
  EXPECT_EQ(h.initial.beta, 0.0);
  const ScenarioConfig l = parse_scenario("direction: level_to_hover\n");
  EXPECT_EQ(l.reference.profile.direction, TiltDirection::Backward);
  EXPECT_NEAR(l.initial.beta, kPi / 2.0, 1e-15);
  EXPECT_EQ(l.reference.V_start, 100.0);
  EXPECT_EQ(l.reference.V_end, 0.0);
}

TEST(ScenarioConfig, Overrides) {
  const ScenarioConfig c = parse_scenario(
      "name: custom\n"
      "params: ../config/table1.yaml\n"
      "reference: {attitude_deg: [0, 2, 0], t_1: 4, step: {time: 3, position: [0, 0, 1]}}\n"
      "integration: {dt: 0.002, t_end: 5}\n"
      "observer: {substeps: 5, init: zero}\n"
      "controller: {k1: 6, T_max: 12000}\n"
      "output: {csv: out/a.csv}\n",
      "/base/dir");
  EXPECT_EQ(c.name, "custom");
  EXPECT_EQ(c.params_path, "/base/config/table1.yaml");
  EXPECT_NEAR(c.reference.attitude.y(), deg2rad(2.0), 1e-15);
  EXPECT_EQ(c.reference.profile.t_1, 4.0);
  EXPECT_EQ(c.reference.step.time, 3.0);
  EXPECT_EQ(c.reference.step.position, Vec3d(0, 0, 1));
  EXPECT_EQ(c.dt, 0.002);
  EXPECT_EQ(c.observer_substeps, 5);
  EXPECT_EQ(c.observer_init, ObserverInit::Zero);
  EXPECT_EQ(c.controller.gains.k1, 6.0);
  EXPECT_EQ(c.T_max, 12000.0);
  EXPECT_EQ(c.csv_path, "/base/dir/out/a.csv");
}

TEST(ScenarioConfig, Errors) {
  EXPECT_THROW(parse_scenario("direction: sideways\n"), ConfigError);
  EXPECT_THROW(parse_scenario("- 1\n- 2\n"), ConfigError);
  EXPECT_THROW(parse_scenario("integration: {dt: [1, 2]}\n"), ConfigError);
  EXPECT_THROW(parse_scenario("observer: {init: warm}\n"), ConfigError);
  EXPECT_THROW(parse_scenario("reference: {step: {position: [0, 0, 1]}}\n"), ConfigError);
  EXPECT_THROW(parse_scenario("initial: {thrusts: [1, 2, 3]}\n"), ConfigError);
  EXPECT_THROW(parse_scenario("integration: {dt: -0.001}\n"), ValidationError);
  EXPECT_THROW(parse_scenario("initial: {beta: 2.0}\n"), ValidationError);
  EXPECT_THROW(parse_scenario("initial: {attitude_deg: [0, 90, 0]}\n"), ValidationError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.yaml"), ConfigError);
}

TEST(ScenarioConfig, ShippedFilesLoad) {
  for (const char* name : {"hover_to_level.yaml", "level_to_hover.yaml"}) {
    const ScenarioConfig c = load_scenario(kScenarios + "/" + name);
    EXPECT_TRUE(std::filesystem::exists(c.params_path)) << c.params_path;
    EXPECT_FALSE(c.csv_path.empty());
  }
}

TEST(ScenarioRun, CsvLayout) {
  ScenarioConfig c = hover_hold(0.5);
  const ScenarioResult r = run_scenario(c, reference_aircraft());
  std::istringstream in(r.csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ',') + 1, 28);
  EXPECT_EQ(line.rfind("t,X,Y,Z,", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 27);
    ++rows;
  }
  EXPECT_EQ(rows, 51);
  EXPECT_TRUE(r.summary.completed);
}

TEST(ScenarioRun, Deterministic) {
  const ScenarioConfig c = hover_hold(1.0);
  EXPECT_EQ(run_scenario(c, reference_aircraft()).csv, run_scenario(c, reference_aircraft()).csv);
}

TEST(ScenarioRun, DisturbanceScaleOrdersAltitudeError) {
  ScenarioConfig c = hover_hold(6.0);
  double last = -1.0;
  for (double scale : {0.0, 1.0, 2.0}) {
    c.disturbance.scale = scale;
    const double e = max_altitude_error(c);
    EXPECT_GT(e, last) << scale;
    last = e;
  }
}

TEST(ScenarioRun, DisturbanceScaleReachesPlant) {
  ScenarioConfig c = hover_hold(0.01);
  c.disturbance.gyroscopic = false;
  for (double scale : {0.0, 1.0, 2.0}) {
    c.disturbance.scale = scale;
    Vec3d first = Vec3d::Constant(-1.0);
    run_scenario(c, reference_aircraft(), [&](const StepRecord& r) {
      if (r.step == 0) first = r.Delta_p;
    });
    EXPECT_LE((first - scale * Vec3d(50, 100, 150)).norm(), 1e-12);
  }
}

TEST(ScenarioRun, ZeroObserverInitLosesHoverToLevel) {
  ScenarioConfig c = load_scenario(kScenarios + "/hover_to_level.yaml");
  c.observer_init = ObserverInit::Zero;
  c.t_end = 5.0;
  const ScenarioSummary s = run_scenario(c, load_params(c.params_path)).summary;
  EXPECT_FALSE(s.completed);
  EXPECT_NE(s.abort_reason.find("pitch"), std::string::npos) << s.abort_reason;
  EXPECT_GT(s.abort_step, 0);
}

TEST(ScenarioRun, OutputsWritten) {
  const auto dir = std::filesystem::temp_directory_path() / "tiltrotor_test_outputs";
  std::filesystem::remove_all(dir);
  ScenarioConfig c = hover_hold(0.2);
  c.csv_path = (dir / "nested" / "run.csv").string();
  c.summary_path = (dir / "nested" / "run.summary.yaml").string();
  const ScenarioResult r = run_scenario(c, reference_aircraft());
  write_outputs(c, r);
  std::ifstream csv(c.csv_path);
  std::stringstream ss;
  ss << csv.rdbuf();
  EXPECT_EQ(ss.str(), r.csv);
  const YAML::Node summary = YAML::LoadFile(c.summary_path);
  EXPECT_TRUE(summary["completed"].as<bool>());
  std::filesystem::remove_all(dir);
}
