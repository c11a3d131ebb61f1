#include "tiltrotor/errors.hpp"
#include "tiltrotor/params.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>
#include <string>

using namespace tiltrotor;

namespace {

const std::string kTable = std::string(TILTROTOR_SOURCE_DIR) + "/config/table1.yaml";

std::string reference_text() {
  std::ifstream in(kTable);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops every line whose key (after indentation) is `key`.
std::string without_key(const std::string& text, const std::string& key) {
  return std::regex_replace(text, std::regex("\n[ ]+" + key + ":[^\n]*"), "");
}

}  // namespace

TEST(LoadParams, ReferenceFile) {
  const AircraftParams p = load_params(kTable);
  EXPECT_EQ(p.m, 3313.0);
  EXPECT_EQ(p.J.z(), 400.0);
  EXPECT_EQ(p.rotor.p, 4);
  EXPECT_NEAR(p.wing.alpha_max, deg2rad(25.0), 1e-15);
  EXPECT_NEAR(p.rotor.delta_phi_star, deg2rad(-7.0), 1e-15);
}

TEST(LoadParams, MatchesBuiltInReference) {
  const AircraftParams a = load_params(kTable);
  const AircraftParams b = reference_aircraft();
  EXPECT_NEAR(a.rotor.R, b.rotor.R, 1e-12);
  EXPECT_NEAR(a.rotor.b_bar1, b.rotor.b_bar1, 1e-9);
  EXPECT_NEAR(a.wing.S_fi, b.wing.S_fi, 1e-12);
  EXPECT_NEAR(a.wing.l5, b.wing.l5, 1e-12);
  EXPECT_NEAR(a.rotor.Omega, b.rotor.Omega, 1e-6);
}

TEST(LoadParams, MissingMassIsNamed) {
  try {
    parse_params(without_key(reference_text(), "m"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'aircraft.m'"), std::string::npos) << e.what();
  }
}

TEST(LoadParams, RadiusDerivedWhenAbsent) {
  const AircraftParams p = parse_params(without_key(reference_text(), "R"));
  EXPECT_NEAR(p.rotor.R, 2.0966, 5e-4);
}

TEST(LoadParams, InvariantViolationNamesField) {
  const std::string text = std::regex_replace(reference_text(), std::regex("J_2: 220"), "J_2: -5");
  try {
    parse_params(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("J_2"), std::string::npos) << e.what();
  }
}

TEST(LoadParams, MissingFile) { EXPECT_THROW(load_params("/nonexistent/params.yaml"), ConfigError); }

TEST(DumpParams, Roundtrip) {
  const AircraftParams a = reference_aircraft();
  const AircraftParams b = parse_params(dump_params(a));
  EXPECT_EQ(b.m, a.m);
  EXPECT_EQ(b.J, a.J);
  EXPECT_NEAR(b.rotor.R, a.rotor.R, 1e-12);
  EXPECT_NEAR(b.rotor.Omega, a.rotor.Omega, 1e-9 * a.rotor.Omega);
  EXPECT_NEAR(b.wing.S_ri, a.wing.S_ri, 1e-12);
  EXPECT_NEAR(b.wing.alpha_max, a.wing.alpha_max, 1e-12);
  EXPECT_EQ(dump_params(b), dump_params(a));
}
