#include "gen.hpp"

#include "tiltrotor/errors.hpp"
#include "tiltrotor/sizing.hpp"
#include "tiltrotor/types.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tiltrotor;
using tiltrotor::testing::Gen;

TEST(RotorRadius, ReferenceAircraft) { EXPECT_NEAR(rotor_radius(3313.0, 60.0), 2.0966, 5e-4); }

TEST(RotorRadius, UnitRadiusInvertsFormula) { EXPECT_DOUBLE_EQ(rotor_radius(kPi * 60.0 * 4.0, 60.0), 1.0); }

TEST(RotorRadius, HigherDiskLoading) { EXPECT_NEAR(rotor_radius(3313.0, 129.63), 1.426, 5e-4); }

TEST(RotorRadius, RejectsNonPositiveInputs) {
  EXPECT_THROW(rotor_radius(0.0, 60.0), DomainError);
  EXPECT_THROW(rotor_radius(3313.0, -1.0), DomainError);
}

TEST(RotorRadius, TwoRotorRatio) {
  Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const double m = gen.uniform(100.0, 20000.0);
    const double DL = gen.uniform(10.0, 400.0);
    EXPECT_NEAR(rotor_radius(m, DL) / two_rotor_radius(m, DL), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(rotor_radius(m, DL) / std::sqrt(m / (2.0 * kPi * DL)), 1.0 / std::sqrt(2.0), 1e-15);
  }
}

TEST(RotorRadius, Monotone) {
  Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const double m = gen.uniform(100.0, 20000.0);
    const double DL = gen.uniform(10.0, 400.0);
    const double f = gen.uniform(1.001, 2.0);
    EXPECT_LT(rotor_radius(m, DL * f), rotor_radius(m, DL));
    EXPECT_GT(rotor_radius(m * f, DL), rotor_radius(m, DL));
  }
}

TEST(BladeGeometry, ReferenceRotor) {
  const BladeGeometry g = blade_geometry(2.0966, 13.0, 0.1);
  EXPECT_NEAR(g.b, 0.1613, 5e-5);
  EXPECT_EQ(g.p, 4);
}

TEST(BladeGeometry, HigherSolidityRoundsUp) {
  const BladeGeometry g = blade_geometry(2.0966, 13.0, 0.12);
  EXPECT_NEAR(g.b, 0.1613, 5e-5);
  EXPECT_EQ(g.p, 5);
}

TEST(BladeGeometry, SingleBladeRejected) {
  EXPECT_THROW(blade_geometry(1.0, 10.0, 0.1 / kPi), DesignError);
}

TEST(BladeGeometry, SolidityWithinRoundingSlack) {
  Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    const double R = gen.uniform(0.5, 8.0);
    const double rho_b = gen.uniform(8.0, 20.0);
    const double sigma = gen.uniform(0.05, 0.2);
    BladeGeometry g;
    try {
      g = blade_geometry(R, rho_b, sigma);
    } catch (const DesignError&) {
      continue;
    }
    const double achieved = g.p * g.b / (kPi * R);
    const double exact_count = sigma * kPi * R / g.b;
    EXPECT_LE(std::abs(achieved - sigma), solidity_rounding_slack(R, g.b) + 1e-15);
    EXPECT_LE(std::abs(achieved - sigma), sigma / (2.0 * exact_count) + 1e-15);
  }
}

TEST(WingGeometry, ReferenceAreas) {
  const WingGeometry w = wing_geometry(3313.0, 75.73, 45.0, 12.0, 12.3458);
  EXPECT_NEAR(w.S_w, 43.75, 5e-3);
  EXPECT_NEAR(w.l_w, 22.91, 5e-3);
  EXPECT_NEAR(w.c_w, 1.909, 5e-4);
  EXPECT_NEAR(w.S_fi, 4.3795, 5e-3);
}

TEST(WingGeometry, InfeasibleSplitRejected) { EXPECT_THROW(wing_geometry(1200.0, 120.0, 120.0, 12.0, 10.0), DesignError); }

TEST(WingGeometry, AllLiftOnFixedWing) {
  EXPECT_NEAR(wing_geometry(3313.0, 75.73, 75.73, 12.0, 0.0).S_fi, 0.0, 1e-12);
}

TEST(RatedThrust, Examples) {
  EXPECT_NEAR(rated_thrust(3313.0, std::sqrt(2.0)), 11479.0, 0.5);
  EXPECT_NEAR(rated_thrust(3313.0, 1.0), 8116.85, 1e-9);
  EXPECT_NEAR(rated_thrust(4.0, 1.0), 9.8, 1e-12);
}

TEST(OptimumThrustCoefficient, Examples) {
  EXPECT_NEAR(optimum_thrust_coefficient(0.1, 0.008, 1.0), 8.618e-3, 5e-7);
  EXPECT_NEAR(optimum_thrust_coefficient(0.1, 0.008, 0.1 * 0.008), 1.0, 1e-12);
  EXPECT_NEAR(optimum_thrust_coefficient(0.1, 0.008, 1.15), 7.851e-3, 5e-7);
  EXPECT_NEAR(optimum_thrust_coefficient(0.1, 0.008, 1.15), std::pow(0.1 * 0.008 / 1.15, 2.0 / 3.0), 1e-15);
}

TEST(Size, ReferenceTargets) {
  DesignTargets t;
  t.m = 3313.0;
  t.rho_mT = std::sqrt(2.0);
  t.rho_e = 6.0;
  t.m_e = 195.0;
  t.DL_QT = 60.0;
  t.rho_b = 13.0;
  t.sigma = 0.1;
  t.A_w = 12.0;
  t.WL_w = 75.72571429;
  t.WL_ws = 45.00514849;
  t.S_front = 12.3458;
  t.kappa = 1.15;
  t.C_d0 = 0.008;
  const SizingResult r = size(t);
  EXPECT_NEAR(r.R, 2.0966, 5e-4);
  EXPECT_EQ(r.p, 4);
  EXPECT_NEAR(r.S_w, 43.75, 1e-6);
  EXPECT_NEAR(r.S_fi, 4.3795, 1e-4);

  t.sigma = 0.5;
  EXPECT_THROW(size(t), ValidationError);
}
