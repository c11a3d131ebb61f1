#include "gen.hpp"

#include "tiltrotor/airframe_aero.hpp"
#include "tiltrotor/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tiltrotor;
using tiltrotor::testing::Gen;

TEST(OswaldFactor, Examples) {
  EXPECT_NEAR(oswald_factor(4.0), 1.1144, 5e-4);
  EXPECT_NEAR(oswald_factor(12.0), 0.886, 5e-4);
  EXPECT_NEAR(oswald_factor(1e-12), 1.32, 1e-6);
}

TEST(FreeWing, PureDownwashHasNoLift) {
  const WingParams wp;
  const auto f = free_wing_forces(10.0, 0.0, 0.0, 0.0, 0.0, wp, 1.225);
  EXPECT_EQ(f.alpha_f, 0.0);
  EXPECT_EQ(f.L, 0.0);
  EXPECT_FALSE(f.stalled);
}

TEST(FreeWing, LiftAtKnownIncidence) {
  const WingParams wp;
  const double V = 20.0, a = 0.1;
  const auto f = free_wing_forces(V * std::cos(a), V * std::sin(a), 0.0, 0.0, 0.0, wp, 1.225);
  EXPECT_NEAR(f.alpha_f, a, 1e-12);
  EXPECT_NEAR(f.V_rt, V, 1e-12);
  EXPECT_NEAR(f.L, 0.5 * 1.225 * 4.3795 * 0.05 * 400.0, 1e-9);
  EXPECT_NEAR(f.L, 53.65, 5e-3);
}

TEST(FreeWing, LiftSplitsIntoIncidenceAndFlap) {
  const WingParams wp;
  Gen gen(31);
  for (int i = 0; i < 100; ++i) {
    const auto f = free_wing_forces(gen.uniform(1.0, 20.0), gen.uniform(-10.0, 10.0), gen.uniform(-5.0, 5.0),
                                    gen.uniform(-0.3, 0.3), gen.uniform(-0.5, 0.5), wp, 1.225);
    EXPECT_NEAR(f.L_alpha + f.L_flap, f.L, 1e-9 * std::max(1.0, std::abs(f.L)));
  }
}

TEST(FreeWing, EdgewiseFlowStalls) {
  const WingParams wp;
  const auto f = free_wing_forces(0.0, 5.0, 0.0, 0.0, 0.0, wp, 1.225);
  EXPECT_NEAR(f.alpha_f, kPi / 2.0, 1e-15);
  EXPECT_TRUE(f.stalled);
}

TEST(StallRateLimit, SymmetricAtZeroEdgewiseSpeed) {
  const WingParams wp;
  EXPECT_NEAR(wp.tilt_airflow_arm(), 2.2611, 5e-5);
  const double expected = 10.0 * std::tan(deg2rad(25.0)) / 2.2611;
  EXPECT_NEAR(expected, 2.0623, 5e-5);
  EXPECT_NEAR(stall_rate_limit(10.0, 0.0, 0.0, TiltDirection::Forward, wp), expected, 5e-5);
  EXPECT_NEAR(stall_rate_limit(10.0, 0.0, 0.0, TiltDirection::Backward, wp), expected, 5e-5);
}

TEST(StallRateLimit, BackwardBoundaryInfeasible) {
  const WingParams wp;
  EXPECT_THROW(stall_rate_limit(10.0, 0.0, 10.0 * std::tan(wp.alpha_max), TiltDirection::Backward, wp),
               InfeasibleTiltError);
  EXPECT_THROW(stall_rate_limit(-1.0, 0.5, 0.0, TiltDirection::Forward, wp), DomainError);
}

TEST(StallRateLimit, BackwardTighterWithEdgewiseSpeed) {
  const WingParams wp;
  EXPECT_LT(stall_rate_limit(10.0, 0.0, 2.0, TiltDirection::Backward, wp),
            stall_rate_limit(10.0, 0.0, 2.0, TiltDirection::Forward, wp));
}

TEST(FixedWing, ZeroLiftIncidence) {
  const WingParams wp;
  const double alpha = -wp.C_w0 / wp.C_w_alpha;
  EXPECT_NEAR(alpha, -0.64, 1e-12);
  const auto f = fixed_wing_forces(50.0, alpha, 0.0, 0.0, wp, 1.225);
  EXPECT_NEAR(f.L5, 0.0, 1e-9);
  EXPECT_NEAR(f.D5, 0.5 * 1.225 * wp.S_ri * wp.C_Dw0 * 2500.0, 1e-9);
}

TEST(FixedWing, CruiseLiftPerSide) {
  const auto f = fixed_wing_forces(100.0, 0.0, 0.0, 0.0, WingParams{}, 1.225);
  EXPECT_NEAR(f.L5, 42875.0, 1e-6);
  EXPECT_NEAR(f.L6, 42875.0, 1e-6);
}

TEST(Gyroscopic, Examples) {
  const Vec3d g = gyroscopic_moment(0.0, 0.3, Vec4d(100, 100, 100, 90), 8.5);
  EXPECT_NEAR(g.x(), 25.5, 1e-12);
  EXPECT_EQ(g.y(), 0.0);
  EXPECT_NEAR(g.z(), 0.0, 1e-15);
  EXPECT_EQ(gyroscopic_moment(0.4, 0.3, Vec4d(Vec4d::Constant(95.0)), 8.5), Vec3d::Zero());
  EXPECT_EQ(gyroscopic_moment(0.4, 0.0, Vec4d(100, 100, 100, 90), 8.5).norm(), 0.0);
}

TEST(Gyroscopic, CounterRotatingPairsCancel) {
  Gen gen(32);
  for (int i = 0; i < 100; ++i) {
    const double w = gen.uniform(50.0, 150.0);
    EXPECT_EQ(gyroscopic_moment(gen.uniform(0.0, kPi / 2), gen.uniform(-1.0, 1.0), Vec4d(w, w, w, w), 8.5).norm(), 0.0);
  }
}

TEST(ThrustVectorMoment, EqualHoverThrustsPitchNoseDown) {
  const Vec3d tau = thrust_vector_moment(Vec4d(Vec4d::Constant(8117.0)), 0.0, WingParams{});
  EXPECT_NEAR(tau.x(), 0.0, 1e-9);
  EXPECT_NEAR(tau.y(), 2.0 * 8117.0 * (3.49 - 5.68), 1e-9);
  EXPECT_NEAR(tau.y(), -35552.0, 1.0);
  EXPECT_NEAR(tau.z(), 0.0, 1e-9);
}

TEST(ThrustVectorMoment, AirplaneModeDropsFirstTwoRows) {
  const Vec3d tau = thrust_vector_moment(Vec4d(9000, 8000, 7000, 6000), kPi / 2.0, WingParams{});
  EXPECT_NEAR(tau.x(), 0.0, 1e-9);
  EXPECT_NEAR(tau.y(), 0.0, 1e-9);
  EXPECT_NE(tau.z(), 0.0);
}

TEST(ReactiveTorque, Examples) {
  EXPECT_EQ(reactive_torque(Vec4d(Vec4d::Constant(300.0)), 0.7).norm(), 0.0);
  const Vec3d hover = reactive_torque(Vec4d(10, 8, 10, 8), 0.0);
  EXPECT_NEAR((hover - Vec3d(0, 0, 4)).norm(), 0.0, 1e-15);
  const Vec3d airplane = reactive_torque(Vec4d(10, 8, 10, 8), kPi / 2.0);
  EXPECT_NEAR((airplane - Vec3d(4, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(ReactiveTorque, YawComponentIsCosineWeighted) {
  Gen gen(33);
  for (int i = 0; i < 100; ++i) {
    const Vec4d Q(gen.uniform(0, 500), gen.uniform(0, 500), gen.uniform(0, 500), gen.uniform(0, 500));
    const double beta = gen.uniform(0.0, kPi / 2.0);
    EXPECT_EQ(reactive_torque(Q, beta).z(), std::cos(beta) * alternating_sum(Q));
  }
}

TEST(WingMoments, BalancedCasesVanish) {
  const WingParams wp;
  EXPECT_EQ(fixed_wing_moment(1000.0, 1000.0, 0.1, wp).norm(), 0.0);
  const double front = 500.0;
  const double rear = front * wp.l4 / wp.l3;
  EXPECT_NEAR(free_wing_moment(Vec4d(front, front, rear, rear), 0.6, wp).norm(), 0.0, 1e-10);
}

TEST(WingMoments, MirrorNegatesRollAndYaw) {
  const WingParams wp;
  const Vec3d a = fixed_wing_moment(1200.0, 800.0, 0.1, wp);
  const Vec3d b = fixed_wing_moment(800.0, 1200.0, 0.1, wp);
  EXPECT_NEAR(a.x(), -b.x(), 1e-12);
  EXPECT_NEAR(a.z(), -b.z(), 1e-12);
  EXPECT_EQ(a.y(), b.y());

  const Vec3d c = free_wing_moment(Vec4d(500, 700, 300, 200), 0.4, wp);
  const Vec3d d = free_wing_moment(Vec4d(700, 500, 200, 300), 0.4, wp);
  EXPECT_NEAR(c.x(), -d.x(), 1e-9);
  EXPECT_NEAR(c.z(), -d.z(), 1e-9);
  EXPECT_NEAR(c.y(), d.y(), 1e-9);
}

TEST(WingMoments, TiltReaction) {
  EXPECT_NEAR(tilt_reaction_moment(50.0, kPi / 50.0).y(), 3.14, 5e-3);
}
