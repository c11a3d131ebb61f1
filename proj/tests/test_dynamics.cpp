#include "gen.hpp"

#include "tiltrotor/dynamics.hpp"
#include "tiltrotor/errors.hpp"
#include "tiltrotor/frames.hpp"
#include "tiltrotor/integrator.hpp"
#include "tiltrotor/trim.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tiltrotor;
using tiltrotor::testing::Gen;

namespace {

DisturbanceModel quiet() {
  DisturbanceModel d;
  d.enabled = false;
  d.gyroscopic = false;
  return d;
}

}  // namespace

TEST(Frames, IdentityAtZero) {
  EXPECT_EQ(rotation_bg(0.0, 0.0, 0.0), Mat3d::Identity());
  EXPECT_EQ(rotation_beta(0.0), Mat3d::Identity());
}

TEST(Frames, RotationsAreOrthonormal) {
  Gen gen(41);
  for (int i = 0; i < 1000; ++i) {
    const Mat3d R = rotation_bg(gen.uniform(-kPi, kPi), gen.uniform(-1.5, 1.5), gen.uniform(-kPi, kPi));
    EXPECT_LE((R.transpose() * R - Mat3d::Identity()).norm(), 1e-14);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-14);
  }
}

TEST(Frames, PositivePitchRaisesNose) {
  const Vec3d nose = rotation_bg(0.0, 0.3, 0.0) * Vec3d::UnitX();
  EXPECT_NEAR(nose.z(), std::sin(0.3), 1e-15);
}

TEST(Frames, AirplaneModeThrustPointsForward) {
  const Vec3d v = rotation_beta(kPi / 2.0) * Vec3d::UnitZ();
  EXPECT_NEAR((v - Vec3d::UnitX()).norm(), 0.0, 1e-15);
}

TEST(Frames, ThrustDirectionUnitNorm) {
  Gen gen(42);
  for (int i = 0; i < 10000; ++i) {
    const Vec3d n = thrust_direction(gen.uniform(-kPi, kPi), gen.uniform(-1.5, 1.5), gen.uniform(-kPi, kPi),
                                     gen.uniform(0.0, kPi / 2.0));
    EXPECT_NEAR(n.norm(), 1.0, 1e-14);
  }
}

TEST(Forces, ThrustMagnitudeEqualsTotal) {
  const AircraftParams p = reference_aircraft();
  Gen gen(43);
  for (int i = 0; i < 200; ++i) {
    RigidState s;
    s.x_a = Vec3d(gen.uniform(-0.5, 0.5), gen.uniform(-0.5, 0.5), gen.uniform(-kPi, kPi));
    s.v_p = Vec3d(gen.uniform(0, 60), gen.uniform(-5, 5), gen.uniform(-5, 5));
    s.beta = gen.uniform(0.0, kPi / 2.0);
    ControlInput u;
    u.T = Vec4d(gen.uniform(0, 9000), gen.uniform(0, 9000), gen.uniform(0, 9000), gen.uniform(0, 9000));
    const PlantEvaluation e = evaluate_plant(s, u, p);
    EXPECT_NEAR(e.forces.u_p.norm(), u.T.sum(), 1e-9 * u.T.sum());
  }
}

TEST(Moments, DecompositionIdentity) {
  const AircraftParams p = reference_aircraft();
  Gen gen(44);
  for (int i = 0; i < 200; ++i) {
    RigidState s;
    s.v_p = Vec3d(gen.uniform(5, 60), 0.0, gen.uniform(-3, 3));
    s.beta = gen.uniform(0.0, kPi / 2.0);
    ControlInput u;
    u.T = Vec4d(gen.uniform(1000, 9000), gen.uniform(1000, 9000), gen.uniform(1000, 9000), gen.uniform(1000, 9000));
    u.delta = gen.uniform(-0.3, 0.3);
    const PlantEvaluation e = evaluate_plant(s, u, p);
    const MomentSet& m = e.moments;
    Vec4d Q;
    for (int k = 0; k < 4; ++k) Q(k) = e.loads.rotors[k].Q;
    const Vec3d expected = thrust_vector_moment(u.T, s.beta, p.wing) + reactive_torque(Q, s.beta) +
                           Vec3d(0.0, std::sin(s.beta) * m.u_as.y(), 0.0);
    EXPECT_LE((m.u_a - expected).norm(), 1e-9 * std::max(1.0, m.u_a.norm()));
    EXPECT_LE((m.u_a - (std::cos(s.beta) * m.u_ac + std::sin(s.beta) * m.u_as)).norm(), 1e-15 * m.u_a.norm() + 1e-12);
  }
}

TEST(StateDerivative, FreeFall) {
  const AircraftParams p = reference_aircraft();
  const Derivative d = state_derivative(RigidState{}, ControlInput{}, 0.0, p, quiet());
  EXPECT_NEAR((d.xdot.segment<3>(3) - Vec3d(0, 0, -p.g)).norm(), 0.0, 1e-12);
  EXPECT_NEAR(d.xdot.segment<3>(9).norm(), 0.0, 1e-12);
}

TEST(StateDerivative, TiltTorqueSign) {
  const AircraftParams p = reference_aircraft();
  ControlInput u;
  u.M_beta = -p.J_4 * 0.7;
  EXPECT_NEAR(state_derivative(RigidState{}, u, 0.0, p, quiet()).xdot(13), 0.7, 1e-15);
}

TEST(StateDerivative, PitchGuardAborts) {
  RigidState s;
  s.x_a.y() = kPi / 2.0 - 1e-4;
  EXPECT_THROW(state_derivative(s, ControlInput{}, 0.0, reference_aircraft(), quiet()), IntegrationError);
}

TEST(StateDerivative, HoverTrimIsEquilibrium) {
  const AircraftParams p = reference_aircraft();
  const TrimResult trim = trim_hover(p);
  const Derivative d = state_derivative(trim.state, trim.input, 0.0, p, quiet());
  EXPECT_LE(d.xdot.segment<3>(3).norm(), 1e-9);
  EXPECT_LE(d.xdot.segment<3>(9).norm(), 1e-9);
}

TEST(StateDerivative, TrimmedHoverHoldsState) {
  const AircraftParams p = reference_aircraft();
  const TrimResult trim = trim_hover(p);
  const DisturbanceModel dist = quiet();
  const auto f = [&](double t, const RigidState::Vector& x) {
    return state_derivative(RigidState::unpack(x), trim.input, t, p, dist).xdot;
  };
  const RigidState::Vector x0 = trim.state.pack();
  double drift = 0.0;
  rk4_integrate(f, 0.0, x0, 1e-3, 10.0,
                [&](double, const RigidState::Vector& x) { drift = std::max(drift, (x - x0).lpNorm<Eigen::Infinity>()); });
  EXPECT_LE(drift, 1e-6);
}

TEST(Uncertainty, InitialValues) {
  const auto [p, a] = uncertainty_signals(0.0);
  EXPECT_NEAR((p - Vec3d(50, 100, 150)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((a - Vec3d(16, 10, 10)).norm(), 0.0, 1e-12);
}

TEST(Uncertainty, DecaysToZero) {
  const auto [p, a] = uncertainty_signals(60.0);
  EXPECT_LE(p.norm(), 1e-9);
  EXPECT_LE(a.norm(), 1e-9);
}

TEST(Uncertainty, RatesMatchFiniteDifferences) {
  Gen gen(45);
  for (int i = 0; i < 50; ++i) {
    const double t = gen.uniform(0.0, 10.0), h = 1e-6;
    const auto [p1, a1] = uncertainty_signals(t + h);
    const auto [p0, a0] = uncertainty_signals(t - h);
    const auto [dp, da] = uncertainty_signal_rates(t);
    EXPECT_LE(((p1 - p0) / (2 * h) - dp).norm(), 1e-5);
    EXPECT_LE(((a1 - a0) / (2 * h) - da).norm(), 1e-5);
  }
}

TEST(Integrator, HarmonicOscillatorEnergy) {
  const auto f = [](double, const Vec2d& x) { return Vec2d(x(1), -x(0)); };
  double drift = 0.0;
  rk4_integrate(f, 0.0, Vec2d(1.0, 0.0), 1e-3, 100.0,
                [&](double, const Vec2d& x) { drift = std::max(drift, std::abs(0.5 * x.squaredNorm() - 0.5)); });
  EXPECT_LE(drift, 1e-8);
}

TEST(Integrator, FourthOrderConvergence) {
  const auto f = [](double, const Vec2d& x) { return Vec2d(x(1), -x(0)); };
  const auto error = [&](double dt) {
    const Vec2d x = rk4_integrate(f, 0.0, Vec2d(1.0, 0.0), dt, 10.0, [](double, const Vec2d&) {});
    return (x - Vec2d(std::cos(10.0), -std::sin(10.0))).norm();
  };
  const double ratio = error(0.02) / error(0.01);
  EXPECT_NEAR(ratio, 16.0, 0.5);
}
