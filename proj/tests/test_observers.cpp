#include "tiltrotor/dynamics.hpp"
#include "tiltrotor/observers.hpp"
#include "tiltrotor/params.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tiltrotor;

namespace {

constexpr double kDt = 1e-3;
constexpr int kSubsteps = 20;

struct Errors {
  double position = 0.0, velocity = 0.0, disturbance = 0.0;
};

// Double integrator x'' = d per axis, started at rest from x0; observers
// start at zero. Returns the worst errors over [t_from, t_to].
Errors constant_disturbance_run(const Vec3d& d, double t_from, double t_to, ObserverBank* final = nullptr) {
  const Vec3d x0(1.0, -2.0, 3.0);
  const auto sample = [&](double t) {
    ObserverSample s;
    s.position = x0 + 0.5 * d * t * t;
    s.velocity = d * t;
    s.rates = d * t;
    return s;
  };
  ObserverBank bank;
  Errors worst;
  const ObserverGains gains;
  const long steps = static_cast<long>(t_to / kDt + 0.5);
  for (long k = 0; k < steps; ++k) {
    const double t = k * kDt;
    bank = observer_advance(bank, sample(t), sample(t + kDt), gains, kDt, kSubsteps);
    const double t1 = t + kDt;
    if (t1 < t_from) continue;
    const ObserverSample s = sample(t1);
    worst.position = std::max(worst.position, (bank.position_estimate() - s.position).lpNorm<Eigen::Infinity>());
    worst.velocity = std::max(worst.velocity, (bank.velocity_estimate() - s.velocity).lpNorm<Eigen::Infinity>());
    worst.disturbance = std::max(worst.disturbance, (bank.position.col(2) - d).lpNorm<Eigen::Infinity>());
    worst.disturbance = std::max(worst.disturbance, (bank.attitude.col(1) - d).lpNorm<Eigen::Infinity>());
  }
  if (final) *final = bank;
  return worst;
}

}  // namespace

TEST(PositionObserver, EquilibriumAtTruth) {
  ObserverBank bank;
  bank.position.col(0) = Vec3d(5.0, -1.0, 100.0);
  const ObserverBank start = bank;
  for (int k = 0; k < 1000; ++k)
    bank = position_observer_step(bank, Vec3d(5.0, -1.0, 100.0), Vec3d::Zero(), ObserverGains{}, kDt, 10);
  EXPECT_EQ(bank.position, start.position);
}

TEST(AttitudeObserver, EquilibriumAtTruth) {
  ObserverBank bank;
  bank.attitude.col(0) = Vec3d(0.1, -0.2, 0.3);
  const ObserverBank start = bank;
  for (int k = 0; k < 1000; ++k)
    bank = attitude_observer_step(bank, Vec3d(0.1, -0.2, 0.3), Vec3d::Zero(), ObserverGains{}, kDt, 10);
  EXPECT_EQ(bank.attitude, start.attitude);
}

TEST(Observers, ConstantDisturbanceConverges) {
  const Errors e = constant_disturbance_run(Vec3d(0.5, -1.0, 2.0), 10.0, 15.0);
  EXPECT_LE(e.position, 1e-3);
  EXPECT_LE(e.velocity, 1e-3);
  EXPECT_LE(e.disturbance, 1e-3);
}

TEST(Observers, DisturbanceEstimateScalesWithDisturbance) {
  const Vec3d d(0.4, -0.3, 0.2);
  ObserverBank base;
  constant_disturbance_run(d, 15.0, 15.0, &base);
  for (double c : {0.5, 2.0, 3.0}) {
    ObserverBank scaled;
    constant_disturbance_run(c * d, 15.0, 15.0, &scaled);
    EXPECT_LE((scaled.position.col(2) - c * base.position.col(2)).lpNorm<Eigen::Infinity>(), 1e-3 * c);
    EXPECT_LE((scaled.attitude.col(1) - c * base.attitude.col(1)).lpNorm<Eigen::Infinity>(), 1e-3 * c);
  }
}

TEST(AttitudeObserver, TracksAnalyticMomentDisturbance) {
  const AircraftParams p = reference_aircraft();
  ObserverBank bank;
  Vec3d rate = Vec3d::Zero();
  const auto accel = [&](double t) { return Vec3d(uncertainty_signals(t).second.cwiseQuotient(p.J)); };
  const double peak = accel(0.0).lpNorm<Eigen::Infinity>();
  double worst = 0.0;
  for (long k = 0; k < 20000; ++k) {
    const double t = k * kDt;
    ObserverSample a, b;
    a.rates = rate;
    // Trapezoid on the rate is exact to O(dt^3) for the smooth signal.
    rate += 0.5 * kDt * (accel(t) + accel(t + kDt));
    b.rates = rate;
    bank = observer_advance(bank, a, b, ObserverGains{}, kDt, kSubsteps);
    if (t + kDt >= 8.0)
      worst = std::max(worst, (bank.attitude.col(1) - accel(t + kDt)).lpNorm<Eigen::Infinity>());
  }
  EXPECT_LE(worst, 0.02 * peak);
}

TEST(GainValidation, FactorableCubic) {
  const GainReport r = validate_gains(ObserverGains{}, Vec3d::Zero(), Vec3d::Zero());
  EXPECT_TRUE(r.position_hurwitz);
  EXPECT_TRUE(r.attitude_hurwitz);
  EXPECT_TRUE(r.pass);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.position_roots(i).real(), -3.0 + i, 1e-9);
    EXPECT_NEAR(r.position_roots(i).imag(), 0.0, 1e-9);
  }
}

TEST(GainValidation, RouthFailure) {
  ObserverGains g;
  g.k_p1 = 1.0;
  g.k_p2 = 1.0;
  g.k_p3 = 10.0;
  const GainReport r = validate_gains(g, Vec3d::Zero(), Vec3d::Zero());
  EXPECT_FALSE(r.position_hurwitz);
  EXPECT_FALSE(r.pass);
}

TEST(GainValidation, RateBoundMargin) {
  const AircraftParams p = reference_aircraft();
  const auto [bp, ba] = disturbance_rate_bounds(p.m, p.J, 1.0);
  EXPECT_TRUE(validate_gains(ObserverGains{}, bp, ba).pass);
  EXPECT_FALSE(validate_gains(ObserverGains{}, Vec3d::Constant(7.0), ba).pass);
}

TEST(Roots, Quadratic) {
  const Eigen::Vector2cd r = quadratic_roots(3.0, 2.0);
  EXPECT_NEAR(r(0).real(), -2.0, 1e-12);
  EXPECT_NEAR(r(1).real(), -1.0, 1e-12);
}

TEST(Lyapunov, ReferenceGainsPositiveDefinite) {
  const LyapunovCertificates c = lyapunov_certificates(ObserverGains{});
  EXPECT_TRUE(c.positive_definite());
  EXPECT_LE((c.P_p - c.P_p.transpose()).norm(), 0.0);
  EXPECT_LE((c.P_a - c.P_a.transpose()).norm(), 0.0);
}

TEST(Lyapunov, DegenerateFirstGain) {
  ObserverGains g;
  g.k_a1 = 0.0;
  const LyapunovCertificates c = lyapunov_certificates(g);
  EXPECT_TRUE(c.positive_definite());
  EXPECT_NEAR(c.P_a(0, 1), 0.0, 0.0);
}
