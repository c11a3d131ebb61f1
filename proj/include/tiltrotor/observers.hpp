// Finite-time convergent observers.
//
// Position (per inertial axis, measuring X, Y, Z): third order, estimating
// position, velocity and the lumped force disturbance divided by m.
// Attitude (per Euler axis, measuring the Euler rates): super-twisting,
// estimating the rate and the lumped moment disturbance divided by J_i.
#pragma once

#include "tiltrotor/types.hpp"

#include <complex>

namespace tiltrotor {

struct ObserverGains {
  double k_p1 = 6.0;
  double k_p2 = 11.0;
  double k_p3 = 6.0;
  double k_a1 = 6.0;
  double k_a2 = 11.0;
  double k_a3 = 6.0;  // margin against the moment-disturbance rate bound
};

using Mat32d = Eigen::Matrix<double, 3, 2>;

struct ObserverBank {
  Mat3d position = Mat3d::Zero();   // rows X, Y, Z; cols estimate, rate, disturbance / m
  Mat32d attitude = Mat32d::Zero();  // rows phi, theta, psi; cols rate, disturbance / J_i

  Vec3d position_estimate() const { return position.col(0); }
  Vec3d velocity_estimate() const { return position.col(1); }
  Vec3d rate_estimate() const { return attitude.col(0); }
  Vec3d force_disturbance(double m) const { return m * position.col(2); }
  Vec3d moment_disturbance(const Vec3d& J) const { return J.cwiseProduct(attitude.col(1)); }
};

Mat3d position_observer_rhs(const Mat3d& x, const Vec3d& y_p, const Vec3d& known, const ObserverGains& gains);
Mat32d attitude_observer_rhs(const Mat32d& z, const Vec3d& y_a, const Vec3d& known, const ObserverGains& gains);

// Explicit Euler over dt in `substeps` equal pieces with the measurement and
// the known input m^-1 (u_p + Gamma_p) held.
ObserverBank position_observer_step(ObserverBank bank, const Vec3d& y_p, const Vec3d& known,
                                    const ObserverGains& gains, double dt, int substeps = 1);

// Same for the attitude observers, known input J^-1 (u_a + u_beta + Gamma_a).
ObserverBank attitude_observer_step(ObserverBank bank, const Vec3d& y_a, const Vec3d& known,
                                    const ObserverGains& gains, double dt, int substeps = 1);

// Measurements and known inputs at one instant of a simulation step.
struct ObserverSample {
  Vec3d position = Vec3d::Zero();
  Vec3d velocity = Vec3d::Zero();  // only used to interpolate position
  Vec3d known_p = Vec3d::Zero();
  Vec3d rates = Vec3d::Zero();
  Vec3d known_a = Vec3d::Zero();
};

// Advances both observers across one plant step. Position is interpolated
// with cubic Hermite segments, rates and known inputs linearly.
ObserverBank observer_advance(ObserverBank bank, const ObserverSample& begin, const ObserverSample& end,
                              const ObserverGains& gains, double dt, int substeps);

struct GainReport {
  Eigen::Vector3cd position_roots;
  Eigen::Vector2cd attitude_roots;
  bool position_hurwitz = false;
  bool attitude_hurwitz = false;
  Vec3d position_margin = Vec3d::Zero();  // k_p3 minus the per-axis rate bound
  Vec3d attitude_margin = Vec3d::Zero();  // k_a2 minus the per-axis rate bound
  Vec3d attitude_k3_margin = Vec3d::Zero();
  bool pass = false;
};

// bound_p: sup |dDelta_p/dt| / m per axis; bound_a: sup |dDelta_a/dt| / J_i.
GainReport validate_gains(const ObserverGains& gains, const Vec3d& bound_p, const Vec3d& bound_a);

struct LyapunovCertificates {
  Mat3d P_p;
  Mat2d P_a;
  Vec3d eig_p;
  Vec2d eig_a;
  bool positive_definite() const { return eig_p.minCoeff() > 0.0 && eig_a.minCoeff() > 0.0; }
};

LyapunovCertificates lyapunov_certificates(const ObserverGains& gains);

// Roots of s^3 + a s^2 + b s + c and s^2 + a s + b, sorted by real part.
Eigen::Vector3cd cubic_roots(double a, double b, double c);
Eigen::Vector2cd quadratic_roots(double a, double b);

// sup over [0, horizon] of the analytic disturbance rates, divided by m and J.
std::pair<Vec3d, Vec3d> disturbance_rate_bounds(double m, const Vec3d& J, double scale, double horizon = 30.0);

}  // namespace tiltrotor
