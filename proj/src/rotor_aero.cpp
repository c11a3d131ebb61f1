#include "tiltrotor/rotor_aero.hpp"

#include "tiltrotor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tiltrotor {

ThrustTorqueMap<double> thrust_torque_map(const InflowState<double>& in, const RotorParams& rp) {
  const ThrustMap<double> t = thrust_from_pitch(0.0, in, rp);
  const TorqueMap<double> q = torque_from_pitch(0.0, in, rp);
  if (t.h1 == 0.0 || !std::isfinite(t.h1)) throw SingularMapError("thrust map has zero pitch slope");
  return {q.d1 / t.h1, q.d2 - q.d1 * t.h2 / t.h1};
}

double torque_from_thrust(double T, const InflowState<double>& in, const RotorParams& rp) {
  const ThrustTorqueMap<double> map = thrust_torque_map(in, rp);
  return map.slope * T + map.offset;
}

PowerCoefficients power_coefficients(double C_T, double sigma, double C_d0, double kappa) {
  if (C_T < 0.0) throw DomainError("C_T must be non-negative");
  PowerCoefficients out;
  out.C_Pi = kappa * std::pow(C_T, 1.5) / 2.0;
  out.C_P0 = sigma * C_d0 / 4.0;
  out.C_P = out.C_Pi + out.C_P0;
  return out;
}

double hover_induced_velocity(double T, double rho, double R) {
  if (T < 0.0) throw DomainError("thrust must be non-negative");
  if (!(rho > 0.0) || !(R > 0.0)) throw DomainError("rho and R must be positive");
  return std::sqrt(T / (2.0 * rho * kPi * R * R));
}

bool in_vortex_ring(double V_xh, double V_zh) {
  const double a = 2.0 * V_zh + 3.0;
  return a * a + V_xh * V_xh <= 1.0;
}

double vortex_ring_inflow(double V_xh, double V_zh) {
  return V_zh * (0.373 * V_zh * V_zh + 0.598 * V_xh * V_xh - 1.991);
}

namespace {

constexpr int kMaxNewton = 50;
constexpr double kStepTol = 1e-12;
constexpr double kResidualTol = 1e-10;

struct Quartic {
  double vz;
  double w;  // Vx^2 + Vy^2 + Vz^2
  double f(double x) const { return ((x + 2.0 * vz) * x + w) * x * x - 1.0; }
  double df(double x) const { return ((4.0 * x + 6.0 * vz) * x + 2.0 * w) * x; }
};

}  // namespace

InducedVelocity normalized_momentum_inflow(double V_xh, double V_yh, double V_zh) {
  const Quartic q{V_zh, V_xh * V_xh + V_yh * V_yh + V_zh * V_zh};
  InducedVelocity out;
  out.v_h = 1.0;

  double x = 1.0;
  if (V_zh < 0.0) {
    const double guess = vortex_ring_inflow(std::hypot(V_xh, V_yh), V_zh);
    if (std::isfinite(guess) && guess > 0.0) x = guess;
  }

  bool converged = false;
  for (int it = 1; it <= kMaxNewton; ++it) {
    const double d = q.df(x);
    if (!(std::abs(d) > std::numeric_limits<double>::min())) break;
    const double step = q.f(x) / d;
    x -= step;
    out.iterations = it;
    if (!(x > 0.0) || !std::isfinite(x)) break;
    if (std::abs(step) <= kStepTol) {
      converged = true;
      break;
    }
  }

  if (!converged || !(x > 0.0) || std::abs(q.f(x)) > kResidualTol) {
    double lo = 0.0;
    double hi = 2.0 + std::abs(V_zh);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (q.f(mid) < 0.0 ? lo : hi) = mid;
    }
    x = 0.5 * (lo + hi);
    out.bisection = true;
  }

  out.v_i = x;
  out.residual = std::abs(q.f(x));
  if (!(out.residual <= kResidualTol)) throw NumericError("induced velocity did not converge", out.residual);
  return out;
}

InducedVelocity induced_velocity(double T, double V_x, double V_y, double V_z, double rho, double R) {
  const double v_h = hover_induced_velocity(T, rho, R);
  InducedVelocity out;
  if (v_h == 0.0) return out;

  const double V_xh = std::hypot(V_x, V_y) / v_h;
  const double V_zh = V_z / v_h;
  if (in_vortex_ring(V_xh, V_zh)) {
    out.regime = InflowRegime::VortexRing;
    out.v_i = v_h * vortex_ring_inflow(V_xh, V_zh);
  } else {
    out = normalized_momentum_inflow(V_x / v_h, V_y / v_h, V_zh);
    out.v_i *= v_h;
  }
  out.v_h = v_h;
  return out;
}

double vortex_ring_boundary_jump(double V_xh) {
  const double disc = 1.0 - V_xh * V_xh;
  if (disc < 0.0) return 0.0;
  double jump = 0.0;
  for (double s : {-1.0, 1.0}) {
    const double V_zh = (-3.0 + s * std::sqrt(disc)) / 2.0;
    const double momentum = normalized_momentum_inflow(V_xh, 0.0, V_zh).v_i;
    jump = std::max(jump, std::abs(vortex_ring_inflow(V_xh, V_zh) - momentum));
  }
  return jump;
}

}  // namespace tiltrotor
