// Classical fixed-step fourth-order Runge-Kutta.
#pragma once

#include <utility>

namespace tiltrotor {

// f(t, x) returns dx/dt with the same type as x (any Eigen vector works).
template <typename Vector, typename Rhs>
Vector rk4_step(Rhs&& f, double t, const Vector& x, double dt) {
  const Vector k1 = f(t, x);
  const Vector k2 = f(t + 0.5 * dt, Vector(x + (0.5 * dt) * k1));
  const Vector k3 = f(t + 0.5 * dt, Vector(x + (0.5 * dt) * k2));
  const Vector k4 = f(t + dt, Vector(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Steps from t0 to t_end; the step count is rounded so that the last step
// lands on t_end. observe(t, x) is called at the start and after each step.
template <typename Vector, typename Rhs, typename Observe>
Vector rk4_integrate(Rhs&& f, double t0, Vector x, double dt, double t_end, Observe&& observe) {
  const long steps = static_cast<long>((t_end - t0) / dt + 0.5);
  observe(t0, x);
  for (long k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    x = rk4_step(f, t, x, dt);
    observe(t0 + static_cast<double>(k + 1) * dt, x);
  }
  return x;
}

}  // namespace tiltrotor
