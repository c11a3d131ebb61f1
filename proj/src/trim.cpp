#include "tiltrotor/trim.hpp"

#include "tiltrotor/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

namespace tiltrotor {

namespace {

// Damped Newton with a central-difference Jacobian.
template <int N, typename Residual>
Eigen::Matrix<double, N, 1> newton(Residual&& f, Eigen::Matrix<double, N, 1> x, double tolerance, int& iterations,
                                   const char* what) {
  using Vec = Eigen::Matrix<double, N, 1>;
  using Mat = Eigen::Matrix<double, N, N>;
  constexpr int kMaxIterations = 100;
  Vec r = f(x);
  for (iterations = 0; iterations < kMaxIterations; ++iterations) {
    if (r.template lpNorm<Eigen::Infinity>() <= tolerance) return x;
    Mat Jac;
    for (int j = 0; j < N; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
      Vec xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      Jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
    }
    const Vec step = Jac.fullPivLu().solve(-r);
    double lambda = 1.0;
    Vec x_new = x + step, r_new = f(x_new);
    while (r_new.norm() >= r.norm() && lambda > 1e-6) {
      lambda *= 0.5;
      x_new = x + lambda * step;
      r_new = f(x_new);
    }
    if (r_new.norm() >= r.norm()) break;
    x = x_new;
    r = r_new;
  }
  if (r.template lpNorm<Eigen::Infinity>() <= tolerance) return x;
  throw NumericError(std::string(what) + " did not converge", r.template lpNorm<Eigen::Infinity>());
}

DisturbanceModel no_disturbance() {
  DisturbanceModel d;
  d.enabled = false;
  d.gyroscopic = false;
  return d;
}

// Net force (N) and moment (N m) acting on the airframe.
std::pair<Vec3d, Vec3d> net_loads(const RigidState& s, const ControlInput& u, const AircraftParams& p) {
  const Derivative d = state_derivative(s, u, 0.0, p, no_disturbance());
  return {p.m * d.xdot.segment<3>(3), p.J.cwiseProduct(d.xdot.segment<3>(9))};
}

void finish(TrimResult& out, const AircraftParams& p) {
  const auto [F, M] = net_loads(out.state, out.input, p);
  out.force_residual = F.norm();
  out.moment_residual = M.norm();
  out.alpha = airflow(out.state, p).alpha;
}

}  // namespace

TrimResult trim_hover(const AircraftParams& p, double tolerance) {
  TrimResult out;
  auto residual = [&](const Vec4d& T) {
    ControlInput u;
    u.T = T;
    const auto [F, M] = net_loads(out.state, u, p);
    return Vec4d(F.z(), M.x(), M.y(), M.z());
  };
  const Vec4d guess = Vec4d::Constant(p.weight() / 4.0);
  out.input.T = newton<4>(residual, guess, tolerance, out.iterations, "hover trim");
  out.T = out.input.T;
  finish(out, p);
  return out;
}

TrimResult trim_cruise(const AircraftParams& p, double V, double tolerance, double delta_max) {
  if (!(V > 0.0)) throw DomainError("cruise speed must be positive");
  TrimResult out;
  const WingParams& w = p.wing;
  const double front_share = 0.5 * w.l3 / (w.l3 + w.l4);  // per front rotor
  const double rear_share = 0.5 * w.l4 / (w.l3 + w.l4);

  auto build = [&](const Vec3d& x, RigidState& s, ControlInput& u) {
    s = RigidState{};
    s.v_p = Vec3d(V, 0.0, 0.0);
    s.x_a = Vec3d(0.0, x(1), 0.0);
    s.beta = kPi / 2.0;
    u = ControlInput{};
    u.T = Vec4d(front_share, front_share, rear_share, rear_share) * x(0);
    u.delta = x(2);
  };
  auto residual = [&](const Vec3d& x) {
    RigidState s;
    ControlInput u;
    build(x, s, u);
    const auto [F, M] = net_loads(s, u, p);
    return Vec3d(F.x(), F.z(), M.y());
  };

  // Incidence that makes the fixed-wing lift carry the weight.
  const double q = 0.5 * p.rho * V * V * 2.0 * w.S_ri;
  const double alpha0 = (p.weight() / q - w.C_w0) / w.C_w_alpha;
  const Vec3d x = newton<3>(residual, Vec3d(0.1 * p.weight(), alpha0, 0.0), tolerance, out.iterations, "cruise trim");
  build(x, out.state, out.input);
  out.theta = x(1);
  out.delta = x(2);
  out.flap_within_limits = std::abs(out.delta) <= delta_max;
  out.T = out.input.T;
  finish(out, p);
  return out;
}

}  // namespace tiltrotor
