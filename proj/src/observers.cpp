#include "tiltrotor/observers.hpp"

#include "tiltrotor/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace tiltrotor {

Mat3d position_observer_rhs(const Mat3d& x, const Vec3d& y_p, const Vec3d& known, const ObserverGains& g) {
  Mat3d dx;
  for (int i = 0; i < 3; ++i) {
    const double e = x(i, 0) - y_p(i);
    dx(i, 0) = x(i, 1) - g.k_p1 * signed_pow(e, 2.0 / 3.0);
    dx(i, 1) = x(i, 2) + known(i) - g.k_p2 * signed_pow(e, 1.0 / 3.0);
    dx(i, 2) = -g.k_p3 * sgn(e);
  }
  return dx;
}

Mat32d attitude_observer_rhs(const Mat32d& z, const Vec3d& y_a, const Vec3d& known, const ObserverGains& g) {
  Mat32d dz;
  for (int i = 0; i < 3; ++i) {
    const double e = z(i, 0) - y_a(i);
    dz(i, 0) = z(i, 1) + known(i) - g.k_a1 * signed_pow(e, 0.5);
    dz(i, 1) = -g.k_a2 * sgn(e);
  }
  return dz;
}

ObserverBank position_observer_step(ObserverBank bank, const Vec3d& y_p, const Vec3d& known,
                                    const ObserverGains& gains, double dt, int substeps) {
  const double h = dt / std::max(substeps, 1);
  for (int k = 0; k < std::max(substeps, 1); ++k)
    bank.position += h * position_observer_rhs(bank.position, y_p, known, gains);
  return bank;
}

ObserverBank attitude_observer_step(ObserverBank bank, const Vec3d& y_a, const Vec3d& known,
                                    const ObserverGains& gains, double dt, int substeps) {
  const double h = dt / std::max(substeps, 1);
  for (int k = 0; k < std::max(substeps, 1); ++k)
    bank.attitude += h * attitude_observer_rhs(bank.attitude, y_a, known, gains);
  return bank;
}

ObserverBank observer_advance(ObserverBank bank, const ObserverSample& a, const ObserverSample& b,
                              const ObserverGains& gains, double dt, int substeps) {
  const int n = std::max(substeps, 1);
  const double h = dt / n;
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / n;
    const double s2 = s * s, s3 = s2 * s;
    const Vec3d y_p = (2 * s3 - 3 * s2 + 1) * a.position + (s3 - 2 * s2 + s) * dt * a.velocity +
                      (-2 * s3 + 3 * s2) * b.position + (s3 - s2) * dt * b.velocity;
    const Vec3d known_p = (1 - s) * a.known_p + s * b.known_p;
    const Vec3d y_a = (1 - s) * a.rates + s * b.rates;
    const Vec3d known_a = (1 - s) * a.known_a + s * b.known_a;
    bank.position += h * position_observer_rhs(bank.position, y_p, known_p, gains);
    bank.attitude += h * attitude_observer_rhs(bank.attitude, y_a, known_a, gains);
  }
  return bank;
}

namespace {

template <int N> Eigen::Matrix<std::complex<double>, N, 1> sorted(Eigen::Matrix<std::complex<double>, N, 1> r) {
  std::sort(r.data(), r.data() + N, [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return r;
}

}  // namespace

Eigen::Vector3cd cubic_roots(double a, double b, double c) {
  Mat3d companion;
  companion << -a, -b, -c, 1, 0, 0, 0, 1, 0;
  return sorted<3>(Eigen::EigenSolver<Mat3d>(companion, false).eigenvalues());
}

Eigen::Vector2cd quadratic_roots(double a, double b) {
  Mat2d companion;
  companion << -a, -b, 1, 0;
  return sorted<2>(Eigen::EigenSolver<Mat2d>(companion, false).eigenvalues());
}

GainReport validate_gains(const ObserverGains& g, const Vec3d& bound_p, const Vec3d& bound_a) {
  GainReport r;
  r.position_roots = cubic_roots(g.k_p1, g.k_p2, g.k_p3);
  r.attitude_roots = quadratic_roots(g.k_a1, g.k_a2);
  r.position_hurwitz = r.position_roots.real().maxCoeff() < 0.0;
  r.attitude_hurwitz = r.attitude_roots.real().maxCoeff() < 0.0;
  r.position_margin = Vec3d::Constant(g.k_p3) - bound_p;
  r.attitude_margin = Vec3d::Constant(g.k_a2) - bound_a;
  r.attitude_k3_margin = Vec3d::Constant(g.k_a3) - bound_a;
  r.pass = r.position_hurwitz && r.attitude_hurwitz && r.position_margin.minCoeff() > 0.0 &&
           r.attitude_margin.minCoeff() > 0.0 && r.attitude_k3_margin.minCoeff() > 0.0;
  return r;
}

LyapunovCertificates lyapunov_certificates(const ObserverGains& g) {
  LyapunovCertificates c;
  c.P_p << 2 * g.k_p3 + g.k_p1 * g.k_p1 + g.k_p2 * g.k_p2, -g.k_p1, -g.k_p2,
      -g.k_p1, 2, 0,
      -g.k_p2, 0, 2;
  c.P_p *= 0.5;
  c.P_a << 4 * g.k_a2 + g.k_a1 * g.k_a1, -g.k_a1,
      -g.k_a1, 2;
  c.P_a *= 0.5;
  c.eig_p = Eigen::SelfAdjointEigenSolver<Mat3d>(c.P_p, Eigen::EigenvaluesOnly).eigenvalues();
  c.eig_a = Eigen::SelfAdjointEigenSolver<Mat2d>(c.P_a, Eigen::EigenvaluesOnly).eigenvalues();
  return c;
}

std::pair<Vec3d, Vec3d> disturbance_rate_bounds(double m, const Vec3d& J, double scale, double horizon) {
  Vec3d sup_p = Vec3d::Zero(), sup_a = Vec3d::Zero();
  constexpr double kStep = 1e-4;
  const long n = static_cast<long>(horizon / kStep);
  for (long k = 0; k <= n; ++k) {
    const auto [p, a] = uncertainty_signal_rates(k * kStep);
    sup_p = sup_p.cwiseMax(p.cwiseAbs());
    sup_a = sup_a.cwiseMax(a.cwiseAbs());
  }
  return {std::abs(scale) * sup_p / m, std::abs(scale) * sup_a.cwiseQuotient(J)};
}

}  // namespace tiltrotor
