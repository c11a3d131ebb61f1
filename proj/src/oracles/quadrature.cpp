#include "tiltrotor/oracles/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tiltrotor::oracles {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    const double v = es.eigenvectors()(0, i);
    w[i] = v * v;  // 2 v^2 on [-1, 1], halved for [0, 1]
  }
  return {x, w};
}

namespace {

struct Integrands {
  double thrust = 0.0;
  double torque = 0.0;
};

Integrands integrate(double phi_7, const InflowState<double>& in, const RotorParams& rp, QuadratureGrid grid) {
  const auto [r, wr] = gauss_legendre(grid.radial);
  const double dgamma = 2.0 * kPi / grid.azimuthal;
  Integrands sum;
  for (int j = 0; j < grid.azimuthal; ++j) {
    const double gamma = j * dgamma;
    const double s = std::sin(gamma), c = std::cos(gamma);
    for (int i = 0; i < grid.radial; ++i) {
      const double W_x = r[i] + in.mu_x * s + in.mu_y * c;
      const double mu_beta = in.rho_beta * r[i];
      const double W_z = in.v_bar + in.mu_z + mu_beta * c;
      const double phi = phi_7 + rp.delta_phi_star * (r[i] - 0.7);
      const double w = wr[i] * dgamma * rp.b_bar1;
      sum.thrust += w * (phi * W_x * W_x - W_x * W_z);
      sum.torque += w * r[i] * (W_x * W_x * rp.C_d0 / rp.a_inf - W_z * W_z + W_x * W_z * phi);
    }
  }
  const double pre = rp.p * rp.a_inf / (2.0 * kPi * kPi);
  return {pre * sum.thrust, pre * sum.torque};
}

}  // namespace

double thrust_coefficient_quadrature(double phi_7, const InflowState<double>& in, const RotorParams& rp,
                                     QuadratureGrid grid) {
  return integrate(phi_7, in, rp, grid).thrust;
}

double torque_coefficient_quadrature(double phi_7, const InflowState<double>& in, const RotorParams& rp,
                                     QuadratureGrid grid) {
  return integrate(phi_7, in, rp, grid).torque;
}

}  // namespace tiltrotor::oracles
