// Brute-force blade-element integrals used as test oracles for the rotor
// closed forms. Gauss-Legendre in radius, periodic trapezoid in azimuth.
#pragma once

#include "tiltrotor/rotor_aero.hpp"

#include <utility>
#include <vector>

namespace tiltrotor::oracles {

// Nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

struct QuadratureGrid {
  int radial = 100;
  int azimuthal = 100;
};

// C_T = p a / (2 pi^2) * int_0^2pi int_0^1 (phi W_x^2 - W_x W_z) b_bar dr dgamma
double thrust_coefficient_quadrature(double phi_7, const InflowState<double>& in, const RotorParams& rp,
                                     QuadratureGrid grid = {});

// C_Q = p a / (2 pi^2) * int int (W_x^2 C_d0 / a - W_z^2 + W_x W_z phi) b_bar r dr dgamma
double torque_coefficient_quadrature(double phi_7, const InflowState<double>& in, const RotorParams& rp,
                                     QuadratureGrid grid = {});

}  // namespace tiltrotor::oracles
