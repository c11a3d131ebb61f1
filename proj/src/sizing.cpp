#include "tiltrotor/sizing.hpp"

#include "tiltrotor/errors.hpp"
#include "tiltrotor/types.hpp"

#include <cmath>
#include <string>

namespace tiltrotor {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) throw DomainError(std::string(name) + " must be positive");
}

}  // namespace

double rotor_radius(double m, double DL) {
  require_positive(m, "m");
  require_positive(DL, "DL");
  return std::sqrt(m / (kPi * DL)) / 2.0;
}

double two_rotor_radius(double m, double DL) {
  require_positive(m, "m");
  require_positive(DL, "DL");
  return std::sqrt(m / (2.0 * kPi * DL));
}

BladeGeometry blade_geometry(double R, double rho_b, double sigma) {
  require_positive(R, "R");
  require_positive(rho_b, "rho_b");
  require_positive(sigma, "sigma");
  BladeGeometry out;
  out.b = R / rho_b;
  const long p = std::lround(sigma * kPi * R / out.b);
  if (p < 2) throw DesignError("blade count rounds to " + std::to_string(p) + ", need at least 2");
  out.p = static_cast<int>(p);
  return out;
}

double solidity_rounding_slack(double R, double b) { return b / (2.0 * kPi * R); }

WingGeometry wing_geometry(double m, double WL_w, double WL_ws, double A_w, double S_front) {
  require_positive(m, "m");
  require_positive(WL_w, "WL_w");
  require_positive(WL_ws, "WL_ws");
  require_positive(A_w, "A_w");
  if (S_front < 0.0) throw DomainError("S_front must be non-negative");
  if (WL_ws > WL_w) throw DomainError("WL_ws must not exceed WL_w");

  WingGeometry out;
  out.S_w = m / WL_w;
  out.l_w = std::sqrt(A_w * out.S_w);
  out.c_w = std::sqrt(out.S_w / A_w);
  out.S_fi = (m / WL_ws - out.S_w - S_front) / 4.0;
  if (out.S_fi < 0.0)
    throw DesignError("free-wing area is negative (" + std::to_string(out.S_fi) +
                      " m^2): all-wings loading leaves no room for the free wings");
  return out;
}

double rated_thrust(double m, double rho_mT, double g) {
  require_positive(m, "m");
  require_positive(rho_mT, "rho_mT");
  require_positive(g, "g");
  return rho_mT * m * g / 4.0;
}

double optimum_thrust_coefficient(double sigma, double C_d0, double kappa) {
  require_positive(sigma, "sigma");
  require_positive(C_d0, "C_d0");
  require_positive(kappa, "kappa");
  return std::pow(sigma * C_d0 / kappa, 2.0 / 3.0);
}

double disk_loading_at(double C_T, double rho, double tip_speed) {
  return 0.5 * rho * tip_speed * tip_speed * C_T;
}

void validate(const DesignTargets& t) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ValidationError(std::string("design.") + name + " must be positive");
  };
  positive(t.m, "m");
  positive(t.rho_mT, "rho_mT");
  positive(t.rho_e, "rho_e");
  positive(t.m_e, "m_e");
  positive(t.DL_QT, "DL_QT");
  positive(t.rho_b, "rho_b");
  positive(t.sigma, "sigma");
  positive(t.A_w, "A_w");
  positive(t.WL_w, "WL_w");
  positive(t.WL_ws, "WL_ws");
  positive(t.S_front, "S_front");
  positive(t.kappa, "kappa");
  positive(t.C_d0, "C_d0");
  if (t.rho_mT < 1.0) throw ValidationError("design.rho_mT must be at least 1");
  if (t.sigma < 0.04 || t.sigma > 0.2) throw ValidationError("design.sigma must lie in [0.04, 0.2]");
}

SizingResult size(const DesignTargets& t) {
  validate(t);
  SizingResult out;
  out.R = rotor_radius(t.m, t.DL_QT);
  const BladeGeometry blade = blade_geometry(out.R, t.rho_b, t.sigma);
  out.b = blade.b;
  out.p = blade.p;
  out.T_e = rated_thrust(t.m, t.rho_mT);
  const WingGeometry wing = wing_geometry(t.m, t.WL_w, t.WL_ws, t.A_w, t.S_front);
  out.S_w = wing.S_w;
  out.l_w = wing.l_w;
  out.c_w = wing.c_w;
  out.S_fi = wing.S_fi;
  out.C_T_opt = optimum_thrust_coefficient(t.sigma, t.C_d0, t.kappa);
  return out;
}

}  // namespace tiltrotor
