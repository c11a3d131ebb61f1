// Conceptual sizing: rotor, blade and wing geometry from gross mass and a
// handful of design ratios.
//
// Disk loading is mass based (kg/m^2): the rotor-radius relation is used with
// the mass directly, i.e. weight is expressed in kgf. That is the only reading
// under which R = 2.0966 m follows from m = 3313 kg and DL = 60.
#pragma once

namespace tiltrotor {

inline constexpr double kGravity = 9.8;

struct DesignTargets {
  double m = 0.0;        // gross mass, kg
  double rho_mT = 1.0;   // maneuverability thrust ratio
  double rho_e = 0.0;    // engine thrust-to-weight
  double m_e = 0.0;      // engine mass, kg
  double DL_QT = 0.0;    // disk loading, kg/m^2
  double rho_b = 0.0;    // blade aspect ratio R/b
  double sigma = 0.0;    // rotor solidity
  double A_w = 0.0;      // fixed-wing aspect ratio
  double WL_w = 0.0;     // fixed-wing loading, kg/m^2
  double WL_ws = 0.0;    // all-wings loading, kg/m^2
  double S_front = 0.0;  // front fixed-wing root area, m^2
  double kappa = 0.0;    // induced power factor
  double C_d0 = 0.0;     // blade profile drag coefficient
};

struct BladeGeometry {
  double b = 0.0;  // chord, m
  int p = 0;       // blade count
};

struct WingGeometry {
  double S_w = 0.0;   // fixed-wing area, m^2
  double l_w = 0.0;   // span, m
  double c_w = 0.0;   // chord, m
  double S_fi = 0.0;  // area of one free wing, m^2
};

struct SizingResult {
  double R = 0.0;
  double b = 0.0;
  int p = 0;
  double T_e = 0.0;
  double S_w = 0.0;
  double l_w = 0.0;
  double c_w = 0.0;
  double S_fi = 0.0;
  double C_T_opt = 0.0;
};

// R = sqrt(m / (pi DL)) / 2 for four rotors sharing the load.
double rotor_radius(double m, double DL);

// Radius a conventional two-rotor layout would need at the same disk loading.
double two_rotor_radius(double m, double DL);

// b = R / rho_b, p = round(sigma pi R / b); throws DesignError when p < 2.
BladeGeometry blade_geometry(double R, double rho_b, double sigma);

// |sigma - p b / (pi R)| never exceeds this once p is rounded.
double solidity_rounding_slack(double R, double b);

WingGeometry wing_geometry(double m, double WL_w, double WL_ws, double A_w, double S_front);

double rated_thrust(double m, double rho_mT, double g = kGravity);

// Thrust coefficient of best power loading, (sigma C_d0 / kappa)^(2/3).
double optimum_thrust_coefficient(double sigma, double C_d0, double kappa);

// Disk loading (N/m^2) that corresponds to C_T at the given tip speed.
double disk_loading_at(double C_T, double rho, double tip_speed);

// Throws ValidationError naming the first offending field.
void validate(const DesignTargets& targets);

SizingResult size(const DesignTargets& targets);

}  // namespace tiltrotor
