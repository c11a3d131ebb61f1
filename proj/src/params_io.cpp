#include "tiltrotor/errors.hpp"
#include "tiltrotor/params.hpp"

#include "yaml_util.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace tiltrotor {

DesignTargets reference_design_targets() {
  DesignTargets t;
  t.m = 3313.0;
  t.rho_mT = std::sqrt(2.0);
  t.rho_e = 6.0;
  t.m_e = 195.0;
  t.DL_QT = 60.0;
  t.rho_b = 13.0;
  t.sigma = 0.1;
  t.A_w = 12.0;
  t.S_front = 12.3458;
  // Loadings back-solved from the reference areas S_w = 43.75, S_fi = 4.3795.
  t.WL_w = t.m / 43.75;
  t.WL_ws = t.m / (43.75 + t.S_front + 4.0 * 4.3795);
  t.kappa = 1.15;
  t.C_d0 = 0.008;
  return t;
}

AircraftParams reference_aircraft() {
  AircraftParams p;
  p.design = reference_design_targets();
  return p;
}

void validate(const AircraftParams& p) {
  auto positive = [](double v, const std::string& name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(name + " must be positive and finite");
  };
  positive(p.m, "aircraft.m");
  positive(p.g, "aircraft.g");
  positive(p.rho, "aircraft.rho");
  positive(p.J(0), "aircraft.J_1");
  positive(p.J(1), "aircraft.J_2");
  positive(p.J(2), "aircraft.J_3");
  positive(p.J_4, "aircraft.J_4");
  positive(p.S_w, "aircraft.S_w");
  if (!(p.S_front >= 0.0)) throw ValidationError("aircraft.S_front must be non-negative");

  const RotorParams& r = p.rotor;
  positive(r.R, "rotor.R");
  if (r.p < 2) throw ValidationError("rotor.p must be at least 2");
  positive(r.b_bar1, "rotor.b");
  positive(r.a_inf, "rotor.a_inf");
  positive(r.C_d0, "rotor.C_d0");
  positive(r.Omega, "rotor.Omega");
  positive(r.rho, "rotor.rho");
  positive(r.J_r, "rotor.J_r");
  positive(r.kappa, "rotor.kappa");

  const WingParams& w = p.wing;
  positive(w.S_fi, "wing.S_fi");
  positive(w.S_ri, "wing.S_ri");
  positive(w.A_f, "wing.A_f");
  positive(w.A_w, "wing.A_w");
  positive(w.d_f, "wing.d_f");
  positive(w.d_r, "wing.d_r");
  positive(w.l1, "wing.l1");
  positive(w.l2, "wing.l2");
  positive(w.l3, "wing.l3");
  positive(w.l4, "wing.l4");
  positive(w.l5, "wing.l5");
  if (!(w.alpha_max > 0.0 && w.alpha_max < kPi / 2.0))
    throw ValidationError("wing.alpha_max must lie in (0, pi/2)");

  const TailParams& t = p.tail;
  if (t.S_t < 0.0) throw ValidationError("tail.S_t must be non-negative");

  validate(p.design);
}

namespace {

AircraftParams from_yaml(const YAML::Node& root) {
  AircraftParams p;

  const YAML::Node ac = yaml::section(root, "aircraft");
  p.m = yaml::required(ac, "aircraft", "m");
  p.g = yaml::required(ac, "aircraft", "g");
  p.rho = yaml::required(ac, "aircraft", "rho");
  p.J = Vec3d(yaml::required(ac, "aircraft", "J_1"), yaml::required(ac, "aircraft", "J_2"),
              yaml::required(ac, "aircraft", "J_3"));
  p.J_4 = yaml::required(ac, "aircraft", "J_4");
  if (const YAML::Node wind = ac["wind"]) {
    if (!wind.IsSequence() || wind.size() != 3) throw ConfigError("aircraft.wind must be a 3-element list");
    p.wind = Vec3d(wind[0].as<double>(), wind[1].as<double>(), wind[2].as<double>());
  }

  const YAML::Node ds = yaml::section(root, "design");
  DesignTargets& d = p.design;
  d.m = yaml::optional(ds, "design", "m").value_or(p.m);
  d.rho_mT = yaml::required(ds, "design", "rho_mT");
  d.rho_e = yaml::required(ds, "design", "rho_e");
  d.m_e = yaml::required(ds, "design", "m_e");
  d.DL_QT = yaml::required(ds, "design", "DL_QT");
  d.rho_b = yaml::required(ds, "design", "rho_b");
  d.sigma = yaml::required(ds, "design", "sigma");
  d.A_w = yaml::required(ds, "design", "A_w");
  d.WL_w = yaml::required(ds, "design", "WL_w");
  d.WL_ws = yaml::required(ds, "design", "WL_ws");
  d.S_front = yaml::required(ds, "design", "S_front");
  d.kappa = yaml::required(ds, "design", "kappa");
  d.C_d0 = yaml::required(ds, "design", "C_d0");
  validate(d);
  p.S_front = d.S_front;

  // Rotor: geometry falls back on the sizing relations.
  const YAML::Node rs = yaml::section(root, "rotor");
  RotorParams& r = p.rotor;
  r.R = yaml::optional(rs, "rotor", "R").value_or(rotor_radius(d.m, d.DL_QT));
  const BladeGeometry blade = blade_geometry(r.R, d.rho_b, d.sigma);
  const double b = yaml::optional(rs, "rotor", "b").value_or(blade.b);
  r.p = rs["p"] ? rs["p"].as<int>() : blade.p;
  r.b_bar1 = b / r.R;
  r.a_inf = yaml::required(rs, "rotor", "a_inf");
  r.delta_phi_star = yaml::required(rs, "rotor", "delta_phi_star");
  r.J_r = yaml::required(rs, "rotor", "J_r");
  r.C_d0 = yaml::optional(rs, "rotor", "C_d0").value_or(d.C_d0);
  r.kappa = yaml::optional(rs, "rotor", "kappa").value_or(d.kappa);
  r.Omega = yaml::optional(rs, "rotor", "Omega").value_or(200.0 / r.R);
  r.rho = p.rho;

  // Wings: explicit areas take precedence over the loadings.
  const YAML::Node ws = yaml::section(root, "wing");
  WingParams& w = p.wing;
  const bool have_areas = ws["S_fi"] && ac["S_w"];
  const std::optional<WingGeometry> sized =
      have_areas ? std::nullopt : std::optional<WingGeometry>(wing_geometry(d.m, d.WL_w, d.WL_ws, d.A_w, d.S_front));
  p.S_w = yaml::optional(ac, "aircraft", "S_w").value_or(sized ? sized->S_w : d.m / d.WL_w);
  w.S_fi = yaml::optional(ws, "wing", "S_fi").value_or(sized ? sized->S_fi : 0.0);
  w.S_ri = yaml::optional(ws, "wing", "S_ri").value_or(0.5 * p.S_w);
  w.A_w = yaml::optional(ws, "wing", "A_w").value_or(d.A_w);
  w.l5 = yaml::optional(ws, "wing", "l5").value_or(0.25 * std::sqrt(w.A_w * p.S_w));
  w.C_f = yaml::required(ws, "wing", "C_f");
  w.C_r = yaml::required(ws, "wing", "C_r");
  w.C_Df0 = yaml::required(ws, "wing", "C_Df0");
  w.A_f = yaml::required(ws, "wing", "A_f");
  w.C_w0 = yaml::required(ws, "wing", "C_w0");
  w.C_w_alpha = yaml::required(ws, "wing", "C_w_alpha");
  w.C_w_delta = yaml::required(ws, "wing", "C_w_delta");
  w.C_Dw0 = yaml::required(ws, "wing", "C_Dw0");
  w.alpha_max = yaml::required(ws, "wing", "alpha_max");
  w.d_f = yaml::required(ws, "wing", "d_f");
  w.d_r = yaml::required(ws, "wing", "d_r");
  w.l1 = yaml::required(ws, "wing", "l1");
  w.l2 = yaml::required(ws, "wing", "l2");
  w.l3 = yaml::required(ws, "wing", "l3");
  w.l4 = yaml::required(ws, "wing", "l4");

  if (const YAML::Node ts = root["tail"]) {
    p.tail.S_t = yaml::optional(ts, "tail", "S_t").value_or(0.0);
    p.tail.C_Dt = yaml::optional(ts, "tail", "C_Dt").value_or(0.0);
    p.tail.C_Lt_beta = yaml::optional(ts, "tail", "C_Lt_beta").value_or(0.0);
  }

  validate(p);
  return p;
}

}  // namespace

AircraftParams parse_params(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse parameters: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("parameter file must be a mapping of sections");
  return from_yaml(root);
}

AircraftParams load_params(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open parameter file '" + path + "'");
  std::stringstream text;
  text << file.rdbuf();
  return parse_params(text.str());
}

std::string dump_params(const AircraftParams& p) {
  YAML::Emitter out;
  out.SetDoublePrecision(10);
  out << YAML::BeginMap;

  out << YAML::Key << "aircraft" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "m" << YAML::Value << p.m;
  out << YAML::Key << "g" << YAML::Value << p.g;
  out << YAML::Key << "rho" << YAML::Value << p.rho;
  out << YAML::Key << "J_1" << YAML::Value << p.J(0);
  out << YAML::Key << "J_2" << YAML::Value << p.J(1);
  out << YAML::Key << "J_3" << YAML::Value << p.J(2);
  out << YAML::Key << "J_4" << YAML::Value << p.J_4;
  out << YAML::Key << "S_w" << YAML::Value << p.S_w;
  out << YAML::Key << "wind" << YAML::Value << YAML::Flow << YAML::BeginSeq << p.wind(0) << p.wind(1) << p.wind(2)
      << YAML::EndSeq;
  out << YAML::EndMap;

  const DesignTargets& d = p.design;
  out << YAML::Key << "design" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "m" << YAML::Value << d.m;
  out << YAML::Key << "rho_mT" << YAML::Value << d.rho_mT;
  out << YAML::Key << "rho_e" << YAML::Value << d.rho_e;
  out << YAML::Key << "m_e" << YAML::Value << d.m_e;
  out << YAML::Key << "DL_QT" << YAML::Value << d.DL_QT;
  out << YAML::Key << "rho_b" << YAML::Value << d.rho_b;
  out << YAML::Key << "sigma" << YAML::Value << d.sigma;
  out << YAML::Key << "A_w" << YAML::Value << d.A_w;
  out << YAML::Key << "WL_w" << YAML::Value << d.WL_w;
  out << YAML::Key << "WL_ws" << YAML::Value << d.WL_ws;
  out << YAML::Key << "S_front" << YAML::Value << d.S_front;
  out << YAML::Key << "kappa" << YAML::Value << d.kappa;
  out << YAML::Key << "C_d0" << YAML::Value << d.C_d0;
  out << YAML::EndMap;

  const RotorParams& r = p.rotor;
  out << YAML::Key << "rotor" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "R" << YAML::Value << r.R;
  out << YAML::Key << "p" << YAML::Value << r.p;
  out << YAML::Key << "b" << YAML::Value << r.b_bar1 * r.R;
  out << YAML::Key << "a_inf" << YAML::Value << r.a_inf;
  out << YAML::Key << "C_d0" << YAML::Value << r.C_d0;
  out << YAML::Key << "delta_phi_star_deg" << YAML::Value << rad2deg(r.delta_phi_star);
  out << YAML::Key << "Omega" << YAML::Value << r.Omega;
  out << YAML::Key << "J_r" << YAML::Value << r.J_r;
  out << YAML::Key << "kappa" << YAML::Value << r.kappa;
  out << YAML::EndMap;

  const WingParams& w = p.wing;
  out << YAML::Key << "wing" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "S_fi" << YAML::Value << w.S_fi;
  out << YAML::Key << "S_ri" << YAML::Value << w.S_ri;
  out << YAML::Key << "C_f" << YAML::Value << w.C_f;
  out << YAML::Key << "C_r" << YAML::Value << w.C_r;
  out << YAML::Key << "C_Df0" << YAML::Value << w.C_Df0;
  out << YAML::Key << "A_f" << YAML::Value << w.A_f;
  out << YAML::Key << "C_w0" << YAML::Value << w.C_w0;
  out << YAML::Key << "C_w_alpha" << YAML::Value << w.C_w_alpha;
  out << YAML::Key << "C_w_delta" << YAML::Value << w.C_w_delta;
  out << YAML::Key << "C_Dw0" << YAML::Value << w.C_Dw0;
  out << YAML::Key << "A_w" << YAML::Value << w.A_w;
  out << YAML::Key << "alpha_max_deg" << YAML::Value << rad2deg(w.alpha_max);
  out << YAML::Key << "d_f" << YAML::Value << w.d_f;
  out << YAML::Key << "d_r" << YAML::Value << w.d_r;
  out << YAML::Key << "l1" << YAML::Value << w.l1;
  out << YAML::Key << "l2" << YAML::Value << w.l2;
  out << YAML::Key << "l3" << YAML::Value << w.l3;
  out << YAML::Key << "l4" << YAML::Value << w.l4;
  out << YAML::Key << "l5" << YAML::Value << w.l5;
  out << YAML::EndMap;

  out << YAML::Key << "tail" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "S_t" << YAML::Value << p.tail.S_t;
  out << YAML::Key << "C_Dt" << YAML::Value << p.tail.C_Dt;
  out << YAML::Key << "C_Lt_beta" << YAML::Value << p.tail.C_Lt_beta;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace tiltrotor
