// Small helpers over yaml-cpp shared by the parameter and scenario readers.
// Keys ending in _deg are converted to radians.
#pragma once

#include "tiltrotor/errors.hpp"
#include "tiltrotor/types.hpp"

#include <yaml-cpp/yaml.h>

#include <optional>
#include <string>

namespace tiltrotor::yaml {

inline double scalar(const YAML::Node& v, const std::string& name) {
  try {
    return v.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError("key '" + name + "' is not a number");
  }
}

inline std::optional<double> optional(const YAML::Node& sec, const std::string& sec_name, const std::string& key) {
  if (!sec) return std::nullopt;
  if (const YAML::Node v = sec[key]) return scalar(v, sec_name + "." + key);
  if (const YAML::Node v = sec[key + "_deg"]) return deg2rad(scalar(v, sec_name + "." + key + "_deg"));
  return std::nullopt;
}

inline double required(const YAML::Node& sec, const std::string& sec_name, const std::string& key) {
  if (auto v = optional(sec, sec_name, key)) return *v;
  throw ConfigError("missing required key '" + sec_name + "." + key + "'");
}

inline YAML::Node section(const YAML::Node& root, const std::string& name) {
  const YAML::Node node = root[name];
  if (!node) throw ConfigError("missing section '" + name + "'");
  return node;
}

template <int N>
std::optional<Eigen::Matrix<double, N, 1>> optional_vector(const YAML::Node& sec, const std::string& sec_name,
                                                           const std::string& key) {
  if (!sec) return std::nullopt;
  const YAML::Node plain = sec[key];
  const YAML::Node deg = sec[key + "_deg"];
  if (!plain && !deg) return std::nullopt;
  const YAML::Node& v = plain ? plain : deg;
  const std::string name = sec_name + "." + key + (plain ? "" : "_deg");
  const double scale = plain ? 1.0 : kPi / 180.0;
  if (!v.IsSequence() || v.size() != N)
    throw ConfigError("key '" + name + "' must be a list of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) out(i) = scale * scalar(v[i], name);
  return out;
}

}  // namespace tiltrotor::yaml
