#pragma once

#include <stdexcept>
#include <string>

namespace tiltrotor {

// Input outside the mathematical domain of a formula (negative mass, T < 0, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Inputs are valid individually but describe an unbuildable aircraft.
struct DesignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed; carries the last residual it saw.
struct NumericError : std::runtime_error {
  NumericError(const std::string& what, double last_residual)
      : std::runtime_error(what + " (last residual " + std::to_string(last_residual) + ")"),
        residual(last_residual) {}
  double residual;
};

struct SingularMapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleTiltError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EffectivenessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AllocationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tiltrotor
