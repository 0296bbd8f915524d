#pragma once

#include <stdexcept>
#include <string>

namespace ecocacc {

/// Precondition on a physical quantity was violated (negative speed, dt <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or invalid configuration (bad motor map, misaligned signal, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario text could not be parsed. Carries 1-based line and column.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& what)
      : ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// No feasible terminal state exists for the planner.
class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Follower simulation aborted (collision or predecessor horizon exhausted).
class SimulationError : public std::runtime_error {
 public:
  enum class Kind { kCollision, kHorizon };

  SimulationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// A pipeline failure tagged with the vehicle (1-based) and stage it occurred in.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(int vehicle, const std::string& stage, const std::string& what)
      : std::runtime_error("vehicle " + std::to_string(vehicle) + " [" + stage + "]: " + what),
        vehicle_(vehicle),
        stage_(stage) {}

  int vehicle() const { return vehicle_; }
  const std::string& stage() const { return stage_; }

 private:
  int vehicle_;
  std::string stage_;
};

}  // namespace ecocacc
