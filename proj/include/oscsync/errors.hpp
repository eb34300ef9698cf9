#pragma once

#include <stdexcept>
#include <string>

namespace oscsync {

// Invalid parameter sets, malformed config files, broken invariants.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite state encountered during integration (bad parameters or dt).
class SimulationDiverged : public std::runtime_error {
 public:
  explicit SimulationDiverged(const std::string& what) : std::runtime_error(what) {}
};

// Supply current outside the self-oscillation window of the switch.
class NoOscillation : public std::domain_error {
 public:
  explicit NoOscillation(const std::string& what) : std::domain_error(what) {}
};

// Quantity undefined for the given data (e.g. frequency of a 1-spike train).
class InsufficientData : public std::runtime_error {
 public:
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oscsync
