#pragma once

#include <stdexcept>
#include <string>

namespace pilesim {

// Precondition violation on an otherwise valid value (bad cell, empty mask, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or inputs that cannot produce a run. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Scene generation could not satisfy the requested parameters.
struct GenerationError : ConfigError {
  explicit GenerationError(const std::string& msg) : ConfigError(msg) {}
};

// Remote decision service spoke garbage or went away. CLI exit code 3.
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pilesim
