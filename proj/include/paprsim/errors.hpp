#pragma once

#include <stdexcept>
#include <string>

namespace paprsim {

// Precondition violations raised by the signal-processing operations use
// std::invalid_argument. The classes below carry the categories the CLI maps
// onto exit codes.

/// Invalid or unknown configuration key/value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filter design or other numeric failure.
class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paprsim
