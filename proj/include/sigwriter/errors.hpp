#pragma once

#include <stdexcept>
#include <string>

namespace sigwriter {

/// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid pipeline parameters or manifest contents.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Feature data produced under a different codebook or parameter fingerprint.
class DimensionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sigwriter
