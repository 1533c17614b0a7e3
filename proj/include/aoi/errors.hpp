#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

/// A linear system could not be solved (reducible chain, singular age balance).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The optimizer met a non-finite objective value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid simulation configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace aoi
