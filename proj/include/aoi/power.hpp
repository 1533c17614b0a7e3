#pragma once

#include <cmath>
#include <stdexcept>

namespace aoi {

/// Processor power P = (E[C] mu)^alpha in units where k_P = 1.  Idle
/// processors draw nothing.
struct PowerModel {
  double budget = 8.0;       // P
  double mean_cycles = 1.0;  // E[C]
  double alpha = 5.0;

  void validate() const {
    if (!(budget > 0.0) || !std::isfinite(budget)) throw std::invalid_argument("power budget must be positive");
    if (!(mean_cycles > 0.0) || !std::isfinite(mean_cycles))
      throw std::invalid_argument("mean cycles E[C] must be positive");
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be >= 1");
  }

  /// Power drawn by one processor running a step at service rate mu.
  double step_power(double mu) const { return std::pow(mean_cycles * mu, alpha); }
};

}  // namespace aoi
