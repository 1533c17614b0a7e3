#pragma once

#include <span>

namespace aoi {

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;

  bool covers(double x) const { return x >= mean - half_width && x <= mean + half_width; }
};

/// Student-t interval over batch means treated as i.i.d. samples.  Needs at
/// least two batches.
ConfidenceInterval batch_means_ci(std::span<const double> batch_means, double level = 0.95);

}  // namespace aoi
