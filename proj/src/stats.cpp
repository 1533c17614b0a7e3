#include "aoi/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace aoi {

ConfidenceInterval batch_means_ci(std::span<const double> batch_means, double level) {
  const std::size_t n = batch_means.size();
  if (n < 2) throw std::invalid_argument("batch_means_ci: need at least two batches");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("batch_means_ci: level must be in (0, 1)");

  double mean = 0.0;
  for (double b : batch_means) mean += b;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double b : batch_means) ss += (b - mean) * (b - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - level) / 2.0));
  return {mean, t * sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace aoi
