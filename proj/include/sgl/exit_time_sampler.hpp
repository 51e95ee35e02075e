#pragma once

#include <vector>

namespace sgl {

// Exit time of standard Brownian motion from (-1, 1) started at 0, sampled by
// inversion of a tabulated distribution function. E tau = 1, E tau^2 = 5/3.
class UnitExitTime {
 public:
  static const UnitExitTime& instance();

  // P(tau <= t), using the image series for small t and the eigenfunction series otherwise.
  static double cdf(double t);

  // Quantile for u in (0, 1).
  double quantile(double u) const;

  std::size_t bins() const { return table_.size() - 1; }

 private:
  explicit UnitExitTime(std::size_t bins);
  std::vector<double> table_;  // quantiles at i / bins
};

}  // namespace sgl
