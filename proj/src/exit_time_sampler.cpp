#include "sgl/exit_time_sampler.hpp"

#include <cmath>
#include <numbers>

namespace sgl {

namespace {

constexpr double pi = std::numbers::pi;

// Upper tail for large t: (4/pi) exp(-pi^2 t / 8), accurate to a relative
// 1e-29 once t exceeds about 7.
double tail_quantile(double survival) {
  return 8.0 / (pi * pi) * std::log(4.0 / (pi * survival));
}

}  // namespace

double UnitExitTime::cdf(double t) {
  if (t <= 0.0) return 0.0;
  if (t < 0.3) {
    double s = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double term = std::erfc((2.0 * k + 1.0) / std::sqrt(2.0 * t));
      s += (k % 2 == 0 ? 2.0 : -2.0) * term;
      if (term < 1e-300) break;
    }
    return s;
  }
  double s = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double m = 2.0 * k + 1.0;
    const double term = std::exp(-m * m * pi * pi * t / 8.0) / m;
    s += (k % 2 == 0 ? 1.0 : -1.0) * term;
    if (term < 1e-20) break;
  }
  return 1.0 - 4.0 / pi * s;
}

namespace {

double invert_cdf(double u) {
  double lo = 0.0, hi = 1.0;
  while (UnitExitTime::cdf(hi) < u) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (UnitExitTime::cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

UnitExitTime::UnitExitTime(std::size_t bins) : table_(bins + 1, 0.0) {
  for (std::size_t i = 1; i < bins; ++i) {
    table_[i] = invert_cdf(static_cast<double>(i) / static_cast<double>(bins));
  }
  table_[bins] = INFINITY;
}

const UnitExitTime& UnitExitTime::instance() {
  static const UnitExitTime sampler(1u << 15);
  return sampler;
}

double UnitExitTime::quantile(double u) const {
  const std::size_t n = bins();
  const double x = u * static_cast<double>(n);
  const std::size_t i = static_cast<std::size_t>(x);
  if (i >= n - 1) return tail_quantile(1.0 - u);
  // The left tail is too curved for linear interpolation; it has mass 1/bins.
  if (i == 0) return invert_cdf(u);
  const double frac = x - static_cast<double>(i);
  return table_[i] + frac * (table_[i + 1] - table_[i]);
}

}  // namespace sgl
