#pragma once

#include <map>
#include <span>
#include <string>

#include "sgl/volume.hpp"

namespace sgl {

enum class Classification { complete, incomplete, inconclusive };
enum class VerdictMethod { exact_series, exact_threshold, growth_fit };

std::string to_string(Classification c);
std::string to_string(VerdictMethod m);

struct Verdict {
  Classification classification = Classification::inconclusive;
  VerdictMethod method = VerdictMethod::growth_fit;
  std::map<std::string, double> evidence;
};

struct GrowthFitOptions {
  // Only grid points whose ln V is at least this fraction of the largest ln V are
  // fitted; the leading terms need large balls to dominate.
  double tail_fraction = 0.5;
  std::size_t min_points = 10;
  double gamma_cut = 2.0;
  double gamma_band = 0.05;
  double delta_cut = 1.05;
};

// Least-squares fit of ln ln V = gamma ln r + delta ln ln r + c. Returns complete
// when the fit is consistent with at most e^{c r^2 log r} growth and inconclusive
// otherwise; volume growth alone never proves incompleteness.
Verdict classify_growth(const VolumeProfile& p, const GrowthFitOptions& options = {});

// Parametric family: incomplete iff 1 < beta < 2.
Verdict birth_death_exact(double beta);

struct SeriesOptions {
  double tail_tolerance = 1e-6;  // convergent when the estimated tail falls below this
  double divergence_margin = 0.1;  // divergent when S(2N) - S(N) exceeds this
};

// Numeric weights pi_{r,r+1}, r = 0..M-1: inspects sum r / pi_{r,r+1} through the
// partial sums S(M/2) and S(M).
Verdict birth_death_exact(std::span<const double> weights, const SeriesOptions& options = {});

// Spherically symmetric tree: complete iff alpha <= 1.
Verdict tree_exact(double alpha);

struct PowerLawFit {
  double exponent = 0.0;
  double scale = 0.0;
  double offset = 0.0;
  double rss = 0.0;
};

// y = scale * x^exponent + offset, least squares in (scale, offset) for each
// exponent and a bracketed 1-D search over the exponent in [lo, hi].
PowerLawFit fit_power_law_offset(std::span<const double> x, std::span<const double> y,
                                 double lo = 0.01, double hi = 4.0);

// Growth exponent gamma in ln V ~ c r^gamma, estimated on the outermost
// `window_decades` of ball sizes by fitting r = A (ln V)^{1/gamma} + B.
struct GrowthExponent {
  double gamma = 0.0;
  std::size_t points = 0;
  double offset = 0.0;
};
GrowthExponent growth_exponent(const VolumeProfile& p, double window_decades = 0.5);

}  // namespace sgl
