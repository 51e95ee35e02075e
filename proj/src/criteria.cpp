#include "sgl/criteria.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "sgl/errors.hpp"

namespace sgl {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::complete: return "complete";
    case Classification::incomplete: return "incomplete";
    case Classification::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string to_string(VerdictMethod m) {
  switch (m) {
    case VerdictMethod::exact_series: return "exact_series";
    case VerdictMethod::exact_threshold: return "exact_threshold";
    case VerdictMethod::growth_fit: return "growth_fit";
  }
  return "unknown";
}

Verdict classify_growth(const VolumeProfile& p, const GrowthFitOptions& o) {
  double max_log = 0.0;
  for (double lv : p.log_volume) max_log = std::max(max_log, lv);
  std::vector<std::size_t> use;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double lv = p.log_volume[i];
    if (p.radius[i] > std::numbers::e && lv > 1.0 && lv >= o.tail_fraction * max_log) use.push_back(i);
  }
  if (use.size() < o.min_points) {
    throw InsufficientData("growth fit needs at least " + std::to_string(o.min_points) +
                           " usable grid points, got " + std::to_string(use.size()));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(use.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::size_t i = use[static_cast<std::size_t>(k)];
    const double lr = std::log(p.radius[i]);
    a(k, 0) = lr;
    a(k, 1) = std::log(lr);
    a(k, 2) = 1.0;
    b[k] = std::log(p.log_volume[i]);
  }
  const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(b);
  Verdict v;
  v.method = VerdictMethod::growth_fit;
  const double gamma = coef[0], delta = coef[1];
  v.evidence = {{"gamma", gamma},
                {"delta", delta},
                {"intercept", coef[2]},
                {"points", static_cast<double>(use.size())},
                {"r_min", p.radius[use.front()]},
                {"r_max", p.radius[use.back()]},
                {"integral", p.integral.back()}};
  const bool below = gamma < o.gamma_cut;
  const bool borderline = std::fabs(gamma - o.gamma_cut) <= o.gamma_band && delta <= o.delta_cut;
  v.classification = below || borderline ? Classification::complete : Classification::inconclusive;
  return v;
}

Verdict birth_death_exact(double beta) {
  if (!(beta >= 0.0 && beta < 2.0)) throw InvalidInput("beta must lie in [0, 2)");
  Verdict v;
  v.method = VerdictMethod::exact_threshold;
  v.classification = beta > 1.0 ? Classification::incomplete : Classification::complete;
  v.evidence = {{"beta", beta}, {"threshold", 1.0}};
  return v;
}

Verdict birth_death_exact(std::span<const double> w, const SeriesOptions& o) {
  if (w.size() < 4) throw InvalidInput("need at least four weights");
  for (double x : w) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("weights must be positive and finite");
  }
  const std::size_t m = w.size(), half = m / 2;
  auto term = [&](std::size_t r) { return static_cast<double>(r) / w[r]; };
  // Neumaier-compensated partial sums.
  double s = 0.0, c = 0.0, s_half = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double t = term(r);
    const double u = s + t;
    c += std::fabs(s) >= std::fabs(t) ? (s - u) + t : (t - u) + s;
    s = u;
    if (r + 1 == half) s_half = s + c;
  }
  s += c;
  const double t_mid = term(half), t_end = term(m - 1);
  const double p = -std::log(t_end / t_mid) / std::log(static_cast<double>(m - 1) / static_cast<double>(half));
  // Integral comparison for a power-law tail t(r) ~ r^-p beyond the last index.
  const double tail = p > 1.0 ? t_end * static_cast<double>(m - 1) / (p - 1.0)
                              : std::numeric_limits<double>::infinity();
  Verdict v;
  v.method = VerdictMethod::exact_series;
  v.evidence = {{"partial_sum_half", s_half}, {"partial_sum", s},
                {"increment", s - s_half}, {"tail_exponent", p}, {"tail_estimate", tail}};
  if (tail < o.tail_tolerance) {
    v.classification = Classification::incomplete;
  } else if (s - s_half > o.divergence_margin) {
    v.classification = Classification::complete;
  } else {
    v.classification = Classification::inconclusive;
  }
  return v;
}

Verdict tree_exact(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidInput("alpha must lie in (0, 2)");
  Verdict v;
  v.method = VerdictMethod::exact_threshold;
  v.classification = alpha <= 1.0 ? Classification::complete : Classification::incomplete;
  v.evidence = {{"alpha", alpha}, {"threshold", 1.0}};
  return v;
}

namespace {

PowerLawFit linear_fit(std::span<const double> x, std::span<const double> y, double k) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::pow(x[i], k);
    sx += u;
    sy += y[i];
    sxx += u * u;
    sxy += u * y[i];
  }
  const double dn = static_cast<double>(n);
  const double det = dn * sxx - sx * sx;
  PowerLawFit f;
  f.exponent = k;
  f.scale = det != 0.0 ? (dn * sxy - sx * sy) / det : 0.0;
  f.offset = (sy - f.scale * sx) / dn;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.scale * std::pow(x[i], k) - f.offset;
    f.rss += r * r;
  }
  return f;
}

}  // namespace

PowerLawFit fit_power_law_offset(std::span<const double> x, std::span<const double> y, double lo,
                                 double hi) {
  if (x.size() != y.size() || x.size() < 3) throw InsufficientData("power-law fit needs >= 3 points");
  for (double v : x) {
    if (!(v > 0.0)) throw InvalidInput("power-law fit needs positive abscissae");
  }
  const int scan = 400;
  double best_k = lo, best_rss = INFINITY;
  for (int i = 0; i <= scan; ++i) {
    const double k = lo * std::pow(hi / lo, static_cast<double>(i) / scan);
    const double rss = linear_fit(x, y, k).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_k = k;
    }
  }
  // Golden-section refinement around the best scan point.
  const double step = std::pow(hi / lo, 1.0 / scan);
  double a = std::max(lo, best_k / step), b = std::min(hi, best_k * step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = linear_fit(x, y, c).rss, fd = linear_fit(x, y, d).rss;
  for (int it = 0; it < 200 && b - a > 1e-12 * b; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = linear_fit(x, y, c).rss;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = linear_fit(x, y, d).rss;
    }
  }
  return linear_fit(x, y, 0.5 * (a + b));
}

GrowthExponent growth_exponent(const VolumeProfile& p, double window_decades) {
  if (!(window_decades > 0.0)) throw InvalidInput("window must be positive");
  double max_log = 0.0;
  for (double lv : p.log_volume) max_log = std::max(max_log, lv);
  const double cut = max_log - window_decades * std::log(10.0);
  std::vector<double> lv, r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.log_volume[i] >= cut && p.log_volume[i] > 0.0) {
      lv.push_back(p.log_volume[i]);
      r.push_back(p.radius[i]);
    }
  }
  if (lv.size() < 5) throw InsufficientData("growth exponent needs at least 5 points in the window");
  const PowerLawFit f = fit_power_law_offset(lv, r, 0.01, 4.0);
  return {1.0 / f.exponent, lv.size(), f.offset};
}

}  // namespace sgl
