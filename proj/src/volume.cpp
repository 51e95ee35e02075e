#include "sgl/volume.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "sgl/errors.hpp"

namespace sgl {

namespace {

// Hop distance from x0 to the nearest frontier vertex, 0 if there is none.
std::size_t frontier_hops(const WeightedGraph& g, Vertex x0) {
  if (g.frontier().empty()) return 0;
  std::vector<std::size_t> hops(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  std::queue<Vertex> q;
  hops[x0] = 0;
  q.push(x0);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    if (g.on_frontier(x)) return hops[x];
    for (const Incidence& inc : g.neighbors(x)) {
      if (hops[inc.neighbor] == std::numeric_limits<std::size_t>::max()) {
        hops[inc.neighbor] = hops[x] + 1;
        q.push(inc.neighbor);
      }
    }
  }
  return 0;
}

[[noreturn]] void truncation_error(const WeightedGraph& g, const DistanceMap& dm, double r) {
  const std::size_t hops = frontier_hops(g, dm.source);
  std::size_t suggested = 0;
  if (hops > 0 && dm.trusted_radius > 0.0) {
    // Linear extrapolation in hop depth; distances usually grow sublinearly, so
    // treat this as a lower estimate.
    suggested = static_cast<std::size_t>(std::ceil(1.25 * static_cast<double>(hops) * r /
                                                   dm.trusted_radius));
  }
  throw TruncationTooSmall("radius " + std::to_string(r) + " reaches the truncation frontier (trusted radius " +
                               std::to_string(dm.trusted_radius) + "); enlarge the truncation, at least about " +
                               std::to_string(suggested) + " hops",
                           r, dm.trusted_radius, suggested);
}

void finish_integral(VolumeProfile& p, std::optional<double> r0) {
  const std::size_t n = p.radius.size();
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    const bool big_enough = p.log_volume[i] >= std::log(2.0) - 1e-12;
    if (r0) {
      if (p.radius[i] >= *r0) {
        if (!big_enough) throw InvalidInput("r0 must be at a radius where the ball has at least 2 vertices");
        start = i;
        break;
      }
    } else if (big_enough) {
      start = i;
      break;
    }
  }
  if (start == n) throw InsufficientData("no grid radius with at least two vertices in the ball");
  p.r0 = p.radius[start];
  p.integral.assign(n, 0.0);
  auto integrand = [&](std::size_t i) {
    return p.radius[i] / std::max(p.log_volume[i], std::log(2.0));
  };
  for (std::size_t i = start + 1; i < n; ++i) {
    p.integral[i] = p.integral[i - 1] +
                    0.5 * (integrand(i) + integrand(i - 1)) * (p.radius[i] - p.radius[i - 1]);
  }
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidInput("empty radius grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw InvalidInput("radius grid must be nonnegative and strictly increasing");
    }
  }
}

}  // namespace

std::vector<Vertex> ball(const WeightedGraph& g, const DistanceMap& dm, double r) {
  if (!(r >= 0.0)) throw InvalidInput("radius must be nonnegative");
  if (!(r < dm.trusted_radius)) truncation_error(g, dm, r);
  std::vector<Vertex> out;
  for (Vertex x = 0; x < dm.distance.size(); ++x) {
    if (dm.distance[x] <= r) {
      if (dm.contaminated[x]) truncation_error(g, dm, r);
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Vertex> ball(const WeightedGraph& g, const EdgeLengths& a, Vertex x0, double r) {
  return ball(g, path_metric(g, a, x0), r);
}

std::vector<double> geometric_grid(double r_min, double r_max, double ratio) {
  if (!(r_min > 0.0) || !(r_max >= r_min) || !(ratio > 1.0)) {
    throw InvalidInput("geometric grid needs 0 < r_min <= r_max and ratio > 1");
  }
  std::vector<double> grid;
  for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= ratio) grid.push_back(r);
  return grid;
}

std::vector<double> breakpoint_grid(const DistanceMap& dm, std::size_t max_points) {
  std::vector<double> d;
  for (std::size_t x = 0; x < dm.distance.size(); ++x) {
    if (dm.distance[x] < dm.trusted_radius && !dm.contaminated[x]) d.push_back(dm.distance[x]);
  }
  std::sort(d.begin(), d.end());
  std::vector<double> grid;
  if (d.empty() || max_points == 0) return grid;
  const double m = static_cast<double>(d.size());
  for (std::size_t j = 0; j <= max_points; ++j) {
    const double rank = std::exp(std::log(m) * static_cast<double>(j) / static_cast<double>(max_points));
    const std::size_t k = std::min(d.size(), std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(rank))));
    const double r = d[k - 1];
    if (grid.empty() || r > grid.back()) grid.push_back(r);
  }
  return grid;
}

VolumeProfile volume_profile(const WeightedGraph& g, const DistanceMap& dm,
                             const std::vector<double>& grid, std::optional<double> r0) {
  check_grid(grid);
  VolumeProfile p;
  p.center = dm.source;
  p.trusted_radius = dm.trusted_radius;
  std::vector<double> d;
  d.reserve(dm.distance.size());
  for (double x : dm.distance) {
    if (std::isfinite(x)) d.push_back(x);
  }
  std::sort(d.begin(), d.end());
  for (double r : grid) {
    if (!(r < dm.trusted_radius)) break;
    const auto count = std::upper_bound(d.begin(), d.end(), r) - d.begin();
    p.radius.push_back(r);
    p.log_volume.push_back(std::log(static_cast<double>(count)));
  }
  if (p.radius.empty()) truncation_error(g, dm, grid.front());
  finish_integral(p, r0);
  return p;
}

VolumeProfile volume_profile(const WeightedGraph& g, const EdgeLengths& a, Vertex x0,
                             const std::vector<double>& grid, std::optional<double> r0) {
  VolumeProfile p = volume_profile(g, path_metric(g, a, x0), grid, r0);
  p.metric = a.kind;
  return p;
}

VolumeProfile radial_volume_profile(const std::vector<double>& level_log_count,
                                    const std::vector<double>& level_distance,
                                    const std::vector<double>& grid, std::optional<double> r0,
                                    LengthKind metric) {
  check_grid(grid);
  if (level_log_count.size() != level_distance.size() || level_distance.empty()) {
    throw InvalidInput("one distance per level expected");
  }
  for (std::size_t i = 1; i < level_distance.size(); ++i) {
    if (level_distance[i] < level_distance[i - 1]) throw InvalidInput("level distances must be nondecreasing");
  }
  VolumeProfile p;
  p.metric = metric;
  p.trusted_radius = level_distance.back();
  // Cumulative log volume through each level.
  std::vector<double> cumulative(level_log_count.size());
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < level_log_count.size(); ++i) {
    const double a = std::max(acc, level_log_count[i]), b = std::min(acc, level_log_count[i]);
    acc = b == -std::numeric_limits<double>::infinity() ? a : a + std::log1p(std::exp(b - a));
    cumulative[i] = acc;
  }
  for (double r : grid) {
    if (!(r < p.trusted_radius)) break;
    const auto k = std::upper_bound(level_distance.begin(), level_distance.end(), r) - level_distance.begin();
    if (k == 0) throw InvalidInput("grid radius below the center level distance");
    p.radius.push_back(r);
    p.log_volume.push_back(cumulative[static_cast<std::size_t>(k - 1)]);
  }
  if (p.radius.empty()) {
    throw TruncationTooSmall("every grid radius reaches the last known level", grid.front(),
                             p.trusted_radius, 0);
  }
  finish_integral(p, r0);
  return p;
}

std::vector<double> tree_level_distances(const TreeLevels& levels, LengthKind kind) {
  std::vector<double> d(levels.depth + 1, 0.0);
  for (std::size_t r = 0; r < levels.depth; ++r) {
    double len = 1.0;  // unit weights: dE length is 1
    if (kind == LengthKind::dV || kind == LengthKind::dW) {
      len = 1.0 / std::sqrt(std::max(levels.vertex_measure[r], levels.vertex_measure[r + 1]));
      if (kind == LengthKind::dW) len = std::min(1.0, len);
    } else if (kind != LengthKind::dE) {
      throw InvalidInput("tree level distances support dE, dV and dW");
    }
    d[r + 1] = d[r] + len;
  }
  return d;
}

}  // namespace sgl
