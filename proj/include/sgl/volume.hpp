#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sgl/families.hpp"
#include "sgl/graph.hpp"
#include "sgl/metrics.hpp"

namespace sgl {

// Closed ball {x : d(x0, x) <= r}, sorted by id. Throws TruncationTooSmall when
// r reaches the trusted radius of the distance map.
std::vector<Vertex> ball(const WeightedGraph& g, const DistanceMap& dm, double r);
std::vector<Vertex> ball(const WeightedGraph& g, const EdgeLengths& a, Vertex x0, double r);

struct VolumeProfile {
  Vertex center = 0;
  LengthKind metric = LengthKind::custom;
  std::vector<double> radius;
  // ln V(r). Volumes of the larger trees overflow doubles, so only logs are kept.
  std::vector<double> log_volume;
  // I(R) = integral from r0 to R of r / ln V(r), trapezoid rule on the grid; 0 for R <= r0.
  std::vector<double> integral;
  double r0 = 0.0;
  double trusted_radius = INFINITY;

  std::size_t size() const { return radius.size(); }
  double volume(std::size_t i) const { return std::exp(log_volume[i]); }
};

// Radii r_min * ratio^k up to r_max.
std::vector<double> geometric_grid(double r_min, double r_max, double ratio = 1.1);

// Radii at which the ball gains vertices, thinned to about max_points picks at
// geometrically spaced ball sizes. Only radii below the trusted radius are used.
std::vector<double> breakpoint_grid(const DistanceMap& dm, std::size_t max_points = 300);

// r0 = nullopt picks the first grid radius with V >= 2; an explicit r0 is snapped
// up to the grid and must satisfy V(r0) >= 2. Grid radii at or beyond the
// trusted radius are dropped; if none remain, TruncationTooSmall is thrown.
VolumeProfile volume_profile(const WeightedGraph& g, const DistanceMap& dm,
                             const std::vector<double>& grid, std::optional<double> r0 = std::nullopt);
VolumeProfile volume_profile(const WeightedGraph& g, const EdgeLengths& a, Vertex x0,
                             const std::vector<double>& grid, std::optional<double> r0 = std::nullopt);

// Profile of a radially symmetric structure given per-level log counts and the
// distance of each level from the center (nondecreasing). Levels past the last
// entry are unknown, so the trusted radius is the last level distance.
VolumeProfile radial_volume_profile(const std::vector<double>& level_log_count,
                                    const std::vector<double>& level_distance,
                                    const std::vector<double>& grid,
                                    std::optional<double> r0 = std::nullopt,
                                    LengthKind metric = LengthKind::custom);

// Root-to-level distances of the untruncated spherically symmetric tree under
// dE, dV or dW.
std::vector<double> tree_level_distances(const TreeLevels& levels, LengthKind kind);

}  // namespace sgl
