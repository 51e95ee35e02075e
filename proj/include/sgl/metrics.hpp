#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sgl/graph.hpp"

namespace sgl {

enum class LengthKind { dE, dV, dW, induced_from_metric, custom };

std::string to_string(LengthKind k);
LengthKind length_kind_from_string(const std::string& s);

// One nonnegative length per edge id. Lengths are plain lengths: path metrics
// add them up and adaptedness sums use their squares.
struct EdgeLengths {
  std::vector<double> length;
  LengthKind kind = LengthKind::custom;
};

EdgeLengths standard_lengths(const WeightedGraph& g, LengthKind kind);
EdgeLengths custom_lengths(const WeightedGraph& g, std::vector<double> lengths);

// a(e) = rho(u, v) for every edge.
EdgeLengths induced_from_metric(const WeightedGraph& g,
                                const std::function<double(Vertex, Vertex)>& rho);

struct DistanceMap {
  Vertex source = 0;
  std::vector<double> distance;  // +inf when unreachable
  std::vector<Vertex> parent;    // parent[source] == source
  std::vector<char> contaminated;
  // Distances strictly below this radius cannot depend on the truncation.
  double trusted_radius = std::numeric_limits<double>::infinity();
};

DistanceMap path_metric(const WeightedGraph& g, const EdgeLengths& a, Vertex source);

struct AdaptednessReport {
  double c_sup = 0.0;
  double c_inf = 0.0;
  Vertex argmax = 0;
  Vertex argmin = 0;
  bool adapted = false;
  bool strongly_adapted = false;
};

struct AdaptednessOptions {
  double strong_epsilon = 1e-2;
  double bound = std::numeric_limits<double>::infinity();
};

// Sums of pi(e) a(e)^2 over E(x), taken over non-frontier vertices.
AdaptednessReport adaptedness(const WeightedGraph& g, const EdgeLengths& a,
                              const AdaptednessOptions& options = {});
double adaptedness_sum(const WeightedGraph& g, const EdgeLengths& a, Vertex x);

// sup { f(t) - f(s) : |f(u) - f(v)| <= a(e) } via a dense simplex. Exponential
// worst case; meant for cross-checking on small graphs.
double dual_path_metric(const WeightedGraph& g, const EdgeLengths& a, Vertex s, Vertex t);

}  // namespace sgl
