#pragma once

#include <optional>
#include <vector>

#include "sgl/graph.hpp"

namespace sgl {

// A disjoint cycle cover encoded as a fixed-point-free permutation with
// successor[x] ~ x. Two-cycles are isolated edges.
struct CycleCover {
  std::vector<Vertex> successor;
};

// Finds a cover in which edge e = {u, v} appears, by matching the remaining
// vertices after forcing successor[u] = v.
std::optional<CycleCover> find_cycle_cover(const WeightedGraph& g, EdgeId e);
bool cycle_cover_feasible(const WeightedGraph& g, EdgeId e);

// Exhaustive permutation search; only for small graphs (n <= 10).
bool cycle_cover_feasible_brute_force(const WeightedGraph& g, EdgeId e);

// c_f(e): 1 on isolated edges of the cover, 1/2 on edges of longer cycles, else 0.
std::vector<double> cover_edge_weights(const WeightedGraph& g, const CycleCover& cover);

struct UnitWeighting {
  std::vector<double> weights;      // per edge; empty when infeasible
  std::optional<EdgeId> failing_edge;
  bool feasible() const { return !failing_edge.has_value(); }
};

// Positive edge weights summing to 1 around every vertex, as the uniform
// average of one cover per edge, or the first edge that lies in no cover.
UnitWeighting unit_vertex_weights(const WeightedGraph& g);

}  // namespace sgl
