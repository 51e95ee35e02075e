#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sgl {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  double weight;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

// Undirected weighted graph with CSR adjacency. Immutable after construction.
// The constructor only checks that endpoints are in range, so malformed graphs
// can still be built and handed to validate_graph.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<Edge> edges, std::vector<Vertex> frontier = {});

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> neighbors(Vertex x) const {
    return {incidences_.data() + offsets_[x], incidences_.data() + offsets_[x + 1]};
  }
  std::size_t degree(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }
  std::size_t max_degree() const;

  // pi_x = sum of incident edge weights. Throws std::out_of_range for unknown ids.
  double vertex_measure(Vertex x) const;
  std::span<const double> vertex_measures() const { return measure_; }

  bool on_frontier(Vertex x) const { return frontier_mask_[x] != 0; }
  std::span<const Vertex> frontier() const { return frontier_; }

  Vertex other_end(EdgeId e, Vertex x) const {
    const Edge& ed = edges_[e];
    return ed.u == x ? ed.v : ed.u;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidences_;
  std::vector<double> measure_;
  std::vector<Vertex> frontier_;
  std::vector<char> frontier_mask_;
};

enum class ViolationKind {
  nonpositive_weight,
  non_finite_weight,
  loop,
  duplicate_edge,
  disconnected,
  isolated_vertex,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate_graph(const WeightedGraph& g);

// Throws InvalidInput listing every violation when the report is not empty.
void require_valid(const WeightedGraph& g);

// VSRW jump law pi_xy / pi_x, aligned with g.neighbors(x).
std::vector<double> jump_probabilities(const WeightedGraph& g, Vertex x);

}  // namespace sgl
