#include "sgl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "sgl/errors.hpp"

namespace sgl {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges, std::vector<Vertex> frontier)
    : n_(n), edges_(std::move(edges)), frontier_(std::move(frontier)) {
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges_) {
    if (e.u >= n || e.v >= n) {
      throw InvalidInput("edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                         std::to_string(e.v) + ") with n = " + std::to_string(n));
    }
    ++deg[e.u];
    if (e.v != e.u) ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) offsets_[x + 1] = offsets_[x] + deg[x];
  incidences_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  measure_.assign(n, 0.0);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    incidences_[fill[e.u]++] = {e.v, id};
    measure_[e.u] += e.weight;
    if (e.v != e.u) {
      incidences_[fill[e.v]++] = {e.u, id};
      measure_[e.v] += e.weight;
    }
  }
  frontier_mask_.assign(n, 0);
  std::sort(frontier_.begin(), frontier_.end());
  frontier_.erase(std::unique(frontier_.begin(), frontier_.end()), frontier_.end());
  for (Vertex x : frontier_) {
    if (x >= n) throw InvalidInput("frontier vertex out of range: " + std::to_string(x));
    frontier_mask_[x] = 1;
  }
}

std::size_t WeightedGraph::max_degree() const {
  std::size_t d = 0;
  for (std::size_t x = 0; x < n_; ++x) d = std::max(d, offsets_[x + 1] - offsets_[x]);
  return d;
}

double WeightedGraph::vertex_measure(Vertex x) const {
  if (x >= n_) throw std::out_of_range("unknown vertex id " + std::to_string(x));
  return measure_[x];
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::nonpositive_weight: return "nonpositive weight";
    case ViolationKind::non_finite_weight: return "non-finite weight";
    case ViolationKind::loop: return "loop";
    case ViolationKind::duplicate_edge: return "duplicate edge";
    case ViolationKind::disconnected: return "disconnected";
    case ViolationKind::isolated_vertex: return "isolated vertex";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_graph(const WeightedGraph& g) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::string detail) {
    report.violations.push_back({k, std::move(detail)});
  };
  std::unordered_set<std::uint64_t> seen;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    const std::string tag = "edge " + std::to_string(id) + " (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ")";
    if (!std::isfinite(e.weight)) {
      add(ViolationKind::non_finite_weight, tag);
    } else if (e.weight <= 0.0) {
      add(ViolationKind::nonpositive_weight, tag);
    }
    if (e.u == e.v) {
      add(ViolationKind::loop, tag);
      continue;
    }
    const std::uint64_t lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
    if (!seen.insert((lo << 32) | hi).second) add(ViolationKind::duplicate_edge, tag);
  }
  const std::size_t n = g.vertex_count();
  for (Vertex x = 0; x < n; ++x) {
    bool has_proper = false;
    for (const Incidence& inc : g.neighbors(x)) has_proper |= inc.neighbor != x;
    if (!has_proper) add(ViolationKind::isolated_vertex, "vertex " + std::to_string(x));
  }
  if (n > 0) {
    std::vector<char> reached(n, 0);
    std::vector<Vertex> stack{0};
    reached[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.neighbors(x)) {
        if (!reached[inc.neighbor]) {
          reached[inc.neighbor] = 1;
          ++count;
          stack.push_back(inc.neighbor);
        }
      }
    }
    if (count != n) {
      add(ViolationKind::disconnected, std::to_string(n - count) + " vertices unreachable from 0");
    }
  }
  return report;
}

void require_valid(const WeightedGraph& g) {
  ValidationReport r = validate_graph(g);
  if (r.ok()) return;
  std::string msg = "invalid graph:";
  for (const Violation& v : r.violations) msg += " [" + to_string(v.kind) + ": " + v.detail + "]";
  throw InvalidInput(msg);
}

std::vector<double> jump_probabilities(const WeightedGraph& g, Vertex x) {
  const double total = g.vertex_measure(x);
  std::vector<double> p;
  p.reserve(g.degree(x));
  for (const Incidence& inc : g.neighbors(x)) p.push_back(g.edge(inc.edge).weight / total);
  return p;
}

}  // namespace sgl
