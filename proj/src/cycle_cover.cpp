#include "sgl/cycle_cover.hpp"

#include <algorithm>
#include <numeric>

#include "sgl/errors.hpp"

namespace sgl {

namespace {

// Kuhn's augmenting-path matching of left copies to right copies of the
// vertices, with arcs x -> y for every edge {x, y}.
class CoverMatcher {
 public:
  explicit CoverMatcher(const WeightedGraph& g)
      : g_(g), match_left_(g.vertex_count(), none), match_right_(g.vertex_count(), none),
        blocked_left_(g.vertex_count(), 0), blocked_right_(g.vertex_count(), 0),
        visited_(g.vertex_count(), 0) {}

  std::optional<CycleCover> run(Vertex u, Vertex v) {
    const std::size_t n = g_.vertex_count();
    match_left_[u] = v;
    match_right_[v] = u;
    blocked_left_[u] = 1;
    blocked_right_[v] = 1;
    for (Vertex x = 0; x < n; ++x) {
      if (blocked_left_[x]) continue;
      std::fill(visited_.begin(), visited_.end(), 0);
      if (!augment(x)) return std::nullopt;
    }
    CycleCover c;
    c.successor = match_left_;
    return c;
  }

 private:
  static constexpr Vertex none = static_cast<Vertex>(-1);
  const WeightedGraph& g_;
  std::vector<Vertex> match_left_, match_right_;
  std::vector<char> blocked_left_, blocked_right_, visited_;

  bool augment(Vertex x) {
    for (const Incidence& inc : g_.neighbors(x)) {
      const Vertex y = inc.neighbor;
      if (y == x || blocked_right_[y] || visited_[y]) continue;
      visited_[y] = 1;
      if (match_right_[y] == none || augment(match_right_[y])) {
        match_left_[x] = y;
        match_right_[y] = x;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<CycleCover> find_cycle_cover(const WeightedGraph& g, EdgeId e) {
  if (e >= g.edge_count()) throw InvalidInput("unknown edge id");
  const Edge& ed = g.edge(e);
  if (ed.u == ed.v) return std::nullopt;
  return CoverMatcher(g).run(ed.u, ed.v);
}

bool cycle_cover_feasible(const WeightedGraph& g, EdgeId e) {
  return find_cycle_cover(g, e).has_value();
}

bool cycle_cover_feasible_brute_force(const WeightedGraph& g, EdgeId e) {
  const std::size_t n = g.vertex_count();
  if (n > 10) throw InvalidInput("brute-force cycle cover search is limited to 10 vertices");
  if (e >= g.edge_count()) throw InvalidInput("unknown edge id");
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Edge& ed : g.edges()) {
    if (ed.u != ed.v) adj[ed.u][ed.v] = adj[ed.v][ed.u] = 1;
  }
  const Edge& target = g.edge(e);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Vertex x = 0; x < n && ok; ++x) ok = adj[x][perm[x]];
    if (ok && (perm[target.u] == target.v || perm[target.v] == target.u)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<double> cover_edge_weights(const WeightedGraph& g, const CycleCover& cover) {
  std::vector<double> c(g.edge_count(), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const bool forward = cover.successor[ed.u] == ed.v;
    const bool backward = cover.successor[ed.v] == ed.u;
    if (forward && backward) {
      c[e] = 1.0;
    } else if (forward || backward) {
      c[e] = 0.5;
    }
  }
  return c;
}

UnitWeighting unit_vertex_weights(const WeightedGraph& g) {
  UnitWeighting w;
  const std::size_t m = g.edge_count();
  if (m == 0) {
    w.failing_edge = 0;
    return w;
  }
  std::vector<double> total(m, 0.0);
  for (EdgeId f = 0; f < m; ++f) {
    auto cover = find_cycle_cover(g, f);
    if (!cover) {
      w.failing_edge = f;
      return w;
    }
    const std::vector<double> cf = cover_edge_weights(g, *cover);
    for (EdgeId e = 0; e < m; ++e) total[e] += cf[e];
  }
  for (double& t : total) t /= static_cast<double>(m);
  w.weights = std::move(total);
  return w;
}

}  // namespace sgl
