#include "sgl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "sgl/errors.hpp"
#include "sgl/linear_program.hpp"

namespace sgl {

std::string to_string(LengthKind k) {
  switch (k) {
    case LengthKind::dE: return "dE";
    case LengthKind::dV: return "dV";
    case LengthKind::dW: return "dW";
    case LengthKind::induced_from_metric: return "induced_from_metric";
    case LengthKind::custom: return "custom";
  }
  return "unknown";
}

LengthKind length_kind_from_string(const std::string& s) {
  if (s == "dE") return LengthKind::dE;
  if (s == "dV") return LengthKind::dV;
  if (s == "dW") return LengthKind::dW;
  if (s == "induced_from_metric") return LengthKind::induced_from_metric;
  if (s == "custom") return LengthKind::custom;
  throw InvalidInput("unknown metric kind '" + s + "' (expected dE, dV or dW)");
}

EdgeLengths standard_lengths(const WeightedGraph& g, LengthKind kind) {
  EdgeLengths a;
  a.kind = kind;
  a.length.resize(g.edge_count());
  const auto pi = g.vertex_measures();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    switch (kind) {
      case LengthKind::dE: a.length[e] = 1.0 / std::sqrt(ed.weight); break;
      case LengthKind::dV: a.length[e] = 1.0 / std::sqrt(std::max(pi[ed.u], pi[ed.v])); break;
      case LengthKind::dW:
        a.length[e] = std::min(1.0, 1.0 / std::sqrt(std::max(pi[ed.u], pi[ed.v])));
        break;
      default: throw InvalidInput("standard_lengths accepts only dE, dV or dW");
    }
  }
  return a;
}

EdgeLengths custom_lengths(const WeightedGraph& g, std::vector<double> lengths) {
  if (lengths.size() != g.edge_count()) throw InvalidInput("one length per edge expected");
  for (double x : lengths) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput("edge lengths must be finite and >= 0");
  }
  return {std::move(lengths), LengthKind::custom};
}

EdgeLengths induced_from_metric(const WeightedGraph& g,
                                const std::function<double(Vertex, Vertex)>& rho) {
  EdgeLengths a;
  a.kind = LengthKind::induced_from_metric;
  a.length.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const double d = rho(e.u, e.v);
    if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidInput("metric must be finite and >= 0");
    a.length.push_back(d);
  }
  return a;
}

DistanceMap path_metric(const WeightedGraph& g, const EdgeLengths& a, Vertex source) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw InvalidInput("unknown source vertex " + std::to_string(source));
  if (a.length.size() != g.edge_count()) throw InvalidInput("edge lengths do not match graph");
  constexpr double inf = std::numeric_limits<double>::infinity();
  DistanceMap m;
  m.source = source;
  m.distance.assign(n, inf);
  m.parent.assign(n, source);
  m.contaminated.assign(n, 0);
  std::vector<char> settled(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  m.distance[source] = 0.0;
  m.contaminated[source] = g.on_frontier(source);
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (settled[x]) continue;
    settled[x] = 1;
    for (const Incidence& inc : g.neighbors(x)) {
      const Vertex y = inc.neighbor;
      if (settled[y]) continue;
      const double nd = d + a.length[inc.edge];
      if (nd < m.distance[y] || (nd == m.distance[y] && x < m.parent[y])) {
        m.distance[y] = nd;
        m.parent[y] = x;
        m.contaminated[y] = m.contaminated[x] || g.on_frontier(y);
        heap.push({nd, y});
      }
    }
  }
  if (g.on_frontier(source)) {
    m.trusted_radius = 0.0;
  } else {
    for (Vertex f : g.frontier()) {
      for (const Incidence& inc : g.neighbors(f)) {
        const Vertex y = inc.neighbor;
        if (!g.on_frontier(y) && !m.contaminated[y]) {
          m.trusted_radius = std::min(m.trusted_radius, m.distance[y]);
        }
      }
    }
  }
  return m;
}

double adaptedness_sum(const WeightedGraph& g, const EdgeLengths& a, Vertex x) {
  double s = 0.0;
  for (const Incidence& inc : g.neighbors(x)) {
    const double l = a.length[inc.edge];
    s += g.edge(inc.edge).weight * l * l;
  }
  return s;
}

AdaptednessReport adaptedness(const WeightedGraph& g, const EdgeLengths& a,
                              const AdaptednessOptions& options) {
  if (a.length.size() != g.edge_count()) throw InvalidInput("edge lengths do not match graph");
  AdaptednessReport r;
  bool any = false;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (g.on_frontier(x)) continue;
    const double s = adaptedness_sum(g, a, x);
    if (!any || s > r.c_sup) {
      r.c_sup = s;
      r.argmax = x;
    }
    if (!any || s < r.c_inf) {
      r.c_inf = s;
      r.argmin = x;
    }
    any = true;
  }
  r.adapted = any && std::isfinite(r.c_sup) && r.c_sup <= options.bound;
  r.strongly_adapted = r.adapted && r.c_inf >= options.strong_epsilon;
  return r;
}

double dual_path_metric(const WeightedGraph& g, const EdgeLengths& a, Vertex s, Vertex t) {
  const std::size_t n = g.vertex_count();
  if (s >= n || t >= n) throw InvalidInput("unknown vertex");
  if (s == t) return 0.0;
  // Potentials are shifted so that f >= 0 is harmless: maximize f_t - f_s subject
  // to +-(f_u - f_v) <= a(e). The origin is feasible, so no phase one is needed.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) continue;
    std::vector<double> row(n, 0.0);
    row[ed.u] = 1.0;
    row[ed.v] = -1.0;
    rows.push_back(row);
    rhs.push_back(a.length[e]);
    row[ed.u] = -1.0;
    row[ed.v] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(a.length[e]);
  }
  std::vector<double> objective(n, 0.0);
  objective[t] = 1.0;
  objective[s] = -1.0;
  return detail::maximize_nonnegative(objective, rows, rhs);
}

}  // namespace sgl
