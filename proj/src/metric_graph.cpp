#include "sgl/metric_graph.hpp"

#include <cmath>

#include "sgl/volume.hpp"

namespace sgl {

namespace {

void check_segment(const SegmentParams& s, const char* what) {
  const bool ok = s.length > 0.0 && s.conductance > 0.0 && s.density > 0.0 &&
                  std::isfinite(s.length) && std::isfinite(s.conductance) &&
                  std::isfinite(s.density);
  if (!ok) throw InvalidInput(std::string(what) + " parameters must be positive and finite");
}

}  // namespace

MetricGraph::MetricGraph(WeightedGraph topology, std::vector<SegmentParams> edges,
                         std::vector<std::optional<SegmentParams>> loops)
    : topology_(std::move(topology)), edges_(std::move(edges)), loops_(std::move(loops)) {
  if (edges_.size() != topology_.edge_count()) {
    throw InvalidInput("metric graph needs one parameter triple per edge");
  }
  if (loops_.empty()) loops_.resize(topology_.vertex_count());
  if (loops_.size() != topology_.vertex_count()) {
    throw InvalidInput("metric graph needs one loop slot per vertex");
  }
  for (const SegmentParams& s : edges_) check_segment(s, "edge");
  for (const auto& l : loops_) {
    if (l) check_segment(*l, "loop");
  }
  for (Vertex x = 0; x < topology_.vertex_count(); ++x) {
    if (topology_.degree(x) == 0) {
      throw InvalidInput("vertex " + std::to_string(x) + " has no ordinary edge");
    }
  }
}

StarView star_of(const MetricGraph& mg, Vertex x) {
  const WeightedGraph& g = mg.topology();
  if (x >= g.vertex_count()) throw InvalidInput("unknown vertex " + std::to_string(x));
  StarView s;
  s.center = x;
  for (const Incidence& inc : g.neighbors(x)) {
    const SegmentParams& p = mg.edge(inc.edge);
    s.edges.push_back({p.length, p.conductance, p.density, inc.neighbor});
  }
  if (s.edges.empty()) throw InvalidInput("star of vertex " + std::to_string(x) + " is empty");
  if (const auto& l = mg.loop(x)) s.loop = BasicStarEdge<double>{l->length, 2.0 * l->conductance, l->density, x};
  return s;
}

double edge_measure(const SegmentParams& e) { return e.density * e.conductance * e.length; }

double ball_measure_upper(const MetricGraph& mg, Vertex x0, double r) {
  if (!(r >= 0.0)) throw InvalidInput("radius must be nonnegative");
  const WeightedGraph& g = mg.topology();
  std::vector<double> lengths;
  lengths.reserve(g.edge_count());
  for (const SegmentParams& p : mg.edges()) lengths.push_back(std::sqrt(p.density) * p.length);
  const DistanceMap dm = path_metric(g, custom_lengths(g, std::move(lengths)), x0);
  double total = 0.0;
  for (Vertex x : ball(g, dm, r)) {
    for (const Incidence& inc : g.neighbors(x)) total += edge_measure(mg.edge(inc.edge));
    if (const auto& l = mg.loop(x)) total += edge_measure(*l);
  }
  return total;
}

MetricGraph synchronize(const WeightedGraph& g, const EdgeLengths& a) {
  if (a.length.size() != g.edge_count()) throw InvalidInput("edge lengths do not match graph");
  const AdaptednessReport rep = adaptedness(g, a);
  if (!std::isfinite(rep.c_sup)) throw InvalidInput("edge lengths are not adapted");
  std::vector<SegmentParams> edges;
  edges.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double len = a.length[e];
    if (!(len > 0.0)) {
      throw InvalidInput("edge " + std::to_string(e) + " has zero length; cannot synchronize");
    }
    edges.push_back({1.0, g.edge(e).weight, len * len});
  }
  std::vector<std::optional<SegmentParams>> loops(g.vertex_count(), SegmentParams{1.0, 0.5, 1.0});
  return MetricGraph(g, std::move(edges), std::move(loops));
}

MetricGraph regauge(const MetricGraph& mg, const std::vector<double>& phi_edges,
                    const std::vector<double>& phi_loops) {
  if (phi_edges.size() != mg.edges().size() || phi_loops.size() != mg.vertex_count()) {
    throw InvalidInput("gauge needs one factor per edge and per vertex loop");
  }
  auto apply = [](const SegmentParams& s, double phi) {
    if (!(phi > 0.0)) throw InvalidInput("gauge factors must be positive");
    return SegmentParams{s.length * phi, s.conductance * phi, s.density / (phi * phi)};
  };
  std::vector<SegmentParams> edges;
  for (std::size_t e = 0; e < phi_edges.size(); ++e) edges.push_back(apply(mg.edge(e), phi_edges[e]));
  std::vector<std::optional<SegmentParams>> loops(mg.vertex_count());
  for (Vertex x = 0; x < mg.vertex_count(); ++x) {
    if (mg.loop(x)) loops[x] = apply(*mg.loop(x), phi_loops[x]);
  }
  return MetricGraph(mg.topology(), std::move(edges), std::move(loops));
}

std::vector<ExitLaw> exit_laws(const MetricGraph& mg) {
  std::vector<ExitLaw> out;
  out.reserve(mg.vertex_count());
  for (Vertex x = 0; x < mg.vertex_count(); ++x) out.push_back(exit_time_moments(star_of(mg, x)));
  return out;
}

}  // namespace sgl
