#include "sgl/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sgl/errors.hpp"

namespace sgl {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("bad field '") + key + "': " + e.what());
  }
}

Json maybe_number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {
std::string format_mantissa(double m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", m);
  return buf;
}
}  // namespace

std::string format_exp(double log_value) {
  // exp() of a log carries ~1e-15 relative error, so 15 digits is all that is meaningful.
  char buf[64];
  if (log_value < 700.0) {
    std::snprintf(buf, sizeof buf, "%.15g", std::exp(log_value));
    return buf;
  }
  const double log10v = log_value / std::log(10.0);
  double exponent = std::floor(log10v);
  double mantissa = std::pow(10.0, log10v - exponent);
  if (std::stod(format_mantissa(mantissa)) >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  std::snprintf(buf, sizeof buf, "%se%.0f", format_mantissa(mantissa).c_str(), exponent);
  return buf;
}

Json graph_to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.weight}));
  Json frontier = Json::array();
  for (Vertex x : g.frontier()) frontier.push_back(x);
  return Json{{"n", g.vertex_count()}, {"edges", edges}, {"frontier", frontier}};
}

WeightedGraph graph_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "n");
  std::vector<Edge> edges;
  for (const Json& e : get<Json>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) throw InvalidInput("edges must be [u, v, weight] triples");
    edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<double>()});
  }
  std::vector<Vertex> frontier;
  if (j.contains("frontier")) frontier = j.at("frontier").get<std::vector<Vertex>>();
  return WeightedGraph(n, std::move(edges), std::move(frontier));
}

Json family_to_json(const FamilySpec& s) {
  Json params;
  switch (s.kind) {
    case FamilyKind::birth_death: params = {{"beta", s.beta}, {"n", s.size}}; break;
    case FamilyKind::spherical_tree: params = {{"alpha", s.alpha}, {"depth", s.size}}; break;
    case FamilyKind::antitree: params = {{"r", s.branching}, {"n", s.size}}; break;
    case FamilyKind::lattice: params = {{"width", s.width}, {"height", s.height}}; break;
    case FamilyKind::explicit_graph: params = {{"path", s.path}}; break;
  }
  return Json{{"family", to_string(s.kind)}, {"params", params}};
}

FamilySpec family_from_json(const Json& j) {
  FamilySpec s;
  s.kind = family_from_string(get<std::string>(j, "family"));
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  switch (s.kind) {
    case FamilyKind::birth_death:
      s.beta = get<double>(params, "beta");
      s.size = get<std::size_t>(params, "n");
      break;
    case FamilyKind::spherical_tree:
      s.alpha = get<double>(params, "alpha");
      s.size = get<std::size_t>(params, "depth");
      break;
    case FamilyKind::antitree:
      s.branching = get<std::string>(params, "r");
      s.size = get<std::size_t>(params, "n");
      break;
    case FamilyKind::lattice:
      s.width = get<std::size_t>(params, "width");
      s.height = get<std::size_t>(params, "height");
      break;
    case FamilyKind::explicit_graph: s.path = get<std::string>(params, "path"); break;
  }
  validate_family(s);
  return s;
}

Json lengths_to_json(const EdgeLengths& a) { return Json(a.length); }

EdgeLengths lengths_from_json(const WeightedGraph& g, const Json& j) {
  return custom_lengths(g, j.get<std::vector<double>>());
}

Json metric_graph_to_json(const MetricGraph& mg) {
  Json edges = Json::array(), loops = Json::array();
  const WeightedGraph& g = mg.topology();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const SegmentParams& p = mg.edge(e);
    edges.push_back(Json::array({g.edge(e).u, g.edge(e).v, p.length, p.conductance, p.density}));
  }
  for (Vertex x = 0; x < mg.vertex_count(); ++x) {
    if (const auto& l = mg.loop(x)) loops.push_back(Json::array({x, l->length, l->conductance, l->density}));
  }
  Json frontier = Json::array();
  for (Vertex x : g.frontier()) frontier.push_back(x);
  return Json{{"n", g.vertex_count()}, {"edges", edges}, {"loops", loops}, {"frontier", frontier}};
}

MetricGraph metric_graph_from_json(const Json& j) {
  std::vector<Edge> edges;
  std::vector<SegmentParams> params;
  std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : 0;
  for (const Json& e : get<Json>(j, "edges")) {
    if (!e.is_array() || e.size() != 5) throw InvalidInput("metric edges must be [u, v, l, p, omega]");
    const auto u = e[0].get<Vertex>(), v = e[1].get<Vertex>();
    n = std::max<std::size_t>(n, std::max(u, v) + 1);
    const double p = e[3].get<double>();
    edges.push_back({u, v, p});
    params.push_back({e[2].get<double>(), p, e[4].get<double>()});
  }
  std::vector<std::optional<SegmentParams>> loops(n);
  if (j.contains("loops")) {
    for (const Json& l : j.at("loops")) {
      if (!l.is_array() || l.size() != 4) throw InvalidInput("loops must be [x, l, p, omega]");
      const auto x = l[0].get<Vertex>();
      if (x >= n) throw InvalidInput("loop vertex out of range");
      loops[x] = SegmentParams{l[1].get<double>(), l[2].get<double>(), l[3].get<double>()};
    }
  }
  std::vector<Vertex> frontier;
  if (j.contains("frontier")) frontier = j.at("frontier").get<std::vector<Vertex>>();
  return MetricGraph(WeightedGraph(n, std::move(edges), std::move(frontier)), std::move(params),
                     std::move(loops));
}

Json star_to_json(const StarView& s) {
  Json edges = Json::array();
  for (const auto& e : s.edges) edges.push_back(Json::array({e.length, e.q, e.density}));
  Json loop = nullptr;
  if (s.loop) loop = Json::array({s.loop->length, s.loop->q / 2.0, s.loop->density});
  return Json{{"edges", edges}, {"loop", loop}};
}

StarView star_from_json(const Json& j) {
  std::vector<std::array<double, 3>> edges;
  for (const Json& e : get<Json>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) throw InvalidInput("star edges must be [l, p, omega]");
    edges.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
  }
  std::optional<std::array<double, 3>> loop;
  if (j.contains("loop") && !j.at("loop").is_null()) {
    const Json& l = j.at("loop");
    if (!l.is_array() || l.size() != 3) throw InvalidInput("star loop must be [l, p, omega]");
    loop = std::array<double, 3>{l[0].get<double>(), l[1].get<double>(), l[2].get<double>()};
  }
  return make_star(edges, loop);
}

Json verdict_to_json(const Verdict& v) {
  Json ev = Json::object();
  for (const auto& [k, x] : v.evidence) ev[k] = maybe_number(x);
  return Json{{"classification", to_string(v.classification)},
              {"method", to_string(v.method)},
              {"evidence", ev}};
}

Json explosion_stats_to_json(const ExplosionStats& s) {
  Json q = Json::object(), cq = Json::object();
  for (std::size_t i = 0; i < s.quantile_levels.size(); ++i) {
    const std::string key = format_double(s.quantile_levels[i]);
    q[key] = s.quantiles[i];
    cq[key] = s.checkpoint_quantiles[i];
  }
  return Json{{"replicas", s.replicas},
              {"horizon", s.horizon},
              {"jump_cap", s.jump_cap},
              {"checkpoint", s.checkpoint},
              {"termination", {{"horizon_reached", s.horizon_count},
                               {"jump_cap", s.cap_count},
                               {"frontier_hit", s.frontier_count}}},
              {"capped_below_horizon", s.capped_below_horizon},
              {"survival_fraction", s.survival_fraction},
              {"lifetime_quantiles", q},
              {"checkpoint_quantiles", cq},
              {"quantile_drift", s.quantile_drift},
              {"cauchy_stable", s.cauchy_stable},
              {"signature_fraction", s.signature_fraction}};
}

Json empirical_exit_law_to_json(const EmpiricalExitLaw& e) {
  return Json{{"replicas", e.replicas},
              {"h", e.h},
              {"probabilities", e.probabilities},
              {"probability_stderr", e.probability_stderr},
              {"mean", e.mean},
              {"mean_stderr", e.mean_stderr},
              {"second_moment", e.second_moment},
              {"second_moment_stderr", e.second_moment_stderr}};
}

void write_distance_csv(std::ostream& out, const DistanceMap& dm) {
  out << "vertex,distance,frontier_contaminated\n";
  for (std::size_t x = 0; x < dm.distance.size(); ++x) {
    out << x << ',' << format_double(dm.distance[x]) << ',' << (dm.contaminated[x] ? 1 : 0) << '\n';
  }
}

void write_exit_law_csv(std::ostream& out, const MetricGraph& mg) {
  out << "vertex,neighbor,prob,mean,second_moment,variance\n";
  for (Vertex x = 0; x < mg.vertex_count(); ++x) {
    const StarView s = star_of(mg, x);
    const ExitLaw law = exit_time_moments(s);
    for (std::size_t j = 0; j < s.edges.size(); ++j) {
      out << x << ',' << s.edges[j].far << ',' << format_double(law.probabilities[j]) << ','
          << format_double(law.mean) << ',' << format_double(law.second_moment) << ','
          << format_double(law.variance) << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, const VolumeProfile& p) {
  out << "r,V,I\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << format_double(p.radius[i]) << ',' << format_exp(p.log_volume[i]) << ','
        << format_double(p.integral[i]) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& t) {
  out << "n,vertex,sigma_n,cumtime\n";
  out << 0 << ',' << t.vertices.front() << ",," << format_double(0.0) << '\n';
  for (std::size_t k = 0; k < t.holding.size(); ++k) {
    out << k + 1 << ',' << t.vertices[k + 1] << ',' << format_double(t.holding[k]) << ','
        << format_double(t.cumulative[k]) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput("cannot parse '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace sgl
