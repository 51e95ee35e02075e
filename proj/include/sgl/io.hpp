#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgl/criteria.hpp"
#include "sgl/families.hpp"
#include "sgl/metric_graph.hpp"
#include "sgl/metrics.hpp"
#include "sgl/simulate.hpp"
#include "sgl/star_oracle.hpp"
#include "sgl/volume.hpp"

namespace sgl {

using Json = nlohmann::json;

// {"n": int, "edges": [[u, v, w], ...], "frontier": [ids]}
Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);

// {"family": "...", "params": {...}}
Json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const Json& j);

// Array aligned to edge ids.
Json lengths_to_json(const EdgeLengths& a);
EdgeLengths lengths_from_json(const WeightedGraph& g, const Json& j);

// {"n": int, "edges": [[u, v, l, p, omega], ...], "loops": [[x, l, p, omega], ...]}
Json metric_graph_to_json(const MetricGraph& mg);
MetricGraph metric_graph_from_json(const Json& j);

// {"edges": [[l, p, omega], ...], "loop": [l, p, omega] or null}
Json star_to_json(const StarView& s);
StarView star_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Json explosion_stats_to_json(const ExplosionStats& s);
Json empirical_exit_law_to_json(const EmpiricalExitLaw& e);

// CSV writers. Floating values use 17 significant digits.
void write_distance_csv(std::ostream& out, const DistanceMap& dm);
void write_exit_law_csv(std::ostream& out, const MetricGraph& mg);
void write_profile_csv(std::ostream& out, const VolumeProfile& p);
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& t);

// Decimal form of exp(log_value) that does not overflow: plain when it fits in
// a double, mantissa "e" exponent otherwise.
std::string format_exp(double log_value);
std::string format_double(double x);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sgl
