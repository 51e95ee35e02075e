#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sgl/criteria.hpp"
#include "sgl/cycle_cover.hpp"
#include "sgl/errors.hpp"
#include "sgl/families.hpp"
#include "sgl/intrinsic.hpp"
#include "sgl/io.hpp"
#include "sgl/metric_graph.hpp"
#include "sgl/metrics.hpp"
#include "sgl/rng.hpp"
#include "sgl/simulate.hpp"
#include "sgl/star_oracle.hpp"
#include "sgl/volume.hpp"

namespace sgl::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::vector<std::string> args;
  std::string output;

  // generate
  std::string family;
  double beta = 1.0, alpha = 1.0;
  std::size_t n = 0, depth = 0, width = 0, height = 0;
  std::string branching = "n+1";
  std::string spec_path;

  // shared graph input
  std::string graph_path;
  std::string kind;
  std::string lengths_path;

  // metric
  Vertex from = 0;
  std::optional<Vertex> to;
  double tol = 1e-8;
  std::string method = "barrier";
  bool check_bounds = false;
  double bound_tol = 1e-6;

  // criterion
  bool exact = false;
  std::string r0 = "auto";
  std::string profile_path;
  std::size_t grid_points = 300;

  // simulate / verify-star
  Vertex x0 = 0;
  std::size_t replicas = 1000;
  double horizon = 10.0;
  std::size_t cap = 100000;
  std::uint64_t seed = 0;
  std::string theta_path;
  std::string trajectory_path;
  std::string star_path;
  double h = 0.01;
  unsigned threads = 0;
};

Json config_block(const Options& o, const std::string& command) {
  return Json{{"tool", "sgl"}, {"version", kVersion}, {"command", command}, {"args", o.args}};
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_text_file(o.output, text);
  }
}

void emit_json(const Options& o, std::ostream& out, const Json& j) { emit(o, out, j.dump(2) + "\n"); }

std::string csv_header(const Json& config) { return "# config: " + config.dump() + "\n"; }

WeightedGraph load_graph(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.contains("family")) return generate(family_from_json(j));
  return graph_from_json(j);
}

EdgeLengths lengths_for(const WeightedGraph& g, const Options& o) {
  if (o.kind == "custom") {
    if (o.lengths_path.empty()) throw InvalidInput("custom lengths need --lengths FILE");
    return lengths_from_json(g, read_json_file(o.lengths_path));
  }
  const LengthKind k = length_kind_from_string(o.kind);
  if (k != LengthKind::dE && k != LengthKind::dV && k != LengthKind::dW) {
    throw InvalidInput("metric kind must be dE, dV, dW or custom here");
  }
  return standard_lengths(g, k);
}

void require_vertex(const WeightedGraph& g, Vertex x, const char* what) {
  if (x >= g.vertex_count()) {
    throw InvalidInput(std::string(what) + " " + std::to_string(x) + " is not a vertex (n = " +
                       std::to_string(g.vertex_count()) + ")");
  }
}

IntrinsicOptions intrinsic_options(const Options& o) {
  IntrinsicOptions opt;
  opt.tolerance = o.tol;
  if (o.method == "barrier") {
    opt.method = IntrinsicMethod::barrier;
  } else if (o.method == "ascent") {
    opt.method = IntrinsicMethod::projected_ascent;
  } else {
    throw InvalidInput("--method must be barrier or ascent");
  }
  return opt;
}

FamilySpec family_from_options(const Options& o) {
  if (!o.spec_path.empty()) return family_from_json(read_json_file(o.spec_path));
  FamilySpec s;
  s.kind = family_from_string(o.family);
  s.beta = o.beta;
  s.alpha = o.alpha;
  s.branching = o.branching;
  s.width = o.width;
  s.height = o.height;
  s.size = s.kind == FamilyKind::spherical_tree ? (o.depth ? o.depth : o.n) : o.n;
  s.path = o.graph_path;
  return s;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const FamilySpec spec = family_from_options(o);
  validate_family(spec);
  if (spec.kind == FamilyKind::spherical_tree) {
    const TreeLevels levels = spherical_tree_levels(spec.alpha, spec.size);
    const double log_total = log_vertex_count(levels);
    if (log_total > std::log(double(kDefaultVertexCap))) {
      // Too large to list edges; a family spec with level data still feeds `criterion --spec`.
      Json j = family_to_json(spec);
      j["materialized"] = false;
      j["levels"] = {{"branching", levels.branching}, {"log_count", levels.log_count}, {"log_vertices", log_total}};
      j["config"] = config_block(o, "generate");
      emit_json(o, out, j);
      return kOk;
    }
  }
  const WeightedGraph g = generate(spec);
  require_valid(g);
  Json j = graph_to_json(g);
  // Not under "family": the loader would regenerate instead of reading edges.
  j["source"] = family_to_json(spec);
  j["config"] = config_block(o, "generate");
  emit_json(o, out, j);
  return kOk;
}

Json check_bounds(const WeightedGraph& g, const Options& o, bool& violated) {
  const DistanceMap de = path_metric(g, standard_lengths(g, LengthKind::dE), o.from);
  const DistanceMap dv = path_metric(g, standard_lengths(g, LengthKind::dV), o.from);
  const IntrinsicOptions opt = intrinsic_options(o);
  Json rows = Json::array();
  violated = false;
  for (Vertex t = 0; t < g.vertex_count(); ++t) {
    if (t == o.from || (o.to && *o.to != t)) continue;
    const IntrinsicResult r = intrinsic_metric(g, o.from, t, opt);
    // The witness value is a lower bound; value + gap bounds d_I from above.
    const double lower = r.value, upper = r.value + r.gap_bound;
    const bool lower_ok = std::sqrt(2.0) * dv.distance[t] <= upper + o.bound_tol;
    const bool upper_ok = lower <= 2.0 * de.distance[t] + o.bound_tol;
    if (!lower_ok || !upper_ok) violated = true;
    rows.push_back({{"target", t},
                    {"dI", r.value},
                    {"dI_gap", r.gap_bound},
                    {"dV", dv.distance[t]},
                    {"dE", de.distance[t]},
                    {"sqrt2_dV_le_dI", lower_ok},
                    {"dI_le_2dE", upper_ok}});
  }
  return rows;
}

int cmd_metric(const Options& o, std::ostream& out) {
  const WeightedGraph g = load_graph(o.graph_path);
  require_valid(g);
  require_vertex(g, o.from, "--from");
  if (o.to) require_vertex(g, *o.to, "--to");
  const Json config = config_block(o, "metric");

  if (o.check_bounds) {
    bool violated = false;
    Json rows = check_bounds(g, o, violated);
    emit_json(o, out, Json{{"config", config}, {"source", o.from}, {"tolerance", o.bound_tol},
                           {"pairs", rows}, {"violated", violated}});
    return violated ? kInternalError : kOk;
  }

  if (o.kind == "intrinsic") {
    if (!o.to) throw InvalidInput("the intrinsic metric needs --to");
    if (*o.to == o.from) throw InvalidInput("--from and --to must differ");
    const IntrinsicResult r = intrinsic_metric(g, o.from, *o.to, intrinsic_options(o));
    emit_json(o, out, Json{{"config", config},
                           {"from", o.from},
                           {"to", *o.to},
                           {"value", r.value},
                           {"gap_bound", r.gap_bound},
                           {"max_constraint", r.max_constraint},
                           {"iterations", r.iterations},
                           {"witness", r.witness}});
    return kOk;
  }

  const EdgeLengths a = lengths_for(g, o);
  const DistanceMap dm = path_metric(g, a, o.from);
  if (o.to) {
    emit_json(o, out, Json{{"config", config},
                           {"from", o.from},
                           {"to", *o.to},
                           {"kind", to_string(a.kind)},
                           {"distance", dm.distance[*o.to]},
                           {"frontier_contaminated", dm.contaminated[*o.to] != 0}});
    return kOk;
  }
  std::ostringstream csv;
  csv << csv_header(config);
  write_distance_csv(csv, dm);
  emit(o, out, csv.str());
  return kOk;
}

std::optional<double> parse_r0(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !(v > 0.0)) throw InvalidInput("");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("--r0 must be 'auto' or a positive number");
  }
}

VolumeProfile tree_profile(const Options& o, const FamilySpec& spec) {
  const std::size_t depth = spec.size;
  if (depth < 2) throw InvalidInput("tree growth fit needs --depth >= 2");
  const LengthKind k = length_kind_from_string(o.kind.empty() ? "dV" : o.kind);
  const TreeLevels levels = spherical_tree_levels(spec.alpha, depth);
  const std::vector<double> d = tree_level_distances(levels, k);
  std::vector<double> grid(d.begin() + 1, d.end() - 1);
  if (grid.size() > o.grid_points) grid = geometric_grid(grid.front(), grid.back(),
      std::pow(grid.back() / grid.front(), 1.0 / static_cast<double>(o.grid_points - 1)) * (1 + 1e-12));
  return radial_volume_profile(levels.log_count, d, grid, parse_r0(o.r0), k);
}

int cmd_criterion(const Options& o, std::ostream& out) {
  Json config = config_block(o, "criterion");
  Verdict v;
  std::optional<VolumeProfile> profile;
  if (!o.family.empty() || !o.spec_path.empty()) {
    const FamilySpec spec = family_from_options(o);
    if (o.exact) {
      if (spec.kind == FamilyKind::birth_death) {
        v = birth_death_exact(spec.beta);
      } else if (spec.kind == FamilyKind::spherical_tree) {
        v = tree_exact(spec.alpha);
      } else {
        throw InvalidInput("exact tests exist for birth-death chains and spherical trees only");
      }
    } else if (spec.kind == FamilyKind::spherical_tree) {
      profile = tree_profile(o, spec);
    } else {
      validate_family(spec);
      const WeightedGraph g = generate(spec);
      Options copy = o;
      if (copy.kind.empty()) copy.kind = "dV";
      const EdgeLengths a = lengths_for(g, copy);
      const DistanceMap dm = path_metric(g, a, 0);
      profile = volume_profile(g, dm, breakpoint_grid(dm, o.grid_points), parse_r0(o.r0));
    }
    config["family"] = family_to_json(spec);
  } else {
    if (o.graph_path.empty()) throw InvalidInput("criterion needs a graph file or --family");
    if (o.exact) throw InvalidInput("--exact needs --family");
    if (o.kind == "intrinsic") {
      throw InvalidInput("volume profiles need a path metric (dE, dV, dW or custom)");
    }
    const WeightedGraph g = load_graph(o.graph_path);
    require_valid(g);
    require_vertex(g, o.x0, "--x0");
    Options copy = o;
    if (copy.kind.empty()) copy.kind = "dV";
    const EdgeLengths a = lengths_for(g, copy);
    const DistanceMap dm = path_metric(g, a, o.x0);
    profile = volume_profile(g, dm, breakpoint_grid(dm, o.grid_points), parse_r0(o.r0));
  }
  if (profile) {
    try {
      v = classify_growth(*profile);
    } catch (const InsufficientData& e) {
      v.classification = Classification::inconclusive;
      v.method = VerdictMethod::growth_fit;
      v.evidence["points"] = static_cast<double>(profile->size());
    }
    v.evidence["r0"] = profile->r0;
    v.evidence["trusted_radius"] = profile->trusted_radius;
    if (!o.profile_path.empty()) {
      std::ostringstream csv;
      csv << csv_header(config);
      write_profile_csv(csv, *profile);
      write_text_file(o.profile_path, csv.str());
    }
  }
  Json j = verdict_to_json(v);
  j["config"] = config;
  emit_json(o, out, j);
  return v.classification == Classification::inconclusive ? kInconclusive : kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const WeightedGraph g = load_graph(o.graph_path);
  require_valid(g);
  require_vertex(g, o.x0, "--x0");
  ExplosionOptions opt;
  opt.threads = o.threads;
  if (!o.theta_path.empty()) opt.theta = read_json_file(o.theta_path).get<std::vector<double>>();
  const ExplosionStats s = explosion_stats(g, o.x0, o.seed, o.replicas, o.horizon, o.cap, opt);
  Json config = config_block(o, "simulate");
  config["threads"] = opt.threads ? opt.threads : thread_count();
  if (!o.trajectory_path.empty()) {
    const WalkSampler sampler(g, opt.theta);
    TrajectoryRecord rec;
    sampler.simulate(o.x0, replica_seed(o.seed, 0), o.horizon, o.cap, 0, &rec);
    std::ostringstream csv;
    csv << csv_header(config);
    write_trajectory_csv(csv, rec);
    write_text_file(o.trajectory_path, csv.str());
  }
  Json j = explosion_stats_to_json(s);
  j["walk"] = opt.theta ? "csrw" : "vsrw";
  j["config"] = config;
  emit_json(o, out, j);
  return kOk;
}

int cmd_verify_star(const Options& o, std::ostream& out) {
  if (o.star_path.empty()) throw InvalidInput("verify-star needs --star FILE");
  const StarView star = star_from_json(read_json_file(o.star_path));
  const ExitLaw law = exit_time_moments(star);
  const EmpiricalExitLaw emp = star_walk_oracle(star, o.h, o.seed, o.replicas, o.threads);
  Json rows = Json::array();
  auto row = [&](const std::string& name, double exact, double est, double se) {
    rows.push_back({{"quantity", name},
                    {"closed_form", exact},
                    {"empirical", est},
                    {"stderr", se},
                    {"z", se > 0.0 ? (est - exact) / se : 0.0}});
  };
  for (std::size_t j = 0; j < law.probabilities.size(); ++j) {
    row("P(exit edge " + std::to_string(j) + ")", law.probabilities[j], emp.probabilities[j],
        emp.probability_stderr[j]);
  }
  row("E[T]", law.mean, emp.mean, emp.mean_stderr);
  row("E[T^2]", law.second_moment, emp.second_moment, emp.second_moment_stderr);
  Json config = config_block(o, "verify-star");
  config["threads"] = o.threads ? o.threads : thread_count();
  emit_json(o, out, Json{{"config", config}, {"star", star_to_json(star)}, {"h", o.h},
                         {"replicas", o.replicas}, {"table", rows}});
  return kOk;
}

int cmd_cyclecover(const Options& o, std::ostream& out) {
  const WeightedGraph g = load_graph(o.graph_path);
  require_valid(g);
  Json edges = Json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto cover = find_cycle_cover(g, e);
    Json row{{"edge", e}, {"u", g.edge(e).u}, {"v", g.edge(e).v}, {"feasible", cover.has_value()}};
    if (cover) {
      row["successor"] = cover->successor;
      row["cover_weights"] = cover_edge_weights(g, *cover);
    }
    edges.push_back(row);
  }
  const UnitWeighting w = unit_vertex_weights(g);
  Json j{{"config", config_block(o, "cyclecover")}, {"edges", edges}, {"feasible", w.feasible()}};
  if (w.feasible()) {
    j["weights"] = w.weights;
  } else {
    j["witness_edge"] = *w.failing_edge;
  }
  emit_json(o, out, j);
  return kOk;
}

int cmd_synchronize(const Options& o, std::ostream& out) {
  const WeightedGraph g = load_graph(o.graph_path);
  require_valid(g);
  Options copy = o;
  if (copy.kind.empty()) copy.kind = "dV";
  const MetricGraph mg = synchronize(g, lengths_for(g, copy));
  Json j = metric_graph_to_json(mg);
  j["config"] = config_block(o, "synchronize");
  emit_json(o, out, j);
  return kOk;
}

int cmd_exit_law(const Options& o, std::ostream& out) {
  const MetricGraph mg = metric_graph_from_json(read_json_file(o.graph_path));
  std::ostringstream csv;
  csv << csv_header(config_block(o, "exit-law"));
  write_exit_law_csv(csv, mg);
  emit(o, out, csv.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.args = args;
  std::function<int(const Options&, std::ostream&)> action;

  CLI::App app{"Stochastic completeness toolkit for weighted graphs", "sgl"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* c) {
    c->add_option("-o,--output", o.output, "write the result to FILE instead of stdout");
  };

  auto* gen = app.add_subcommand("generate", "build a graph from a named family");
  gen->add_option("family", o.family, "birth-death | tree | antitree | lattice");
  gen->add_option("--beta", o.beta, "birth-death exponent in [0, 2)");
  gen->add_option("--alpha", o.alpha, "tree exponent in (0, 2)");
  gen->add_option("--n", o.n, "chain length or antitree depth");
  gen->add_option("--depth", o.depth, "tree depth");
  gen->add_option("--r", o.branching, "antitree level sizes as an expression in n");
  gen->add_option("--width", o.width, "lattice width");
  gen->add_option("--height", o.height, "lattice height");
  gen->add_option("--spec", o.spec_path, "family spec JSON");
  add_output(gen);
  gen->callback([&] { action = cmd_generate; });

  auto* met = app.add_subcommand("metric", "distances from a vertex");
  met->add_option("graph", o.graph_path, "graph JSON")->required();
  met->add_option("kind", o.kind, "dE | dV | dW | intrinsic | custom")->required();
  met->add_option("--from", o.from, "source vertex");
  met->add_option("--to", o.to, "target vertex");
  met->add_option("--tol", o.tol, "intrinsic solver tolerance");
  met->add_option("--method", o.method, "barrier | ascent");
  met->add_option("--lengths", o.lengths_path, "edge lengths JSON for kind custom");
  met->add_flag("--check-bounds", o.check_bounds, "check sqrt2 dV <= dI <= 2 dE from --from");
  met->add_option("--bound-tol", o.bound_tol, "slack for --check-bounds");
  add_output(met);
  met->callback([&] { action = cmd_metric; });

  auto* cri = app.add_subcommand("criterion", "decide stochastic completeness");
  cri->add_option("graph", o.graph_path, "graph JSON");
  cri->add_option("kind", o.kind, "dE | dV | dW | custom (default dV)");
  cri->add_option("--family", o.family, "birth-death | tree | antitree | lattice");
  cri->add_option("--spec", o.spec_path, "family spec JSON");
  cri->add_option("--beta", o.beta);
  cri->add_option("--alpha", o.alpha);
  cri->add_option("--n", o.n);
  cri->add_option("--depth", o.depth);
  cri->add_option("--r", o.branching);
  cri->add_option("--width", o.width);
  cri->add_option("--height", o.height);
  cri->add_flag("--exact", o.exact, "use the exact series test for the family");
  cri->add_option("--r0", o.r0, "lower integration limit, or auto");
  cri->add_option("--x0", o.x0, "ball center");
  cri->add_option("--lengths", o.lengths_path, "edge lengths JSON for kind custom");
  cri->add_option("--grid-points", o.grid_points, "maximum radii in the profile");
  cri->add_option("--profile", o.profile_path, "write the volume profile CSV here");
  add_output(cri);
  cri->callback([&] { action = cmd_criterion; });

  auto* sim = app.add_subcommand("simulate", "Monte Carlo explosion statistics");
  sim->add_option("graph", o.graph_path, "graph JSON")->required();
  sim->add_option("--x0", o.x0, "start vertex");
  sim->add_option("--replicas", o.replicas)->check(CLI::PositiveNumber);
  sim->add_option("--horizon", o.horizon)->check(CLI::PositiveNumber);
  sim->add_option("--cap", o.cap, "jump cap per replica")->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed);
  sim->add_option("--theta", o.theta_path, "vertex measure JSON for the constant-speed walk");
  sim->add_option("--trajectory", o.trajectory_path, "write replica 0 as CSV here");
  sim->add_option("--threads", o.threads, "worker threads (default SGL_THREADS or cores)");
  add_output(sim);
  sim->callback([&] { action = cmd_simulate; });

  auto* star = app.add_subcommand("verify-star", "closed-form star exit law against Monte Carlo");
  star->set_help_flag("--help", "print this help message and exit");
  star->add_option("--star", o.star_path, "star JSON")->required();
  star->add_option("--h", o.h, "center step");
  star->add_option("--replicas", o.replicas)->check(CLI::PositiveNumber);
  star->add_option("--seed", o.seed);
  star->add_option("--threads", o.threads);
  add_output(star);
  star->callback([&] { action = cmd_verify_star; });

  auto* cyc = app.add_subcommand("cyclecover", "per-edge cycle cover feasibility");
  cyc->add_option("graph", o.graph_path, "graph JSON")->required();
  add_output(cyc);
  cyc->callback([&] { action = cmd_cyclecover; });

  auto* syn = app.add_subcommand("synchronize", "metric graph whose walk matches the graph");
  syn->add_option("graph", o.graph_path, "graph JSON")->required();
  syn->add_option("kind", o.kind, "dE | dV | dW | custom (default dV)");
  syn->add_option("--lengths", o.lengths_path, "edge lengths JSON for kind custom");
  add_output(syn);
  syn->callback([&] { action = cmd_synchronize; });

  auto* law = app.add_subcommand("exit-law", "closed-form exit laws of a metric graph");
  law->add_option("metric_graph", o.graph_path, "metric graph JSON")->required();
  add_output(law);
  law->callback([&] { action = cmd_exit_law; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (e.get_exit_code() == 0) return kOk;
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kBadInput;
  }

  try {
    return action(o, out);
  } catch (const TruncationTooSmall& e) {
    err << "error: " << e.what() << " (required radius " << format_double(e.required_radius())
        << ", trusted radius " << format_double(e.trusted_radius());
    if (e.suggested_size()) err << ", try size >= " << e.suggested_size();
    err << ")\n";
    return kBadInput;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InsufficientData& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (best value " << format_double(e.best_value()) << ")\n";
    return kInternalError;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace sgl::cli
