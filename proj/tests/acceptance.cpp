// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sgl/criteria.hpp"
#include "sgl/cycle_cover.hpp"
#include "sgl/families.hpp"
#include "sgl/intrinsic.hpp"
#include "sgl/metric_graph.hpp"
#include "sgl/metrics.hpp"
#include "sgl/rng.hpp"
#include "sgl/simulate.hpp"
#include "sgl/star_oracle.hpp"
#include "sgl/volume.hpp"
#include "star_fd.hpp"

using namespace sgl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check; the first few messages are kept.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || failures < 5) detail << " [failed: " << what << "]";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

double log_uniform(Philox4x64& rng, double lo, double hi) {
  return lo * std::exp(rng.uniform() * std::log(hi / lo));
}

std::size_t below(Philox4x64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
}

// Connected graph: random recursive tree plus extra edges, weights log-uniform.
WeightedGraph random_graph(Philox4x64& rng, std::size_t n, double extra, double lo, double hi) {
  std::vector<Edge> edges;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  for (Vertex v = 1; v < n; ++v) {
    const Vertex u = static_cast<Vertex>(below(rng, v));
    edges.push_back({u, v, log_uniform(rng, lo, hi)});
    used[u][v] = used[v][u] = 1;
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!used[u][v] && rng.uniform() < extra) edges.push_back({u, v, log_uniform(rng, lo, hi)});
    }
  }
  return WeightedGraph(n, edges);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// 1. Closed-form star exit law against the walk-on-spheres oracle.
Outcome closed_form_vs_oracle() {
  Outcome o;
  Philox4x64 rng(20261014);
  const double h = 5e-3;
  const std::size_t replicas = 100000;
  std::size_t prob_checks = 0, prob_ok = 0, reruns = 0;
  double worst_mean = 0.0;
  for (int s = 0; s < 20; ++s) {
    const std::size_t k = 1 + below(rng, 5);
    std::vector<std::array<double, 3>> edges;
    for (std::size_t i = 0; i < k; ++i) {
      edges.push_back({log_uniform(rng, 0.2, 5), log_uniform(rng, 0.2, 5), log_uniform(rng, 0.2, 5)});
    }
    std::optional<std::array<double, 3>> loop;
    if (s % 2 == 1) loop = std::array<double, 3>{log_uniform(rng, 0.2, 5), log_uniform(rng, 0.2, 5),
                                                log_uniform(rng, 0.2, 5)};
    const StarView star = make_star(edges, loop);
    const ExitLaw law = exit_time_moments(star);
    const EmpiricalExitLaw e = star_walk_oracle(star, h, 1000 + static_cast<std::uint64_t>(s), replicas);
    auto outside = [&](const EmpiricalExitLaw& emp) {
      std::size_t bad = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (std::fabs(emp.probabilities[i] - law.probabilities[i]) > 3.0 * emp.probability_stderr[i]) ++bad;
      }
      return bad;
    };
    const std::size_t bad = outside(e);
    prob_checks += k;
    prob_ok += k - bad;
    if (bad > 0) {
      // Confirmation run: independent seed, ten times the replicas.
      ++reruns;
      const EmpiricalExitLaw c = star_walk_oracle(star, h, 5000 + static_cast<std::uint64_t>(s), 10 * replicas);
      o.require(outside(c) == 0, "probabilities of star " + std::to_string(s) + " after confirmation run");
    }
    const double err = std::fabs(e.mean - law.mean);
    const double allowed = std::max(0.02 * law.mean, 3.0 * e.mean_stderr);
    worst_mean = std::max(worst_mean, err / allowed);
    o.require(err <= allowed, "mean of star " + std::to_string(s));
  }
  o.detail << "probabilities " << prob_ok << "/" << prob_checks << " within 3 s.e. at 1e5 replicas, " << reruns
           << " stars confirmed at 1e6; worst mean error "
           << fmt(worst_mean) << " of its allowance";
  return o;
}

// 2. Exact one-dimensional reduction on the symmetric two-edge star.
Outcome exact_reduction() {
  Outcome o;
  const ExactStarView exact = make_star<Rational>({{1, 1, 1}, {1, 1, 1}});
  const ExactExitLaw r = exit_time_moments(exact);
  o.require(r.mean == Rational(1), "rational mean");
  o.require(r.second_moment == Rational(5, 3), "rational second moment");
  o.require(r.variance == Rational(2, 3), "rational variance");

  const StarView star = make_star<double>({{1, 1, 1}, {1, 1, 1}});
  const ExitLaw d = exit_time_moments(star);
  o.require(std::fabs(d.mean - 1.0) <= 1e-12, "double mean");
  o.require(std::fabs(d.second_moment - 5.0 / 3.0) <= 1e-12, "double second moment");
  o.require(std::fabs(d.variance - 2.0 / 3.0) <= 1e-12, "double variance");

  // Boundary-value solution of u''/2 = -1, w''/2 = -2u on [-1, 1].
  const fd::Moments m = fd::moments(star, 400);
  const double fd_var = m.second_moment - m.mean * m.mean;
  o.require(std::fabs(m.mean - 1.0) <= 1e-9, "ODE oracle mean");
  o.require(std::fabs(m.second_moment - 5.0 / 3.0) <= 1e-9, "ODE oracle second moment");
  o.require(std::fabs(fd_var - 2.0 / 3.0) <= 1e-9, "ODE oracle variance");
  o.detail << "rational (" << r.mean << ", " << r.second_moment << ", " << r.variance << "); ODE oracle ("
           << fmt(m.mean) << ", " << fmt(m.second_moment) << ", " << fmt(fd_var) << ")";
  return o;
}

// 3. Metric inequalities, LP duality of path metrics and rho <= d_rho.
Outcome metric_inequalities() {
  Outcome o;
  Philox4x64 rng(31);
  std::size_t pairs = 0, lp_checks = 0, rho_checks = 0;
  double worst_lp = 0.0;
  IntrinsicOptions opt;
  opt.tolerance = 1e-8;
  for (int gi = 0; gi < 50; ++gi) {
    const std::size_t n = 2 + below(rng, 29);
    const WeightedGraph g = random_graph(rng, n, 0.15, 0.1, 10.0);
    const EdgeLengths le = standard_lengths(g, LengthKind::dE), lv = standard_lengths(g, LengthKind::dV);
    for (Vertex s = 0; s < n; ++s) {
      const DistanceMap de = path_metric(g, le, s), dv = path_metric(g, lv, s);
      for (Vertex t = s + 1; t < n; ++t) {
        const IntrinsicResult di = intrinsic_metric(g, s, t, opt);
        ++pairs;
        o.require(std::sqrt(2.0) * dv.distance[t] <= di.value + 1e-6,
                  "sqrt2 dV <= dI on graph " + std::to_string(gi));
        o.require(di.value <= 2.0 * de.distance[t] + 1e-6, "dI <= 2 dE on graph " + std::to_string(gi));
      }
    }
    std::vector<double> random_lengths(g.edge_count());
    for (double& a : random_lengths) a = log_uniform(rng, 0.1, 10.0);
    for (const EdgeLengths& a : {le, lv, custom_lengths(g, random_lengths)}) {
      const DistanceMap dm = path_metric(g, a, 0);
      for (Vertex t = 1; t < n; ++t) {
        const double lp = dual_path_metric(g, a, 0, t);
        ++lp_checks;
        worst_lp = std::max(worst_lp, std::fabs(lp - dm.distance[t]));
        o.require(std::fabs(lp - dm.distance[t]) <= 1e-9, "dual LP on graph " + std::to_string(gi));
      }
    }
    // Euclidean and l1 metrics of random points, and the path metric of a denser graph.
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform(), rng.uniform()};
    const WeightedGraph dense = random_graph(rng, n, 0.5, 0.1, 10.0);
    std::vector<DistanceMap> dense_d;
    for (Vertex s = 0; s < n; ++s) dense_d.push_back(path_metric(dense, standard_lengths(dense, LengthKind::dE), s));
    const std::vector<std::function<double(Vertex, Vertex)>> metrics{
        [&](Vertex x, Vertex y) {
          return std::hypot(pts[x][0] - pts[y][0], pts[x][1] - pts[y][1], pts[x][2] - pts[y][2]);
        },
        [&](Vertex x, Vertex y) {
          return std::fabs(pts[x][0] - pts[y][0]) + std::fabs(pts[x][1] - pts[y][1]) +
                 std::fabs(pts[x][2] - pts[y][2]);
        },
        [&](Vertex x, Vertex y) { return dense_d[x].distance[y]; }};
    for (const auto& rho : metrics) {
      const EdgeLengths a = induced_from_metric(g, rho);
      for (Vertex s = 0; s < n; ++s) {
        const DistanceMap d = path_metric(g, a, s);
        for (Vertex t = 0; t < n; ++t) {
          ++rho_checks;
          o.require(rho(s, t) <= d.distance[t] * (1.0 + 1e-12) + 1e-12, "rho <= d_rho");
        }
      }
    }
  }
  o.detail << pairs << " pairs for the d_I bounds, " << lp_checks << " LP checks (max diff " << fmt(worst_lp)
           << "), " << rho_checks << " rho <= d_rho checks";
  return o;
}

// 4. Birth-death chains: exact test, growth exponent and growth-fit verdicts.
Outcome birth_death() {
  Outcome o;
  for (double beta : {0.0, 0.5, 1.0, 1.5, 1.9}) {
    const Classification want = beta <= 1.0 ? Classification::complete : Classification::incomplete;
    o.require(birth_death_exact(beta).classification == want, "exact test at beta " + fmt(beta));
    const WeightedGraph g = generate_birth_death(beta, 100000);
    const DistanceMap dm = path_metric(g, standard_lengths(g, LengthKind::dV), 0);
    const VolumeProfile p = volume_profile(g, dm, breakpoint_grid(dm));
    const double gamma = growth_exponent(p).gamma, target = 2.0 / (2.0 - beta);
    o.require(std::fabs(gamma - target) <= 0.1, "growth exponent at beta " + fmt(beta));
    Classification got = Classification::inconclusive;
    try {
      got = classify_growth(p).classification;
    } catch (const InsufficientData&) {
    }
    o.require((got == Classification::complete) == (beta <= 1.0), "classify_growth at beta " + fmt(beta));
    o.detail << "beta " << fmt(beta) << ": gamma " << fmt(gamma) << " (target " << fmt(target) << "), "
             << to_string(got) << "; ";
  }
  return o;
}

VolumeProfile scaled_level_profile(const TreeLevels& levels, double scale) {
  std::vector<double> d(levels.depth + 1);
  for (std::size_t j = 0; j <= levels.depth; ++j) d[j] = scale * static_cast<double>(j);
  const std::vector<double> grid(d.begin() + 1, d.end() - 1);
  return radial_volume_profile(levels.log_count, d, grid);
}

// 5. Spherically symmetric trees.
Outcome trees() {
  Outcome o;
  o.require(tree_exact(0.5).classification == Classification::complete, "tree_exact(0.5)");
  o.require(tree_exact(1.0).classification == Classification::complete, "tree_exact(1.0)");
  o.require(tree_exact(1.01).classification == Classification::incomplete, "tree_exact(1.01)");
  o.require(tree_exact(1.5).classification == Classification::incomplete, "tree_exact(1.5)");

  for (double alpha : {0.5, 1.5}) {
    const TreeLevels levels = spherical_tree_levels(alpha, 201);
    const std::vector<double> d = tree_level_distances(levels, LengthKind::dV);
    std::vector<double> x, y;
    for (std::size_t r = 1; r <= 200; ++r) {
      x.push_back(static_cast<double>(r));
      y.push_back(d[r]);
    }
    const double e = fit_power_law_offset(x, y).exponent, target = 1.0 - alpha / 2.0;
    o.require(std::fabs(e - target) <= 0.05, "d_V exponent at alpha " + fmt(alpha));
    o.detail << "alpha " << fmt(alpha) << ": d_V exponent " << fmt(e) << " (target " << fmt(target) << "); ";
  }

  // levels <= r/2 lie in the d_I ball of radius r, which lies in levels <= 2r.
  const WeightedGraph small = generate_spherical_tree(1.5, 5);
  Vertex x = 0;
  for (std::size_t j = 1; j <= 4; ++j) {
    for (const Incidence& inc : small.neighbors(x)) {
      if (inc.neighbor > x) {
        x = inc.neighbor;
        break;
      }
    }
    const double di = intrinsic_metric(small, 0, x).value;
    o.require(di >= 0.5 * static_cast<double>(j) - 1e-6 && di <= 2.0 * static_cast<double>(j) + 1e-6,
              "d_I bracket at depth " + std::to_string(j));
  }
  const TreeLevels levels = spherical_tree_levels(1.5, 200);
  const bool incomplete = tree_exact(1.5).classification == Classification::incomplete;
  for (double scale : {0.5, 2.0}) {
    const Verdict v = classify_growth(scaled_level_profile(levels, scale));
    const double gamma = v.evidence.at("gamma");
    o.require(gamma <= 1.2, "d_I bracket gamma at scale " + fmt(scale));
    o.require(v.classification == Classification::complete && incomplete,
              "d_I profile should look divergent while the tree is incomplete");
    o.detail << "d_I bracket (level distance x" << fmt(scale) << "): gamma " << fmt(gamma) << ", "
             << to_string(v.classification) << "; ";
  }
  o.detail << "tree_exact(1.5) " << to_string(tree_exact(1.5).classification);
  return o;
}

// 6. Synchronized metric graphs reproduce the jump chain and the exit-time sandwich.
Outcome synchronization() {
  Outcome o;
  Philox4x64 rng(61);
  double worst_prob = 0.0;
  std::size_t steps = 0;
  for (int gi = 0; gi < 20; ++gi) {
    const std::size_t n = 3 + below(rng, 40);
    const WeightedGraph g = random_graph(rng, n, 0.1, 0.1, 10.0);
    std::vector<double> random_lengths(g.edge_count());
    for (double& a : random_lengths) a = log_uniform(rng, 0.1, 2.0);
    const EdgeLengths a =
        gi % 2 == 0 ? standard_lengths(g, LengthKind::dV) : custom_lengths(g, random_lengths);
    const double c_sup = adaptedness(g, a).c_sup;
    const MetricGraph mg = synchronize(g, a);
    const std::vector<ExitLaw> laws = exit_laws(mg);
    for (Vertex x = 0; x < n; ++x) {
      const StarView star = star_of(mg, x);
      for (std::size_t j = 0; j < star.edges.size(); ++j) {
        double w = 0.0;
        for (const Incidence& inc : g.neighbors(x)) {
          if (inc.neighbor == star.edges[j].far) w = g.edge(inc.edge).weight;
        }
        const double jump = w / g.vertex_measure(x);
        worst_prob = std::max(worst_prob, std::fabs(laws[x].probabilities[j] - jump));
        o.require(std::fabs(laws[x].probabilities[j] - jump) <= 1e-12, "exit probability");
      }
      const double ratio = g.vertex_measure(x) * laws[x].mean;
      o.require(ratio >= 1.0 - 1e-12 && ratio <= c_sup + 1.0 + 1e-12, "pi_x E T in [1, C+1]");
    }
    const CoupledBounds cb = coupled_lifetime_bounds(g, mg, 0, 100 + static_cast<std::uint64_t>(gi), 10000);
    o.require(cb.chain.size() == 10000, "chain length");
    for (std::size_t k = 0; k < cb.chain.size(); ++k) {
      const double lo = cb.walk_means[k], hi = cb.graph_means[k];
      o.require(lo <= hi * (1.0 + 1e-12) && hi <= (c_sup + 1.0) * lo * (1.0 + 1e-12), "pathwise sandwich");
      ++steps;
    }
  }
  o.detail << "max exit-probability error " << fmt(worst_prob) << "; sandwich checked on " << steps
           << " coupled steps";
  return o;
}

// 7. Cycle covers.
Outcome cycle_covers() {
  Outcome o;
  std::size_t graphs = 0, edge_checks = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<std::pair<Vertex, Vertex>> all;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    }
    for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
      std::vector<Edge> edges;
      std::vector<Vertex> root(n);
      std::iota(root.begin(), root.end(), Vertex{0});
      std::function<Vertex(Vertex)> find = [&](Vertex v) { return root[v] == v ? v : root[v] = find(root[v]); };
      std::size_t components = n;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (!(mask >> i & 1u)) continue;
        edges.push_back({all[i].first, all[i].second, 1.0});
        const Vertex a = find(all[i].first), b = find(all[i].second);
        if (a != b) {
          root[a] = b;
          --components;
        }
      }
      if (components != 1) continue;
      const WeightedGraph g(n, edges);
      ++graphs;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        ++edge_checks;
        o.require(cycle_cover_feasible(g, e) == cycle_cover_feasible_brute_force(g, e),
                  "matching vs brute force");
      }
    }
  }
  auto unit = [](std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
    return WeightedGraph(n, edges);
  };
  const std::vector<std::pair<std::string, WeightedGraph>> feasible{
      {"triangle", unit(3, {{0, 1}, {1, 2}, {0, 2}})},
      {"C4", unit(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})},
      {"K4", unit(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})}};
  for (const auto& [name, g] : feasible) {
    const UnitWeighting w = unit_vertex_weights(g);
    o.require(w.feasible(), name + " feasible");
    if (!w.feasible()) continue;
    for (double c : w.weights) o.require(c > 0.0, name + " positive weights");
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      double s = 0.0;
      for (const Incidence& inc : g.neighbors(x)) s += w.weights[inc.edge];
      o.require(std::fabs(s - 1.0) <= 1e-12, name + " vertex sum");
    }
  }
  const std::vector<std::pair<std::string, WeightedGraph>> infeasible{
      {"K13", unit(4, {{0, 1}, {0, 2}, {0, 3}})},
      {"P3", unit(3, {{0, 1}, {1, 2}})},
      {"P4", unit(4, {{0, 1}, {1, 2}, {2, 3}})}};
  for (const auto& [name, g] : infeasible) {
    const UnitWeighting w = unit_vertex_weights(g);
    o.require(!w.feasible() && w.weights.empty(), name + " reported infeasible");
    if (w.failing_edge) {
      o.require(!cycle_cover_feasible_brute_force(g, *w.failing_edge), name + " witness lies in no cover");
    }
  }
  o.detail << graphs << " connected graphs on <= 6 vertices, " << edge_checks << " edge checks";
  return o;
}

// 8. Explosion signatures.
Outcome explosion() {
  Outcome o;
  const std::uint64_t seed = 8;
  const std::size_t replicas = 400, cap = 100000;
  const double horizon = 10.0;
  const ExplosionStats fast = explosion_stats(generate_birth_death(1.9, cap + 1), 0, seed, replicas, horizon, cap);
  o.require(fast.signature_fraction >= 0.5, "beta 1.9 signature");
  o.require(fast.quantile_drift <= 0.05, "beta 1.9 quantile drift");
  const ExplosionStats slow = explosion_stats(generate_birth_death(0.5, cap + 1), 0, seed, replicas, horizon, cap);
  o.require(slow.signature_fraction == 0.0, "beta 0.5 signature");
  const std::size_t levels = 1000;
  const auto r = [](std::size_t n) { return static_cast<double>(n + 1); };
  const WeightedGraph anti = generate_antitree(r, levels);
  const AntitreeLayout lay = antitree_layout(r, levels);
  const ExplosionStats at = explosion_stats(anti, lay.spine[0], seed, replicas, horizon, cap);
  o.require(at.signature_fraction == 0.0, "antitree signature");
  o.require(fast.frontier_count == 0 && slow.frontier_count == 0 && at.frontier_count == 0, "frontier contact");
  o.detail << "beta 1.9: signature " << fmt(fast.signature_fraction) << ", drift " << fmt(fast.quantile_drift)
           << "; beta 0.5: signature " << fmt(slow.signature_fraction) << " (drift " << fmt(slow.quantile_drift)
           << "); antitree: signature " << fmt(at.signature_fraction);
  return o;
}

// 9. The antitree has no strongly adapted d_V.
Outcome antitree_adaptedness() {
  Outcome o;
  const auto r = [](std::size_t n) { return static_cast<double>(n + 1); };
  std::size_t found = 0;
  double c_inf = 1.0, c_sup = 0.0;
  for (std::size_t n = 8; n <= 4096; n *= 2) {
    const WeightedGraph g = generate_antitree(r, n);
    const AdaptednessReport rep = adaptedness(g, standard_lengths(g, LengthKind::dV));
    o.require(rep.c_sup <= 1.0 + 1e-12, "C_sup <= 1 at N = " + std::to_string(n));
    c_inf = rep.c_inf;
    c_sup = rep.c_sup;
    if (rep.c_inf <= 0.01) {
      found = n;
      break;
    }
  }
  o.require(found > 0, "c_inf never reached 0.01");
  o.detail << "c_inf " << fmt(c_inf) << " <= 0.01 at N = " << found << " with C_sup " << fmt(c_sup);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form star exit law vs walk oracle", closed_form_vs_oracle},
      {"exact 1D reduction on the symmetric 2-star", exact_reduction},
      {"metric inequalities, LP duality, rho <= d_rho", metric_inequalities},
      {"birth-death exact test and volume growth", birth_death},
      {"spherically symmetric trees", trees},
      {"synchronization and coupled exit-time bounds", synchronization},
      {"cycle covers", cycle_covers},
      {"explosion signatures", explosion},
      {"antitree strong adaptedness", antitree_adaptedness},
  };
  // Wall-clock budgets in seconds; 0 means none.
  const std::vector<double> limits{300, 0, 600, 0, 0, 0, 0, 600, 0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0.0 && sec > limits[i]) {
      o.pass = false;
      o.detail << " [over the " << limits[i] << " s budget]";
    }
    std::printf("%s C%zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), sec);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
