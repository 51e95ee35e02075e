#include "sgl/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "sgl/errors.hpp"

namespace sgl {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::horizon_reached: return "horizon_reached";
    case Termination::jump_cap: return "jump_cap";
    case Termination::frontier_hit: return "frontier_hit";
  }
  return "unknown";
}

WalkSampler::WalkSampler(const WeightedGraph& g, std::optional<std::vector<double>> theta) : g_(g) {
  const std::size_t n = g.vertex_count();
  if (theta && theta->size() != n) throw InvalidInput("theta needs one value per vertex");
  rate_.resize(n);
  offset_.assign(n + 1, 0);
  for (Vertex x = 0; x < n; ++x) {
    const double th = theta ? (*theta)[x] : 1.0;
    if (!(th > 0.0) || !std::isfinite(th)) throw InvalidInput("theta must be positive and finite");
    const double pi = g.vertex_measure(x);
    if (!(pi > 0.0)) throw InvalidInput("vertex " + std::to_string(x) + " has zero measure");
    rate_[x] = pi / th;
    offset_[x + 1] = offset_[x] + g.degree(x);
  }
  cdf_.resize(offset_[n]);
  for (Vertex x = 0; x < n; ++x) {
    const double pi = g.vertex_measure(x);
    double acc = 0.0;
    std::size_t k = offset_[x];
    for (const Incidence& inc : g.neighbors(x)) {
      acc += g.edge(inc.edge).weight;
      cdf_[k++] = acc / pi;
    }
    if (k > offset_[x]) cdf_[k - 1] = 1.0;
  }
}

Vertex WalkSampler::next(Vertex x, Philox4x64& rng) const {
  const auto nb = g_.neighbors(x);
  if (nb.size() == 1) return nb[0].neighbor;
  const double u = rng.uniform();
  const auto begin = cdf_.begin() + static_cast<std::ptrdiff_t>(offset_[x]);
  const auto end = cdf_.begin() + static_cast<std::ptrdiff_t>(offset_[x + 1]);
  const auto it = std::lower_bound(begin, end, u);
  const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - begin), nb.size() - 1);
  return nb[j].neighbor;
}

WalkSampler::Outcome WalkSampler::simulate(Vertex x0, std::uint64_t seed, double horizon,
                                           std::size_t jump_cap, std::size_t checkpoint,
                                           TrajectoryRecord* record) const {
  if (x0 >= g_.vertex_count()) throw InvalidInput("unknown start vertex");
  if (!(horizon > 0.0)) throw InvalidInput("horizon must be positive");
  Philox4x64 rng(seed);
  if (record) {
    *record = TrajectoryRecord{};
    record->seed = seed;
    record->vertices.push_back(x0);
  }
  Outcome out;
  Vertex x = x0;
  // Neumaier-compensated running lifetime.
  double t = 0.0, comp = 0.0;
  bool checkpoint_seen = false;
  if (g_.on_frontier(x0)) {
    out.termination = Termination::frontier_hit;
  } else {
    for (;;) {
      if (out.jumps == jump_cap) {
        out.termination = Termination::jump_cap;
        break;
      }
      const double sigma = rng.exponential(rate_[x]);
      if (t + comp + sigma >= horizon) {
        out.termination = Termination::horizon_reached;
        break;
      }
      const double u = t + sigma;
      comp += std::fabs(t) >= sigma ? (t - u) + sigma : (sigma - u) + t;
      t = u;
      ++out.jumps;
      x = next(x, rng);
      if (record) {
        record->vertices.push_back(x);
        record->holding.push_back(sigma);
        record->cumulative.push_back(t + comp);
      }
      if (out.jumps == checkpoint) {
        out.lifetime_at_checkpoint = t + comp;
        checkpoint_seen = true;
      }
      if (g_.on_frontier(x)) {
        out.termination = Termination::frontier_hit;
        break;
      }
    }
  }
  out.lifetime = t + comp;
  if (!checkpoint_seen) {
    out.lifetime_at_checkpoint =
        out.termination == Termination::horizon_reached ? horizon : out.lifetime;
  }
  if (record) record->termination = out.termination;
  return out;
}

TrajectoryRecord WalkSampler::run(Vertex x0, std::uint64_t seed, double horizon,
                                  std::size_t jump_cap) const {
  TrajectoryRecord rec;
  simulate(x0, seed, horizon, jump_cap, 0, &rec);
  return rec;
}

TrajectoryRecord vsrw_trajectory(const WeightedGraph& g, Vertex x0, std::uint64_t seed,
                                 double horizon, std::size_t jump_cap) {
  return WalkSampler(g).run(x0, seed, horizon, jump_cap);
}

TrajectoryRecord csrw_trajectory(const WeightedGraph& g, const std::vector<double>& theta,
                                 Vertex x0, std::uint64_t seed, double horizon,
                                 std::size_t jump_cap) {
  return WalkSampler(g, theta).run(x0, seed, horizon, jump_cap);
}

namespace {

// Linear-interpolation quantile of sorted data.
double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

}  // namespace

ExplosionStats explosion_stats(const WeightedGraph& g, Vertex x0, std::uint64_t master_seed,
                               std::size_t replicas, double horizon, std::size_t jump_cap,
                               const ExplosionOptions& options) {
  if (replicas == 0) throw InvalidInput("need at least one replica");
  if (!(horizon > 0.0)) throw InvalidInput("horizon must be positive");
  if (jump_cap == 0) throw InvalidInput("jump cap must be positive");
  if (options.checkpoint_divisor < 2) throw InvalidInput("checkpoint divisor must be at least 2");
  const WalkSampler sampler(g, options.theta);
  ExplosionStats s;
  s.replicas = replicas;
  s.horizon = horizon;
  s.jump_cap = jump_cap;
  s.checkpoint = std::max<std::size_t>(1, jump_cap / options.checkpoint_divisor);
  s.runs.resize(replicas);
  const unsigned threads = options.threads ? options.threads : thread_count();
  parallel_for(replicas, threads, [&](std::size_t i) {
    const auto r = sampler.simulate(x0, replica_seed(master_seed, i), horizon, jump_cap, s.checkpoint);
    ReplicaSummary& out = s.runs[i];
    out.termination = r.termination;
    out.jumps = r.jumps;
    // Horizon-censored lifetimes are recorded as the horizon itself.
    out.lifetime = r.termination == Termination::horizon_reached ? horizon : r.lifetime;
    out.lifetime_at_checkpoint = r.lifetime_at_checkpoint;
  });
  std::vector<double> final_life, check_life;
  for (const ReplicaSummary& r : s.runs) {
    switch (r.termination) {
      case Termination::horizon_reached: ++s.horizon_count; break;
      case Termination::jump_cap:
        ++s.cap_count;
        if (r.lifetime < horizon) s.capped_below_horizon += 1.0;
        break;
      case Termination::frontier_hit: ++s.frontier_count; break;
    }
    final_life.push_back(r.lifetime);
    check_life.push_back(r.lifetime_at_checkpoint);
  }
  const double n = static_cast<double>(replicas);
  s.capped_below_horizon /= n;
  s.survival_fraction = static_cast<double>(s.horizon_count) / n;
  std::sort(final_life.begin(), final_life.end());
  std::sort(check_life.begin(), check_life.end());
  s.quantile_levels = {0.25, 0.5, 0.75};
  for (double q : s.quantile_levels) {
    const double a = quantile_sorted(final_life, q), b = quantile_sorted(check_life, q);
    s.quantiles.push_back(a);
    s.checkpoint_quantiles.push_back(b);
    const double drift = a > 0.0 ? std::fabs(a - b) / a : 0.0;
    s.quantile_drift = std::max(s.quantile_drift, drift);
  }
  s.cauchy_stable = s.quantile_drift <= options.stability_tolerance;
  s.signature_fraction = s.cauchy_stable ? s.capped_below_horizon : 0.0;
  return s;
}

CoupledBounds coupled_lifetime_bounds(const WeightedGraph& g, const MetricGraph& mg, Vertex x0,
                                      std::uint64_t seed, std::size_t n_jumps) {
  const WeightedGraph& t = mg.topology();
  bool same = t.vertex_count() == g.vertex_count() && t.edge_count() == g.edge_count();
  for (EdgeId e = 0; same && e < g.edge_count(); ++e) {
    same = t.edge(e).u == g.edge(e).u && t.edge(e).v == g.edge(e).v;
  }
  if (!same) throw InvalidInput("metric graph and weighted graph have different topologies");
  std::vector<double> mean_exit(g.vertex_count());
  CoupledBounds out;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const StarView star = star_of(mg, x);
    const std::vector<double> p = exit_probabilities(star);
    const std::vector<double> w = jump_probabilities(g, x);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (std::fabs(p[j] - w[j]) > 1e-12) {
        throw InvalidInput("mismatched graphs: jump laws differ at vertex " + std::to_string(x));
      }
    }
    mean_exit[x] = exit_time_mean(star);
    if (!g.on_frontier(x)) {
      double c = 0.0;
      for (const Incidence& inc : g.neighbors(x)) c += edge_measure(mg.edge(inc.edge));
      out.c_sup = std::max(out.c_sup, c);
    }
  }
  const WalkSampler sampler(g);
  Philox4x64 rng(seed);
  Vertex x = x0;
  double a = 0.0, b = 0.0;
  constexpr double slack = 1e-12;
  for (std::size_t k = 0; k < n_jumps; ++k) {
    out.chain.push_back(x);
    a += 1.0 / g.vertex_measure(x);
    b += mean_exit[x];
    out.walk_means.push_back(a);
    out.graph_means.push_back(b);
    const bool ok = a <= b * (1.0 + slack) && b <= (out.c_sup + 1.0) * a * (1.0 + slack);
    if (!ok && out.sandwich_holds) {
      out.sandwich_holds = false;
      out.first_violation = k;
    }
    x = sampler.next(x, rng);
    if (g.on_frontier(x)) break;
  }
  return out;
}

}  // namespace sgl
