#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgl/graph.hpp"
#include "sgl/metric_graph.hpp"
#include "sgl/parallel.hpp"
#include "sgl/rng.hpp"

namespace sgl {

enum class Termination { horizon_reached, jump_cap, frontier_hit };
std::string to_string(Termination t);

struct TrajectoryRecord {
  std::vector<Vertex> vertices;   // Z_0, ..., Z_n
  std::vector<double> holding;    // sigma_1..sigma_n, time spent at Z_{k-1}
  std::vector<double> cumulative; // cumulative lifetime after each jump
  Termination termination = Termination::horizon_reached;
  std::uint64_t seed = 0;

  std::size_t jumps() const { return holding.size(); }
  double lifetime() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

// Walk sampler with precomputed per-vertex jump distributions. The holding rate
// at x is pi_x / theta_x (theta = nullopt means theta = 1, the VSRW).
class WalkSampler {
 public:
  WalkSampler(const WeightedGraph& g, std::optional<std::vector<double>> theta = std::nullopt);

  const WeightedGraph& graph() const { return g_; }
  double rate(Vertex x) const { return rate_[x]; }
  Vertex next(Vertex x, Philox4x64& rng) const;

  struct Outcome {
    double lifetime = 0.0;  // final cumulative time, below the horizon
    std::size_t jumps = 0;
    Termination termination = Termination::horizon_reached;
    // Cumulative time after `checkpoint` jumps, or the final value if the walk
    // stopped earlier (the horizon itself if it stopped there).
    double lifetime_at_checkpoint = 0.0;
  };

  // Simulates one walk; fills *record when given.
  Outcome simulate(Vertex x0, std::uint64_t seed, double horizon, std::size_t jump_cap,
                   std::size_t checkpoint = 0, TrajectoryRecord* record = nullptr) const;
  TrajectoryRecord run(Vertex x0, std::uint64_t seed, double horizon, std::size_t jump_cap) const;

 private:
  const WeightedGraph& g_;
  std::vector<double> rate_;
  std::vector<double> cdf_;  // cumulative jump probabilities aligned with incidences
  std::vector<std::size_t> offset_;
};

TrajectoryRecord vsrw_trajectory(const WeightedGraph& g, Vertex x0, std::uint64_t seed,
                                 double horizon, std::size_t jump_cap);
TrajectoryRecord csrw_trajectory(const WeightedGraph& g, const std::vector<double>& theta,
                                 Vertex x0, std::uint64_t seed, double horizon,
                                 std::size_t jump_cap);

struct ExplosionOptions {
  std::optional<std::vector<double>> theta;  // CSRW vertex measure; nullopt for VSRW
  double stability_tolerance = 0.05;
  std::size_t checkpoint_divisor = 10;  // compare lifetimes at cap / divisor and cap
  unsigned threads = 0;                 // 0 selects thread_count()
};

struct ReplicaSummary {
  double lifetime = 0.0;             // at termination
  double lifetime_at_checkpoint = 0.0;
  std::size_t jumps = 0;
  Termination termination = Termination::horizon_reached;
};

struct ExplosionStats {
  std::size_t replicas = 0;
  double horizon = 0.0;
  std::size_t jump_cap = 0;
  std::size_t checkpoint = 0;
  std::vector<ReplicaSummary> runs;
  std::size_t horizon_count = 0, cap_count = 0, frontier_count = 0;
  // Fraction of replicas that hit the jump cap before the horizon.
  double capped_below_horizon = 0.0;
  double survival_fraction = 0.0;  // replicas whose lifetime reached the horizon
  std::vector<double> quantile_levels;        // 0.25, 0.5, 0.75
  std::vector<double> quantiles;              // lifetime quantiles at termination
  std::vector<double> checkpoint_quantiles;   // same at the checkpoint
  double quantile_drift = 0.0;  // max relative change between the two
  bool cauchy_stable = false;
  // capped_below_horizon when the lifetime quantiles are Cauchy-stable, else 0.
  double signature_fraction = 0.0;
};

ExplosionStats explosion_stats(const WeightedGraph& g, Vertex x0, std::uint64_t master_seed,
                               std::size_t replicas, double horizon, std::size_t jump_cap,
                               const ExplosionOptions& options = {});

struct CoupledBounds {
  std::vector<Vertex> chain;
  std::vector<double> walk_means;  // A_N
  std::vector<double> graph_means; // B_N
  double c_sup = 0.0;
  bool sandwich_holds = true;
  std::size_t first_violation = 0;
};

// One jump chain of the VSRW; A_N = sum 1/pi_{Z_n}, B_N = sum E^{Z_n} T of the
// metric graph. Stops early at the frontier.
CoupledBounds coupled_lifetime_bounds(const WeightedGraph& g, const MetricGraph& mg, Vertex x0,
                                      std::uint64_t seed, std::size_t n_jumps);

}  // namespace sgl
