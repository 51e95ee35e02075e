#include "sgl/star_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sgl/errors.hpp"
#include "sgl/exit_time_sampler.hpp"
#include "sgl/parallel.hpp"
#include "sgl/rng.hpp"

namespace sgl {

namespace {

struct Branch {
  double length;
  double density;
  int exit;  // edge index, or -1 for the loop
};

// Neumaier summation.
struct Sum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  void add(const Sum& o) {
    add(o.s);
    add(o.c);
  }
  double value() const { return s + c; }
};

struct Tally {
  std::vector<std::size_t> exits;
  Sum t1, t2, t4;
};

}  // namespace

EmpiricalExitLaw star_walk_oracle(const StarView& star, double h, std::uint64_t seed,
                                  std::size_t replicas, unsigned threads) {
  if (star.edges.empty()) throw InvalidInput("a star needs at least one ordinary edge");
  if (replicas == 0) throw InvalidInput("need at least one replica");
  double min_len = INFINITY;
  for (const auto& e : star.edges) min_len = std::min(min_len, e.length);
  if (star.loop) min_len = std::min(min_len, star.loop->length);
  if (!(h > 0.0) || h > min_len / 20.0) {
    throw InvalidInput("step h must satisfy 0 < h <= min length / 20 (min length " +
                       std::to_string(min_len) + ")");
  }

  std::vector<Branch> branches;
  std::vector<double> cumulative;
  double q_total = 0.0, q_omega = 0.0;
  for (std::size_t j = 0; j < star.edges.size(); ++j) {
    const auto& e = star.edges[j];
    branches.push_back({e.length, e.density, static_cast<int>(j)});
    q_total += e.q;
    q_omega += e.q * e.density;
    cumulative.push_back(q_total);
  }
  if (star.loop) {
    // Both orientations start at the center and end there, so they share one branch.
    branches.push_back({star.loop->length, star.loop->density, -1});
    q_total += star.loop->q;
    q_omega += star.loop->q * star.loop->density;
    cumulative.push_back(q_total);
  }
  for (double& c : cumulative) c /= q_total;
  cumulative.back() = 1.0;
  const double center_time = h * h * q_omega / q_total;
  const UnitExitTime& tau = UnitExitTime::instance();
  const std::size_t k = star.edges.size();

  constexpr std::size_t block = 2048;
  const std::size_t blocks = (replicas + block - 1) / block;
  std::vector<Tally> tallies(blocks);
  parallel_for(blocks, threads ? threads : thread_count(), [&](std::size_t b) {
    Tally& tally = tallies[b];
    tally.exits.assign(k, 0);
    const std::size_t end = std::min(replicas, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      Philox4x64 rng = replica_stream(seed, i);
      double t = 0.0;
      int exit = -1;
      while (exit < 0) {
        t += center_time;
        const double u = rng.uniform();
        const std::size_t pick = static_cast<std::size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        const Branch& br = branches[std::min(pick, branches.size() - 1)];
        double y = h;
        for (;;) {
          const double to_center = y, to_far = br.length - y;
          const double r = std::min(to_center, to_far);
          const std::uint64_t bits = rng();
          const double v = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
          t += br.density * r * r * tau.quantile(v);
          if (bits & 1u) {
            if (r == to_far) {
              exit = br.exit;  // -1 on the loop: back at the center
              break;
            }
            y += r;
          } else {
            if (r == to_center) break;
            y -= r;
          }
        }
      }
      ++tally.exits[static_cast<std::size_t>(exit)];
      tally.t1.add(t);
      tally.t2.add(t * t);
      tally.t4.add(t * t * t * t);
    }
  });

  Tally total;
  total.exits.assign(k, 0);
  for (const Tally& t : tallies) {
    for (std::size_t j = 0; j < k; ++j) total.exits[j] += t.exits[j];
    total.t1.add(t.t1);
    total.t2.add(t.t2);
    total.t4.add(t.t4);
  }
  const double n = static_cast<double>(replicas);
  EmpiricalExitLaw out;
  out.replicas = replicas;
  out.h = h;
  for (std::size_t j = 0; j < k; ++j) {
    const double p = static_cast<double>(total.exits[j]) / n;
    out.probabilities.push_back(p);
    out.probability_stderr.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  out.mean = total.t1.value() / n;
  out.second_moment = total.t2.value() / n;
  const double fourth = total.t4.value() / n;
  out.mean_stderr = std::sqrt(std::max(0.0, out.second_moment - out.mean * out.mean) / n);
  out.second_moment_stderr =
      std::sqrt(std::max(0.0, fourth - out.second_moment * out.second_moment) / n);
  return out;
}

}  // namespace sgl
