#pragma once

#include <cstdint>
#include <vector>

#include "sgl/metric_graph.hpp"

namespace sgl {

struct EmpiricalExitLaw {
  std::vector<double> probabilities;
  std::vector<double> probability_stderr;
  double mean = 0.0, mean_stderr = 0.0;
  double second_moment = 0.0, second_moment_stderr = 0.0;
  std::size_t replicas = 0;
  double h = 0.0;
};

// Monte Carlo exit law of Brownian motion on a star started at the center.
//
// At the center the walk picks an ordinary edge with probability q/Q and each
// orientation of the loop with probability (q_loop / 2)/Q, Q = sum q over all
// branches, moves to offset h and is charged h^2 (sum q omega)/Q. Inside an
// edge the motion is simulated exactly in law by walk-on-spheres: from offset
// y it jumps y -> y +- r with r the distance to the nearer end, taking time
// omega r^2 tau with tau the unit-interval Brownian exit time. The walk ends at
// the far end of an ordinary edge; loop ends return to the center.
//
// Exit probabilities and the mean are exact for every h; the second moment
// carries an O(h) bias from the center rule.
EmpiricalExitLaw star_walk_oracle(const StarView& star, double h, std::uint64_t seed,
                                  std::size_t replicas, unsigned threads = 0);

}  // namespace sgl
