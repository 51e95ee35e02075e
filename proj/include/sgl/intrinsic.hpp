#pragma once

#include <cstddef>
#include <vector>

#include "sgl/graph.hpp"

namespace sgl {

enum class IntrinsicMethod {
  // Log-barrier interior point with Newton steps. Fast and accurate; the default.
  barrier,
  // Fixed-step projected ascent with cyclic Dykstra projections onto the
  // per-vertex ellipsoids. Slow; kept as an independent cross-check.
  projected_ascent,
};

struct IntrinsicOptions {
  IntrinsicMethod method = IntrinsicMethod::barrier;
  double tolerance = 1e-8;
  std::size_t max_iterations = 1'000'000;
};

struct IntrinsicResult {
  double value = 0.0;          // f(s) - f(t) for the witness, a lower bound on d_I(s, t)
  std::vector<double> witness; // f, normalized so that f(t) = 0
  double max_constraint = 0.0; // max_x energy density of f at x
  double gap_bound = 0.0;      // barrier: m / tau at exit; ascent: last improvement
  double last_improvement = 0.0;
  std::size_t iterations = 0;
};

// (1/2) sum_{y ~ x} pi_xy (f(y) - f(x))^2.
double energy_density(const WeightedGraph& g, const std::vector<double>& f, Vertex x);

// Maximizes f(s) - f(t) over functions with energy density at most 1 at every
// vertex of the (possibly truncated) graph. Throws SolverError carrying the best
// feasible value when the iteration cap is hit.
IntrinsicResult intrinsic_metric(const WeightedGraph& g, Vertex s, Vertex t,
                                 const IntrinsicOptions& options = {});

}  // namespace sgl
