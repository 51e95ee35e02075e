#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sgl/errors.hpp"
#include "sgl/intrinsic.hpp"
#include "sgl/linear_program.hpp"
#include "sgl/metrics.hpp"

using namespace sgl;

namespace {

WeightedGraph random_graph(std::mt19937_64& gen, Vertex n) {
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.push_back({Vertex(gen() % i), i, std::exp(u(gen))});
  for (int extra = 0; extra < int(n) / 2; ++extra) {
    const Vertex a = Vertex(gen() % n), b = Vertex(gen() % n);
    if (a == b) continue;
    bool dup = false;
    for (const Edge& e : edges) dup |= (e.u == a && e.v == b) || (e.u == b && e.v == a);
    if (!dup) edges.push_back({a, b, std::exp(u(gen))});
  }
  return WeightedGraph(n, edges);
}

}  // namespace

TEST_CASE("single edge") {
  // Constraint at both ends: (w/2) (f0 - f1)^2 <= 1.
  const WeightedGraph g(2, {{0, 1, 4.0}});
  const IntrinsicResult r = intrinsic_metric(g, 0, 1);
  CHECK(r.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
  CHECK(r.max_constraint <= 1.0 + 1e-12);
  CHECK(r.witness[1] == 0.0);
}

TEST_CASE("unit path of three vertices") {
  // At the middle vertex u^2 + v^2 <= 2 with u, v the two increments; the optimum is u = v = 1.
  const WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const IntrinsicResult r = intrinsic_metric(g, 0, 2);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(r.value <= 2.0 + 1e-12);
}

TEST_CASE("witness is feasible and value matches it") {
  std::mt19937_64 gen(21);
  const WeightedGraph g = random_graph(gen, 15);
  const IntrinsicResult r = intrinsic_metric(g, 0, 14);
  for (Vertex x = 0; x < g.vertex_count(); ++x) CHECK(energy_density(g, r.witness, x) <= 1.0 + 1e-12);
  CHECK(r.witness[0] - r.witness[14] == doctest::Approx(r.value).epsilon(1e-14));
  CHECK(r.gap_bound <= 1e-8 * std::max(1.0, r.value) + 1e-12);
}

TEST_CASE("bounds against dV and dE") {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 5; ++rep) {
    const WeightedGraph g = random_graph(gen, 12);
    const DistanceMap dv = path_metric(g, standard_lengths(g, LengthKind::dV), 0);
    const DistanceMap de = path_metric(g, standard_lengths(g, LengthKind::dE), 0);
    for (Vertex t = 1; t < g.vertex_count(); ++t) {
      const IntrinsicResult r = intrinsic_metric(g, 0, t);
      CHECK(std::sqrt(2.0) * dv.distance[t] <= r.value + r.gap_bound + 1e-6);
      CHECK(r.value <= 2.0 * de.distance[t] + 1e-6);
    }
  }
}

TEST_CASE("projected ascent agrees with the barrier method") {
  std::mt19937_64 gen(17);
  const WeightedGraph g = random_graph(gen, 8);
  IntrinsicOptions ascent;
  ascent.method = IntrinsicMethod::projected_ascent;
  ascent.tolerance = 1e-10;
  const IntrinsicResult a = intrinsic_metric(g, 0, 7, ascent);
  const IntrinsicResult b = intrinsic_metric(g, 0, 7);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-5));
  CHECK(a.value <= b.value + b.gap_bound + 1e-9);
  for (Vertex x = 0; x < g.vertex_count(); ++x) CHECK(energy_density(g, a.witness, x) <= 1.0 + 1e-12);
}

TEST_CASE("iteration cap reports the best value") {
  std::mt19937_64 gen(2);
  const WeightedGraph g = random_graph(gen, 10);
  IntrinsicOptions o;
  o.max_iterations = 2;
  try {
    intrinsic_metric(g, 0, 9, o);
    FAIL("expected a solver error");
  } catch (const SolverError& e) {
    CHECK(e.best_value() >= 0.0);
  }
}

TEST_CASE("same endpoints and bad vertices") {
  const WeightedGraph g(2, {{0, 1, 1.0}});
  CHECK_THROWS_AS(intrinsic_metric(g, 0, 0), InvalidInput);
  CHECK_THROWS_AS(intrinsic_metric(g, 0, 5), InvalidInput);
}

TEST_CASE("simplex on a small LP") {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3 -> (3, 1), value 11.
  const double v = detail::maximize_nonnegative({3, 2}, {{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3});
  CHECK(v == doctest::Approx(11.0));
  CHECK(std::isinf(detail::maximize_nonnegative({1, 0}, {{0, 1}}, {1})));
}
