#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sgl/errors.hpp"
#include "sgl/expression.hpp"
#include "sgl/families.hpp"
#include "sgl/graph.hpp"

using namespace sgl;

TEST_CASE("valid path has an empty report") {
  const WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(validate_graph(g).ok());
}

TEST_CASE("loops and bad weights are reported") {
  const WeightedGraph loop(2, {{0, 0, 1.0}, {0, 1, 1.0}});
  const auto r1 = validate_graph(loop);
  CHECK(r1.has(ViolationKind::loop));
  CHECK(to_string(ViolationKind::loop) == "loop");

  const WeightedGraph neg(3, {{0, 1, 1.0}, {1, 2, -4.0}});
  const auto r2 = validate_graph(neg);
  CHECK(r2.has(ViolationKind::nonpositive_weight));
  CHECK(to_string(ViolationKind::nonpositive_weight) == "nonpositive weight");
  CHECK_THROWS_AS(require_valid(neg), InvalidInput);
}

TEST_CASE("duplicates, disconnection and isolated vertices") {
  CHECK(validate_graph(WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}})).has(ViolationKind::duplicate_edge));
  CHECK(validate_graph(WeightedGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}})).has(ViolationKind::disconnected));
  CHECK(validate_graph(WeightedGraph(3, {{0, 1, 1.0}})).has(ViolationKind::isolated_vertex));
  CHECK(validate_graph(WeightedGraph(2, {{0, 1, NAN}})).has(ViolationKind::non_finite_weight));
}

TEST_CASE("vertex measure is the incident weight sum") {
  const WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 4.0}});
  CHECK(g.vertex_measure(1) == 5.0);
  CHECK(g.vertex_measure(0) == 1.0);
  CHECK_THROWS(g.vertex_measure(3));
  const WeightedGraph k2(2, {{0, 1, 1.0}});
  CHECK(k2.vertex_measure(0) == 1.0);
  const auto p = jump_probabilities(g, 1);
  CHECK(p[0] == doctest::Approx(0.2));
  CHECK(p[1] == doctest::Approx(0.8));
}

TEST_CASE("out-of-range endpoints are rejected") {
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 1.0}}, {5}), InvalidInput);
}

TEST_CASE("birth-death weights") {
  const WeightedGraph g = generate_birth_death(0.0, 3);
  REQUIRE(g.edge_count() == 3);
  CHECK(g.edge(0).weight == 1.0);
  CHECK(g.edge(1).weight == 4.0);
  CHECK(g.edge(2).weight == 9.0);
  CHECK(g.frontier().size() == 1);
  CHECK(g.frontier()[0] == 3);

  const WeightedGraph h = generate_birth_death(1.5, 2);
  CHECK(h.edge(0).weight == 1.0);
  CHECK(h.edge(1).weight == 4.0);

  const WeightedGraph b = generate_birth_death(1.0, 10);
  CHECK(b.edge(9).weight == doctest::Approx(100.0 * std::log(10.0)).epsilon(1e-14));

  const WeightedGraph c = generate_birth_death(1.3, 50);
  for (Vertex n = 1; n < 50; ++n) {
    CHECK(c.vertex_measure(n) == c.edge(n - 1).weight + c.edge(n).weight);
  }
  CHECK(validate_graph(c).ok());
  CHECK_THROWS_AS(generate_birth_death(2.0, 10), InvalidInput);
  CHECK_THROWS_AS(generate_birth_death(-0.1, 10), InvalidInput);
  CHECK_THROWS_AS(generate_birth_death(1.0, 1), InvalidInput);
}

TEST_CASE("log_plus floors at one") {
  CHECK(log_plus(1.0) == 1.0);
  CHECK(log_plus(2.0) == 1.0);
  CHECK(log_plus(std::exp(2.0)) == doctest::Approx(2.0));
}

TEST_CASE("spherical tree branching") {
  CHECK(tree_branching(1.5, 2) == 2);
  CHECK(tree_branching(0.5, 3) == 1);
  CHECK(tree_branching(0.7, 0) == 1);
  CHECK(tree_branching(1.0, 7) == 7);
  CHECK(tree_branching(2.0 / 3.0, 8) == 4);  // 8^(2/3) = 4 exactly

  const WeightedGraph g = generate_spherical_tree(1.5, 3);
  // Depth 0: 1, depth 1: 1, depth 2: 1*1 = 1, depth 3: 1*2 = 2.
  CHECK(g.vertex_count() == 5);
  CHECK(validate_graph(g).ok());
  for (const Edge& e : g.edges()) CHECK(e.weight == 1.0);
  CHECK(g.frontier().size() == 2);

  const WeightedGraph t = generate_spherical_tree(1.0, 4);
  // Sizes 1, 1, 1, 2, 6.
  CHECK(t.vertex_count() == 11);
  CHECK(t.degree(0) == 1);

  const TreeLevels lv = spherical_tree_levels(1.0, 4);
  CHECK(std::exp(lv.log_count[4]) == doctest::Approx(6.0));
  CHECK_THROWS_AS(generate_spherical_tree(2.0, 3), InvalidInput);
  CHECK_THROWS_AS(generate_spherical_tree(1.5, 40, 1000), InvalidInput);
}

TEST_CASE("antitree counts and degrees") {
  const WeightedGraph g = generate_antitree([](std::size_t n) { return double(n + 1); }, 2);
  CHECK(g.vertex_count() == 10);
  CHECK(validate_graph(g).ok());
  const AntitreeLayout lay = antitree_layout([](std::size_t n) { return double(n + 1); }, 2);
  for (std::size_t k = 0; k <= 2; ++k) {
    for (std::size_t i = 0; i < lay.level_size[k]; ++i) CHECK(g.degree(lay.level_begin[k] + i) == 2);
  }
  CHECK(g.degree(lay.spine[1]) == 1 + 2);
  CHECK(g.degree(lay.spine[2]) == 2 + 3);
  // Frontier: spine 3 and A_2.
  CHECK(g.frontier().size() == 4);

  const WeightedGraph e = generate_antitree(Expression::parse("n+1"), 2);
  CHECK(e.vertex_count() == 10);

  std::size_t prev = 0;
  for (std::size_t n : {5, 10, 20}) {
    const WeightedGraph a = generate_antitree(Expression::parse("n*n+1"), n);
    CHECK(a.max_degree() > prev);
    prev = a.max_degree();
  }
}

TEST_CASE("generators are deterministic") {
  FamilySpec s;
  s.kind = FamilyKind::antitree;
  s.branching = "floor(sqrt(n))+1";
  s.size = 30;
  const WeightedGraph a = generate(s), b = generate(s);
  REQUIRE(a.edge_count() == b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    CHECK(a.edge(e).u == b.edge(e).u);
    CHECK(a.edge(e).v == b.edge(e).v);
    CHECK(a.edge(e).weight == b.edge(e).weight);
  }
}

TEST_CASE("lattice uses row-major ids and boundary frontier") {
  const WeightedGraph g = generate_lattice(3, 3);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 12);
  CHECK(g.frontier().size() == 8);
  CHECK_FALSE(g.on_frontier(4));
}

TEST_CASE("expression parser") {
  CHECK(Expression::parse("n+1")(3) == 4.0);
  CHECK(Expression::parse("2^3^2")(0) == 512.0);
  CHECK(Expression::parse("-n^2")(3) == -9.0);
  CHECK(Expression::parse("floor(sqrt(n)) * 2")(10) == 6.0);
  CHECK(Expression::parse("exp(log(n))")(5) == doctest::Approx(5.0));
  CHECK(Expression::parse("abs(1 - n) / 2")(5) == 2.0);
  CHECK(Expression::parse("ceil(n/3)")(4) == 2.0);
  CHECK_THROWS_AS(Expression::parse("n +"), InvalidInput);
  CHECK_THROWS_AS(Expression::parse("foo(n)"), InvalidInput);
  CHECK_THROWS_AS(Expression::parse("(n"), InvalidInput);
}

TEST_CASE("family names") {
  CHECK(family_from_string("birth-death") == FamilyKind::birth_death);
  CHECK(family_from_string("tree") == FamilyKind::spherical_tree);
  CHECK(family_from_string("antitree") == FamilyKind::antitree);
  CHECK_THROWS_AS(family_from_string("torus"), InvalidInput);
}
