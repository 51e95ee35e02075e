#include "sgl/families.hpp"

#include <cmath>
#include <limits>

#include "sgl/errors.hpp"

namespace sgl {

double log_plus(double x) { return std::max(std::log(x), 1.0); }

double birth_death_weight(double beta, std::size_t n) {
  const double m = static_cast<double>(n) + 1.0;
  return m * m * std::pow(log_plus(m), beta);
}

WeightedGraph generate_birth_death(double beta, std::size_t n) {
  if (!(beta >= 0.0 && beta < 2.0)) throw InvalidInput("birth-death beta must lie in [0, 2)");
  if (n < 2) throw InvalidInput("birth-death truncation N must be at least 2");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    edges.push_back({static_cast<Vertex>(k), static_cast<Vertex>(k + 1), birth_death_weight(beta, k)});
  }
  return WeightedGraph(n + 1, std::move(edges), {static_cast<Vertex>(n)});
}

std::size_t tree_branching(double alpha, std::size_t r) {
  if (r == 0) return 1;
  const double p = std::pow(static_cast<double>(r), alpha);
  double k = std::floor(p);
  // pow may land one ulp below an exact integer such as 4^1.5.
  if (k + 1.0 - p < 1e-12 * p) k += 1.0;
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidInput("tree alpha must lie in (0, 2)");
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

TreeLevels spherical_tree_levels(double alpha, std::size_t depth) {
  check_alpha(alpha);
  if (depth < 1) throw InvalidInput("tree depth must be at least 1");
  TreeLevels t;
  t.alpha = alpha;
  t.depth = depth;
  t.log_count.assign(depth + 1, 0.0);
  t.vertex_measure.assign(depth + 1, 0.0);
  for (std::size_t r = 0; r < depth; ++r) {
    t.branching.push_back(tree_branching(alpha, r));
    t.log_count[r + 1] = t.log_count[r] + std::log(static_cast<double>(t.branching[r]));
  }
  t.vertex_measure[0] = 1.0;
  for (std::size_t r = 1; r <= depth; ++r) {
    t.vertex_measure[r] = 1.0 + static_cast<double>(tree_branching(alpha, r));
  }
  return t;
}

double log_vertex_count(const TreeLevels& t) {
  double total = -std::numeric_limits<double>::infinity();
  for (double lc : t.log_count) total = log_add(total, lc);
  return total;
}

WeightedGraph generate_spherical_tree(double alpha, std::size_t depth, std::size_t vertex_cap) {
  TreeLevels levels = spherical_tree_levels(alpha, depth);
  const double log_total = log_vertex_count(levels);
  if (log_total > std::log(static_cast<double>(vertex_cap))) {
    throw InvalidInput("tree with alpha=" + std::to_string(alpha) + ", depth=" +
                       std::to_string(depth) + " has about e^" + std::to_string(log_total) +
                       " vertices, above the cap of " + std::to_string(vertex_cap));
  }
  std::vector<Edge> edges;
  std::vector<Vertex> frontier;
  Vertex level_start = 0, level_end = 1, next = 1;
  for (std::size_t r = 0; r < depth; ++r) {
    const std::size_t k = levels.branching[r];
    for (Vertex x = level_start; x < level_end; ++x) {
      for (std::size_t c = 0; c < k; ++c) edges.push_back({x, next++, 1.0});
    }
    level_start = level_end;
    level_end = next;
  }
  for (Vertex x = level_start; x < level_end; ++x) frontier.push_back(x);
  return WeightedGraph(next, std::move(edges), std::move(frontier));
}

AntitreeLayout antitree_layout(const BranchingFunction& r, std::size_t n) {
  AntitreeLayout layout;
  Vertex next = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double rk = std::floor(r(k));
    if (!(rk >= 1.0) || !std::isfinite(rk)) {
      throw InvalidInput("antitree branching r(" + std::to_string(k) + ") must be at least 1");
    }
    if (rk > 4e9) throw InvalidInput("antitree level too large");
    layout.spine.push_back(next++);
    layout.level_begin.push_back(next);
    layout.level_size.push_back(static_cast<std::size_t>(rk));
    next += static_cast<Vertex>(rk);
  }
  layout.spine.push_back(next);
  return layout;
}

WeightedGraph generate_antitree(const BranchingFunction& r, std::size_t n, std::size_t vertex_cap) {
  if (n < 1) throw InvalidInput("antitree truncation N must be at least 1");
  double estimate = static_cast<double>(n) + 2.0;
  for (std::size_t k = 0; k <= n; ++k) estimate += std::floor(r(k));
  if (estimate > static_cast<double>(vertex_cap)) {
    throw InvalidInput("antitree would have " + std::to_string(estimate) +
                       " vertices, above the cap of " + std::to_string(vertex_cap));
  }
  const AntitreeLayout layout = antitree_layout(r, n);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t i = 0; i < layout.level_size[k]; ++i) {
      const Vertex a = layout.level_begin[k] + static_cast<Vertex>(i);
      edges.push_back({layout.spine[k], a, 1.0});
      edges.push_back({a, layout.spine[k + 1], 1.0});
    }
  }
  std::vector<Vertex> frontier{layout.spine[n + 1]};
  for (std::size_t i = 0; i < layout.level_size[n]; ++i) {
    frontier.push_back(layout.level_begin[n] + static_cast<Vertex>(i));
  }
  return WeightedGraph(layout.spine[n + 1] + 1, std::move(edges), std::move(frontier));
}

WeightedGraph generate_antitree(const Expression& r, std::size_t n, std::size_t vertex_cap) {
  return generate_antitree([&r](std::size_t k) { return r(static_cast<double>(k)); }, n, vertex_cap);
}

WeightedGraph generate_lattice(std::size_t width, std::size_t height) {
  if (width < 2 || height < 1) throw InvalidInput("lattice needs width >= 2 and height >= 1");
  auto id = [width](std::size_t x, std::size_t y) { return static_cast<Vertex>(y * width + x); };
  std::vector<Edge> edges;
  std::vector<Vertex> frontier;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      if (x + 1 < width) edges.push_back({id(x, y), id(x + 1, y), 1.0});
      if (y + 1 < height) edges.push_back({id(x, y), id(x, y + 1), 1.0});
      if (x == 0 || y == 0 || x + 1 == width || y + 1 == height) frontier.push_back(id(x, y));
    }
  }
  return WeightedGraph(width * height, std::move(edges), std::move(frontier));
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::birth_death: return "birth_death";
    case FamilyKind::spherical_tree: return "spherical_tree";
    case FamilyKind::antitree: return "antitree";
    case FamilyKind::lattice: return "lattice";
    case FamilyKind::explicit_graph: return "explicit";
  }
  return "unknown";
}

FamilyKind family_from_string(const std::string& s) {
  if (s == "birth_death" || s == "birth-death") return FamilyKind::birth_death;
  if (s == "spherical_tree" || s == "tree") return FamilyKind::spherical_tree;
  if (s == "antitree") return FamilyKind::antitree;
  if (s == "lattice") return FamilyKind::lattice;
  if (s == "explicit") return FamilyKind::explicit_graph;
  throw InvalidInput("unknown family '" + s + "'");
}

void validate_family(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::birth_death:
      if (!(spec.beta >= 0.0 && spec.beta < 2.0)) throw InvalidInput("beta must lie in [0, 2)");
      if (spec.size < 2) throw InvalidInput("birth-death N must be at least 2");
      break;
    case FamilyKind::spherical_tree:
      check_alpha(spec.alpha);
      if (spec.size < 1) throw InvalidInput("tree depth must be at least 1");
      break;
    case FamilyKind::antitree:
      if (spec.size < 1) throw InvalidInput("antitree N must be at least 1");
      Expression::parse(spec.branching);
      break;
    case FamilyKind::lattice:
      if (spec.width < 2 || spec.height < 1) throw InvalidInput("lattice needs width >= 2");
      break;
    case FamilyKind::explicit_graph:
      if (spec.path.empty()) throw InvalidInput("explicit family needs a graph path");
      break;
  }
}

WeightedGraph generate(const FamilySpec& spec, std::size_t vertex_cap) {
  validate_family(spec);
  switch (spec.kind) {
    case FamilyKind::birth_death: return generate_birth_death(spec.beta, spec.size);
    case FamilyKind::spherical_tree: return generate_spherical_tree(spec.alpha, spec.size, vertex_cap);
    case FamilyKind::antitree:
      return generate_antitree(Expression::parse(spec.branching), spec.size, vertex_cap);
    case FamilyKind::lattice: return generate_lattice(spec.width, spec.height);
    case FamilyKind::explicit_graph: break;
  }
  throw InvalidInput("explicit families are loaded from a graph file, not generated");
}

}  // namespace sgl
