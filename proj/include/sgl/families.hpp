#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sgl/expression.hpp"
#include "sgl/graph.hpp"

namespace sgl {

inline constexpr std::size_t kDefaultVertexCap = 20'000'000;

// max(ln x, 1).
double log_plus(double x);

// pi_{n,n+1} = (n+1)^2 log_+^beta(n+1).
double birth_death_weight(double beta, std::size_t n);

// Path 0..n with birth-death weights; frontier {n}.
WeightedGraph generate_birth_death(double beta, std::size_t n);

// Children of a depth-r vertex in the spherically symmetric tree: floor(r^alpha),
// except the root which gets 1.
std::size_t tree_branching(double alpha, std::size_t r);

// Rooted tree with unit weights cut at depth `depth`; ids are breadth-first and
// the frontier is the deepest level.
WeightedGraph generate_spherical_tree(double alpha, std::size_t depth,
                                      std::size_t vertex_cap = kDefaultVertexCap);

// Level data for the same tree without materializing it. Counts are kept as
// logarithms since they overflow doubles long before depth 200.
struct TreeLevels {
  double alpha = 1.0;
  std::size_t depth = 0;
  std::vector<std::size_t> branching;  // k(r), r = 0..depth-1
  std::vector<double> log_count;       // ln |S_r|, r = 0..depth
  std::vector<double> vertex_measure;  // pi at a depth-r vertex of the truncated tree
};
TreeLevels spherical_tree_levels(double alpha, std::size_t depth);
// ln of the total vertex count of the truncation.
double log_vertex_count(const TreeLevels& t);

using BranchingFunction = std::function<double(std::size_t)>;

// Antitree: spine 0..n+1 and sets A_0..A_n, |A_k| = floor(r(k)), each member joined
// to spine k and k+1 with weight 1. Frontier {n+1} and A_n.
WeightedGraph generate_antitree(const BranchingFunction& r, std::size_t n,
                                std::size_t vertex_cap = kDefaultVertexCap);
WeightedGraph generate_antitree(const Expression& r, std::size_t n,
                                std::size_t vertex_cap = kDefaultVertexCap);

struct AntitreeLayout {
  std::vector<Vertex> spine;        // id of spine vertex k, k = 0..n+1
  std::vector<Vertex> level_begin;  // first id of A_k
  std::vector<std::size_t> level_size;
};
AntitreeLayout antitree_layout(const BranchingFunction& r, std::size_t n);

// width x height grid patch with unit weights, row-major ids; the boundary is
// the frontier of the truncated Z^2.
WeightedGraph generate_lattice(std::size_t width, std::size_t height);

enum class FamilyKind { birth_death, spherical_tree, antitree, lattice, explicit_graph };

std::string to_string(FamilyKind k);
FamilyKind family_from_string(const std::string& s);

struct FamilySpec {
  FamilyKind kind = FamilyKind::birth_death;
  double beta = 0.0;                // birth_death
  double alpha = 1.0;               // spherical_tree
  std::string branching = "n+1";    // antitree
  std::size_t size = 0;             // N for birth_death/antitree, depth for trees
  std::size_t width = 0, height = 0;  // lattice
  std::string path;                 // explicit_graph
};

// Throws InvalidInput when parameters are out of range.
void validate_family(const FamilySpec& spec);

// Builds the graph for a non-explicit family.
WeightedGraph generate(const FamilySpec& spec, std::size_t vertex_cap = kDefaultVertexCap);

}  // namespace sgl
