#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sgl/errors.hpp"
#include "sgl/graph.hpp"
#include "sgl/metrics.hpp"

namespace sgl {

using Rational = boost::multiprecision::cpp_rational;

// Length l, jump conductance p and density omega of one metric edge or loop.
struct SegmentParams {
  double length = 1.0;
  double conductance = 1.0;
  double density = 1.0;
};

class MetricGraph {
 public:
  MetricGraph() = default;
  // One parameter triple per topology edge; loops are optional per vertex.
  MetricGraph(WeightedGraph topology, std::vector<SegmentParams> edges,
              std::vector<std::optional<SegmentParams>> loops);

  const WeightedGraph& topology() const { return topology_; }
  std::size_t vertex_count() const { return topology_.vertex_count(); }
  const SegmentParams& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<SegmentParams>& edges() const { return edges_; }
  const std::optional<SegmentParams>& loop(Vertex x) const { return loops_[x]; }

 private:
  WeightedGraph topology_;
  std::vector<SegmentParams> edges_;
  std::vector<std::optional<SegmentParams>> loops_;
};

template <typename Scalar>
struct BasicStarEdge {
  Scalar length;
  Scalar q;  // p for ordinary edges, 2p for loops
  Scalar density;
  Vertex far = 0;
};

// The star of a vertex: its ordinary edges and an optional loop.
template <typename Scalar>
struct BasicStarView {
  Vertex center = 0;
  std::vector<BasicStarEdge<Scalar>> edges;
  std::optional<BasicStarEdge<Scalar>> loop;
};

using StarView = BasicStarView<double>;
using ExactStarView = BasicStarView<Rational>;

template <typename Scalar>
struct BasicExitLaw {
  std::vector<Scalar> probabilities;
  Scalar mean;
  Scalar second_moment;
  Scalar variance;
};

using ExitLaw = BasicExitLaw<double>;
using ExactExitLaw = BasicExitLaw<Rational>;

// Builds a star from (l, p, omega) triples. q is derived, never passed in.
template <typename Scalar>
BasicStarView<Scalar> make_star(const std::vector<std::array<Scalar, 3>>& edges,
                                const std::optional<std::array<Scalar, 3>>& loop = std::nullopt) {
  if (edges.empty()) throw InvalidInput("a star needs at least one ordinary edge");
  BasicStarView<Scalar> s;
  Vertex far = 1;
  auto check = [](const std::array<Scalar, 3>& e) {
    for (const Scalar& v : e) {
      if (!(v > Scalar(0))) throw InvalidInput("star parameters must be positive");
    }
  };
  for (const auto& e : edges) {
    check(e);
    s.edges.push_back({e[0], e[1], e[2], far++});
  }
  if (loop) {
    check(*loop);
    s.loop = BasicStarEdge<Scalar>{(*loop)[0], Scalar(2) * (*loop)[1], (*loop)[2], 0};
  }
  return s;
}

StarView star_of(const MetricGraph& mg, Vertex x);

template <typename Scalar>
Scalar exit_denominator(const BasicStarView<Scalar>& s) {
  Scalar d(0);
  for (const auto& e : s.edges) d += e.q / e.length;
  return d;
}

template <typename Scalar>
std::vector<Scalar> exit_probabilities(const BasicStarView<Scalar>& s) {
  if (s.edges.empty()) throw InvalidInput("a star needs at least one ordinary edge");
  const Scalar d = exit_denominator(s);
  std::vector<Scalar> p;
  p.reserve(s.edges.size());
  for (const auto& e : s.edges) p.push_back((e.q / e.length) / d);
  return p;
}

// Exit distribution started at offset y along edge i (nullopt selects the loop).
template <typename Scalar>
std::vector<Scalar> exit_probability_interior(const BasicStarView<Scalar>& s,
                                              std::optional<std::size_t> i, const Scalar& y) {
  std::vector<Scalar> b = exit_probabilities(s);
  if (!i) {
    if (!s.loop) throw InvalidInput("star has no loop");
    if (y < Scalar(0) || y > s.loop->length) throw InvalidInput("offset out of range");
    return b;
  }
  if (*i >= s.edges.size()) throw InvalidInput("edge index out of range");
  const Scalar& li = s.edges[*i].length;
  if (y < Scalar(0) || y > li) throw InvalidInput("offset out of range");
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (j == *i) {
      b[j] = b[j] + (Scalar(1) - b[j]) * y / li;
    } else {
      b[j] = b[j] - b[j] * y / li;
    }
  }
  return b;
}

template <typename Scalar>
Scalar loop_sum_first(const BasicStarView<Scalar>& s) {
  Scalar n(0);
  for (const auto& e : s.edges) n += e.density * e.q * e.length;
  if (s.loop) n += s.loop->density * s.loop->q * s.loop->length;
  return n;
}

template <typename Scalar>
Scalar exit_time_mean(const BasicStarView<Scalar>& s) {
  if (s.edges.empty()) throw InvalidInput("a star needs at least one ordinary edge");
  return loop_sum_first(s) / exit_denominator(s);
}

// Mean exit time from offset y along edge i (nullopt selects the loop).
template <typename Scalar>
Scalar exit_time_mean_interior(const BasicStarView<Scalar>& s, std::optional<std::size_t> i,
                               const Scalar& y) {
  const Scalar b = exit_time_mean(s);
  if (!i) {
    if (!s.loop) throw InvalidInput("star has no loop");
    if (y < Scalar(0) || y > s.loop->length) throw InvalidInput("offset out of range");
    return s.loop->density * y * (s.loop->length - y) + b;
  }
  if (*i >= s.edges.size()) throw InvalidInput("edge index out of range");
  const auto& e = s.edges[*i];
  if (y < Scalar(0) || y > e.length) throw InvalidInput("offset out of range");
  return -e.density * y * y + (e.density * e.length - b / e.length) * y + b;
}

// First and second moments of the exit time from the center.
//
// With D = sum q/l over ordinary edges, S1 = sum omega q l and S3 = sum omega^2 q l^3
// over all edges including the loop, and L = omega q l of the loop:
//   E T^2 = S3/(3D) + (4/3)(S1/D)^2 + (2/3) L S1 / D^2.
// The loop coefficient 2/3 follows from solving the second-moment boundary
// problem on the loop; the discrete-chain oracle in the tests confirms it.
template <typename Scalar>
BasicExitLaw<Scalar> exit_time_moments(const BasicStarView<Scalar>& s) {
  BasicExitLaw<Scalar> law;
  law.probabilities = exit_probabilities(s);
  const Scalar d = exit_denominator(s);
  const Scalar s1 = loop_sum_first(s);
  Scalar s3(0);
  for (const auto& e : s.edges) s3 += e.density * e.density * e.q * e.length * e.length * e.length;
  Scalar lp(0);
  if (s.loop) {
    const auto& l = *s.loop;
    s3 += l.density * l.density * l.q * l.length * l.length * l.length;
    lp = l.density * l.q * l.length;
  }
  const Scalar third = Scalar(1) / Scalar(3);
  const Scalar m = s1 / d;
  law.mean = m;
  law.second_moment = third * s3 / d + Scalar(4) * third * m * m + Scalar(2) * third * lp * s1 / (d * d);
  law.variance = third * s3 / d + third * m * m + Scalar(2) * third * lp * s1 / (d * d);
  return law;
}

// m(e) = omega p l for an edge or loop.
double edge_measure(const SegmentParams& e);

// Measure of the loop-augmented stars of all vertices within distance r of x0,
// where the vertex distance uses edge lengths omega^{1/2} l. Throws
// TruncationTooSmall if the ball reaches the truncation frontier.
double ball_measure_upper(const MetricGraph& mg, Vertex x0, double r);

// l = 1, p = pi, omega = a^2 on every edge, and a loop with l = 1, p = 1/2,
// omega = 1 at every vertex.
MetricGraph synchronize(const WeightedGraph& g, const EdgeLengths& a);

// (l, p, omega) -> (l phi, p phi, omega / phi^2) edgewise (loops use phi_loop).
// Exit laws and edge measures are invariant under this change.
MetricGraph regauge(const MetricGraph& mg, const std::vector<double>& phi_edges,
                    const std::vector<double>& phi_loops);

// Exit law at every vertex, in topology order.
std::vector<ExitLaw> exit_laws(const MetricGraph& mg);

}  // namespace sgl
