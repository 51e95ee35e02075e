#include "sgl/intrinsic.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sgl/errors.hpp"

namespace sgl {

double energy_density(const WeightedGraph& g, const std::vector<double>& f, Vertex x) {
  double s = 0.0;
  for (const Incidence& inc : g.neighbors(x)) {
    const double d = f[inc.neighbor] - f[x];
    s += g.edge(inc.edge).weight * d * d;
  }
  return 0.5 * s;
}

namespace {

constexpr std::size_t kDenseLimit = 400;

double max_energy(const WeightedGraph& g, const std::vector<double>& f) {
  double m = 0.0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) m = std::max(m, energy_density(g, f, x));
  return m;
}

// Newton system for the barrier, either dense or sparse depending on size.
class NewtonSystem {
 public:
  NewtonSystem(std::size_t dim) : dim_(dim), dense_(dim <= kDenseLimit) {
    if (dense_) {
      h_dense_.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    }
  }
  void clear() {
    if (dense_) {
      h_dense_.setZero();
    } else {
      triplets_.clear();
    }
  }
  void add(std::size_t i, std::size_t j, double v) {
    if (dense_) {
      h_dense_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += v;
    } else {
      triplets_.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
    }
  }
  bool solve(const Eigen::VectorXd& rhs, Eigen::VectorXd& out) {
    if (dense_) {
      Eigen::LLT<Eigen::MatrixXd> llt(h_dense_);
      if (llt.info() != Eigen::Success) return false;
      out = llt.solve(rhs);
      return true;
    }
    Eigen::SparseMatrix<double> h(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    h.setFromTriplets(triplets_.begin(), triplets_.end());
    if (!pattern_ready_) {
      ldlt_.analyzePattern(h);
      pattern_ready_ = true;
    }
    ldlt_.factorize(h);
    if (ldlt_.info() != Eigen::Success) return false;
    out = ldlt_.solve(rhs);
    return ldlt_.info() == Eigen::Success;
  }

 private:
  std::size_t dim_;
  bool dense_;
  Eigen::MatrixXd h_dense_;
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  bool pattern_ready_ = false;
};

IntrinsicResult solve_barrier(const WeightedGraph& g, Vertex s, Vertex t,
                              const IntrinsicOptions& opt) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = n;
  // Free variables are all vertices but t, which is pinned at 0.
  std::vector<std::size_t> index(n);
  for (Vertex x = 0, k = 0; x < n; ++x) index[x] = x == t ? n : k++;
  const std::size_t dim = n - 1;

  std::vector<double> f(n, 0.0), trial(n), g_val(n), grad_full(n);
  auto constraint_values = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (Vertex x = 0; x < n; ++x) out[x] = energy_density(g, v, x);
  };
  auto barrier = [&](const std::vector<double>& v, double tau, bool& feasible) {
    double phi = -tau * v[s];
    feasible = true;
    for (Vertex x = 0; x < n; ++x) {
      const double slack = 1.0 - energy_density(g, v, x);
      if (!(slack > 0.0)) {
        feasible = false;
        return std::numeric_limits<double>::infinity();
      }
      phi -= std::log(slack);
    }
    return phi;
  };

  NewtonSystem system(dim);
  Eigen::VectorXd grad(static_cast<Eigen::Index>(dim)), step(static_cast<Eigen::Index>(dim));
  std::vector<double> local;  // Q_x f restricted to the star of x, center first

  const double mu = 12.0;
  double tau = 1.0;
  std::size_t iterations = 0;
  double previous_value = 0.0, last_improvement = std::numeric_limits<double>::infinity();

  for (;;) {
    // Centering by damped Newton.
    for (std::size_t inner = 0;; ++inner) {
      if (iterations >= opt.max_iterations) {
        throw SolverError("intrinsic metric solver hit the iteration cap", f[s]);
      }
      ++iterations;
      constraint_values(f, g_val);
      system.clear();
      grad.setZero();
      if (index[s] < n) grad[static_cast<Eigen::Index>(index[s])] -= tau;
      for (Vertex x = 0; x < n; ++x) {
        const double slack = 1.0 - g_val[x];
        const double w1 = 1.0 / slack, w2 = w1 * w1;
        const auto nb = g.neighbors(x);
        local.assign(nb.size() + 1, 0.0);
        for (std::size_t j = 0; j < nb.size(); ++j) {
          const double pi = g.edge(nb[j].edge).weight;
          const double d = pi * (f[nb[j].neighbor] - f[x]);
          local[j + 1] = d;
          local[0] -= d;
        }
        auto vid = [&](std::size_t j) { return j == 0 ? x : nb[j - 1].neighbor; };
        for (std::size_t a = 0; a <= nb.size(); ++a) {
          const std::size_t ia = index[vid(a)];
          if (ia >= n) continue;
          grad[static_cast<Eigen::Index>(ia)] += w1 * local[a];
          for (std::size_t b = 0; b <= nb.size(); ++b) {
            const std::size_t ib = index[vid(b)];
            if (ib >= n) continue;
            system.add(ia, ib, w2 * local[a] * local[b]);
          }
        }
        // Q_x / slack: star Laplacian of x.
        const std::size_t ix = index[x];
        for (std::size_t j = 0; j < nb.size(); ++j) {
          const double pi = g.edge(nb[j].edge).weight * w1;
          const std::size_t iy = index[nb[j].neighbor];
          if (iy < n) system.add(iy, iy, pi);
          if (ix < n) system.add(ix, ix, pi);
          if (ix < n && iy < n) {
            system.add(ix, iy, -pi);
            system.add(iy, ix, -pi);
          }
        }
      }
      if (!system.solve(-grad, step)) {
        throw SolverError("intrinsic metric Newton system is singular", f[s]);
      }
      const double decrement = -grad.dot(step);
      if (decrement <= 1e-14 * std::max(1.0, tau)) break;
      bool feasible = false;
      const double phi0 = barrier(f, tau, feasible);
      double alpha = 1.0;
      for (int ls = 0; ls < 80; ++ls, alpha *= 0.5) {
        for (Vertex x = 0; x < n; ++x) {
          trial[x] = index[x] < n ? f[x] + alpha * step[static_cast<Eigen::Index>(index[x])] : 0.0;
        }
        const double phi1 = barrier(trial, tau, feasible);
        if (feasible && phi1 <= phi0 - 0.25 * alpha * decrement) break;
      }
      if (!feasible) break;
      const double phi_new = barrier(trial, tau, feasible);
      if (!(phi_new < phi0)) break;
      f = trial;
      if (decrement < 1e-9 || inner > 200) break;
    }
    const double gap = static_cast<double>(m) / tau;
    last_improvement = std::fabs(f[s] - previous_value);
    previous_value = f[s];
    if (gap <= opt.tolerance) {
      IntrinsicResult r;
      r.value = f[s] - f[t];
      r.witness = f;
      r.max_constraint = max_energy(g, f);
      r.gap_bound = gap;
      r.last_improvement = last_improvement;
      r.iterations = iterations;
      return r;
    }
    tau *= mu;
  }
}

// Projection onto {u : (1/2) u^T Q u <= 1} for one star, via the eigenbasis of Q
// and a 1-D monotone root find on the multiplier.
struct StarProjector {
  std::vector<Vertex> vertices;  // center first
  Eigen::MatrixXd basis;
  Eigen::VectorXd eigenvalues;

  double energy(const Eigen::VectorXd& w) const {
    return 0.5 * (eigenvalues.array() * w.array().square()).sum();
  }

  Eigen::VectorXd project(const Eigen::VectorXd& v) const {
    const Eigen::VectorXd w = basis.transpose() * v;
    if (energy(w) <= 1.0) return v;
    auto h = [&](double lam) {
      return 0.5 * (eigenvalues.array() * w.array().square() /
                    (1.0 + lam * eigenvalues.array()).square())
                       .sum();
    };
    double lo = 0.0, hi = 1.0;
    while (h(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(mid) > 1.0 ? lo : hi) = mid;
    }
    const Eigen::VectorXd scaled = (w.array() / (1.0 + hi * eigenvalues.array())).matrix();
    return basis * scaled;
  }
};

IntrinsicResult solve_projected_ascent(const WeightedGraph& g, Vertex s, Vertex t,
                                       const IntrinsicOptions& opt) {
  const std::size_t n = g.vertex_count();
  std::vector<StarProjector> stars(n);
  for (Vertex x = 0; x < n; ++x) {
    StarProjector& p = stars[x];
    const auto nb = g.neighbors(x);
    p.vertices.push_back(x);
    for (const Incidence& inc : nb) p.vertices.push_back(inc.neighbor);
    const Eigen::Index k = static_cast<Eigen::Index>(p.vertices.size());
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index j = 1; j < k; ++j) {
      const double pi = g.edge(nb[static_cast<std::size_t>(j - 1)].edge).weight;
      q(0, 0) += pi;
      q(j, j) += pi;
      q(0, j) -= pi;
      q(j, 0) -= pi;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    p.basis = es.eigenvectors();
    p.eigenvalues = es.eigenvalues().cwiseMax(0.0);
  }

  const double eta = 1.0 / (1.0 + static_cast<double>(g.max_degree()));
  std::vector<double> f(n, 0.0), z(n);
  std::vector<Eigen::VectorXd> correction(n);
  for (Vertex x = 0; x < n; ++x) {
    correction[x] = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(stars[x].vertices.size()));
  }
  auto project_all = [&](std::vector<double>& v) {
    for (auto& c : correction) c.setZero();
    for (int sweep = 0; sweep < 100000; ++sweep) {
      double change = 0.0;
      for (Vertex x = 0; x < n; ++x) {
        const StarProjector& p = stars[x];
        const Eigen::Index k = static_cast<Eigen::Index>(p.vertices.size());
        Eigen::VectorXd local(k);
        for (Eigen::Index j = 0; j < k; ++j) local[j] = v[p.vertices[static_cast<std::size_t>(j)]];
        const Eigen::VectorXd shifted = local + correction[x];
        const Eigen::VectorXd proj = p.project(shifted);
        correction[x] = shifted - proj;
        for (Eigen::Index j = 0; j < k; ++j) {
          double& slot = v[p.vertices[static_cast<std::size_t>(j)]];
          change = std::max(change, std::fabs(slot - proj[j]));
          slot = proj[j];
        }
      }
      if (change < 1e-13) break;
    }
  };

  double value = 0.0, improvement = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  while (improvement >= opt.tolerance) {
    if (iterations >= opt.max_iterations) {
      throw SolverError("projected ascent hit the iteration cap", value);
    }
    ++iterations;
    z = f;
    z[s] += eta;
    z[t] -= eta;
    project_all(z);
    // Pin f(t) = 0; constant shifts do not change any constraint.
    const double shift = z[t];
    for (double& v : z) v -= shift;
    const double scale = std::sqrt(std::max(1.0, max_energy(g, z)));
    for (double& v : z) v /= scale;
    const double new_value = z[s] - z[t];
    improvement = std::fabs(new_value - value);
    value = new_value;
    f = z;
  }
  IntrinsicResult r;
  r.value = value;
  r.witness = f;
  r.max_constraint = max_energy(g, f);
  r.gap_bound = improvement;
  r.last_improvement = improvement;
  r.iterations = iterations;
  return r;
}

}  // namespace

IntrinsicResult intrinsic_metric(const WeightedGraph& g, Vertex s, Vertex t,
                                 const IntrinsicOptions& options) {
  const std::size_t n = g.vertex_count();
  if (s >= n || t >= n) throw InvalidInput("unknown vertex");
  if (s == t) throw InvalidInput("intrinsic_metric needs s != t");
  if (!(options.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  for (const Edge& e : g.edges()) {
    if (!(e.weight > 0.0) || e.u == e.v) throw InvalidInput("intrinsic_metric needs a valid graph");
  }
  if (options.method == IntrinsicMethod::barrier) return solve_barrier(g, s, t, options);
  return solve_projected_ascent(g, s, t, options);
}

}  // namespace sgl
