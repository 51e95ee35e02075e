#include "sgl/linear_program.hpp"

#include <cmath>
#include <limits>

#include "sgl/errors.hpp"

namespace sgl::detail {

double maximize_nonnegative(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  constexpr double eps = 1e-12;
  for (double bi : b) {
    if (bi < 0.0) throw InvalidInput("simplex requires a nonnegative right-hand side");
  }
  // Tableau columns: n structural, m slack, then rhs.
  const std::size_t width = n + m + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return t[r * width + col]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) at(r, j) = a[r][j];
    at(r, n + r) = 1.0;
    at(r, width - 1) = b[r];
    basis[r] = n + r;
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];

  for (std::size_t iter = 0;; ++iter) {
    if (iter > 1'000'000) throw SolverError("simplex iteration cap reached", at(m, width - 1));
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (at(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double coef = at(r, enter);
      if (coef > eps) {
        const double ratio = at(r, width - 1) / coef;
        if (leave == m || ratio < best - eps ||
            (std::fabs(ratio - best) <= eps && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) return std::numeric_limits<double>::infinity();
    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(r, j) -= f * at(leave, j);
    }
    basis[leave] = enter;
  }
  return at(m, width - 1);
}

}  // namespace sgl::detail
