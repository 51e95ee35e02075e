#pragma once

#include <vector>

namespace sgl::detail {

// max c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is feasible.
// Dense tableau simplex with Bland's rule. Returns +inf when unbounded.
double maximize_nonnegative(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b);

}  // namespace sgl::detail
