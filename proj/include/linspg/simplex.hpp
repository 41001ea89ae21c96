#pragma once

#include "linspg/linalg.hpp"

// Dense simplex for the tiny feasibility-margin programs this library needs:
//   maximize c^T x  subject to  A x <= b,  x free,  b >= 0.
// Free variables are split into positive and negative parts; the slack basis
// is feasible because b >= 0, so a single phase suffices. Bland's rule keeps
// degenerate pivots from cycling.

namespace linspg::lp {

struct Result {
  Vector x;
  double objective = 0.0;
};

// Throws std::runtime_error if the pivot cap is hit before optimality
// (indeterminate outcome), and std::invalid_argument on malformed input.
Result maximize(const Eigen::Ref<const Matrix>& A, const Eigen::Ref<const Vector>& b,
                const Eigen::Ref<const Vector>& c, int max_pivots = 10000);

}  // namespace linspg::lp
