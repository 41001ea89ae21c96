#include "linspg/simplex.hpp"

#include <stdexcept>
#include <vector>

namespace linspg::lp {

namespace {
constexpr double kPivotEps = 1e-11;
}

Result maximize(const Eigen::Ref<const Matrix>& A, const Eigen::Ref<const Vector>& b,
                const Eigen::Ref<const Vector>& c, int max_pivots) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("lp: shape mismatch");
  if (m == 0 || n == 0) throw std::invalid_argument("lp: empty program");
  if (b.minCoeff() < 0.0) throw std::invalid_argument("lp: requires b >= 0");

  // Split x into x+ - x-; append slacks. Tableau rows 0..m-1 are constraints,
  // row m carries reduced costs of the minimization of -c^T x.
  const Eigen::Index cols = 2 * n + m;
  Matrix t = Matrix::Zero(m + 1, cols + 1);
  t.block(0, 0, m, n) = A;
  t.block(0, n, m, n) = -A;
  t.block(0, 2 * n, m, m) = Matrix::Identity(m, m);
  t.col(cols).head(m) = b;
  t.row(m).head(n) = -c.transpose();
  t.row(m).segment(n, n) = c.transpose();

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = 2 * n + i;

  for (int pivot = 0;; ++pivot) {
    // Bland: smallest column with a negative reduced cost enters.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal
    if (pivot >= max_pivots)
      throw std::runtime_error("lp: pivot cap reached, outcome indeterminate");

    // Ratio test; ties broken by the smallest basis index (Bland).
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = t(i, enter);
      if (a > kPivotEps) {
        const double ratio = t(i, cols) / a;
        if (leave < 0 || ratio < best - kPivotEps ||
            (ratio < best + kPivotEps &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("lp: unbounded program");

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Result out;
  out.x = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) out.x(j) += t(i, cols);
    else if (j < 2 * n) out.x(j - n) -= t(i, cols);
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace linspg::lp
