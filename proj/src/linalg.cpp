#include "linspg/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace linspg {

Matrix gram(const Eigen::Ref<const Matrix>& X) {
  const Eigen::Index d = X.cols();
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const double v = X.col(i).dot(X.col(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

namespace {

double offdiag_frobenius(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenExtremes symmetric_extreme_eigenvalues(const Eigen::Ref<const Matrix>& G) {
  if (G.rows() != G.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  const double defect = (G - G.transpose()).cwiseAbs().maxCoeff();
  if (defect > Tolerances::symmetry_defect)
    throw std::invalid_argument("eigenvalues: matrix is not symmetric");

  Matrix a = 0.5 * (G + G.transpose());
  const Eigen::Index n = a.rows();
  if (n == 1) return {a(0, 0), a(0, 0)};

  // Cyclic Jacobi: deterministic row-major sweeps over the upper triangle.
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) < Tolerances::jacobi_offdiag) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  EigenExtremes out{a(0, 0), a(0, 0)};
  for (Eigen::Index i = 1; i < n; ++i) {
    out.lambda_min = std::min(out.lambda_min, a(i, i));
    out.lambda_max = std::max(out.lambda_max, a(i, i));
  }
  return out;
}

LeastSquaresResult least_squares_residual(const Eigen::Ref<const Matrix>& X,
                                          const Eigen::Ref<const Vector>& r) {
  if (X.rows() != r.size()) throw std::invalid_argument("least_squares: shape mismatch");
  const Matrix g = gram(X);
  const EigenExtremes ev = symmetric_extreme_eigenvalues(g);
  if (ev.lambda_min <= Tolerances::rank_eps)
    throw std::invalid_argument("least_squares: feature matrix is rank-deficient");
  LeastSquaresResult out;
  out.w_star = g.llt().solve(X.transpose() * r);
  out.residual_norm = (X * out.w_star - r).norm();
  return out;
}

}  // namespace linspg
