#pragma once

#include <Eigen/Dense>
#include <utility>

#include "linspg/tolerances.hpp"

// Minimal dense linear algebra for small problems (K <= ~64, d <= ~16):
// Gram matrices, extreme symmetric eigenvalues, least-squares projection.
// Everything here is a pure function over immutable inputs.

namespace linspg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// G = X^T X, built entry by entry so mirrored entries are bitwise equal.
Matrix gram(const Eigen::Ref<const Matrix>& X);

struct EigenExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

// Extreme eigenvalues of a symmetric matrix via cyclic Jacobi rotations,
// swept in row-major order over the upper triangle until the off-diagonal
// Frobenius norm falls below Tolerances::jacobi_offdiag. Rejects input whose
// symmetry defect exceeds Tolerances::symmetry_defect.
EigenExtremes symmetric_extreme_eigenvalues(const Eigen::Ref<const Matrix>& G);

struct LeastSquaresResult {
  Vector w_star;
  double residual_norm = 0.0;
};

// argmin_w ||X w - r||_2 by normal equations with an LLT factorization.
// Requires full column rank (smallest Gram eigenvalue > Tolerances::rank_eps).
LeastSquaresResult least_squares_residual(const Eigen::Ref<const Matrix>& X,
                                          const Eigen::Ref<const Vector>& r);

}  // namespace linspg
