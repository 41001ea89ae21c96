#pragma once

// All numeric tolerances used across the library, collected in one place.
// Absolute tolerances unless noted otherwise.

namespace linspg {

struct Tolerances {
  // Eigenvalue extraction: absolute accuracy of the returned extremes.
  static constexpr double eig_abs = 1e-10;
  // Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
  static constexpr double jacobi_offdiag = 1e-12;
  // Symmetry defect above which a matrix is rejected as non-symmetric.
  static constexpr double symmetry_defect = 1e-9;
  // Gram eigenvalues below this mean rank-deficient features.
  static constexpr double rank_eps = 1e-10;
  // Strictness threshold for reward gaps and inner-product sign tests.
  static constexpr double strict_eps = 1e-12;
  // Ordering-witness margin must clear this to certify feasibility.
  static constexpr double lp_margin = 1e-9;
  // Policy entries must sum to one within this.
  static constexpr double policy_sum = 1e-12;
  // Parameter norm beyond which an optimizer run aborts as divergent.
  static constexpr double divergence_guard = 1e12;
};

}  // namespace linspg
