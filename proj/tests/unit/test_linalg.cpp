#include <cmath>

#include "doctest.h"
#include "linspg/linalg.hpp"
#include "linspg/rng.hpp"

using namespace linspg;

namespace {

Matrix example1_features() {
  Matrix x(4, 2);
  x << 0, -2, -1, 0, 0, 1, 2, 0;
  return x;
}

Matrix example2_features() {
  Matrix x(4, 2);
  x << 0, -2, 0, 1, -1, 0, 2, 0;
  return x;
}

}  // namespace

TEST_CASE("gram of the worked 4x2 feature sets is 5I") {
  const Matrix g1 = gram(example1_features());
  CHECK(g1(0, 0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(g1(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g1(1, 1) == doctest::Approx(5.0).epsilon(1e-15));
  const Matrix g2 = gram(example2_features());
  CHECK((g2 - 5.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gram of identity is identity") {
  const Matrix g = gram(Matrix::Identity(5, 5));
  CHECK((g - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gram is bitwise symmetric on random input") {
  rng::Stream s(11);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix x(7, 4);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = s.next_uniform(-3, 3);
    const Matrix g = gram(x);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) CHECK(g(i, j) == g(j, i));
  }
}

TEST_CASE("extreme eigenvalues of small symmetric matrices") {
  Matrix diag5 = 5.0 * Matrix::Identity(2, 2);
  auto ev = symmetric_extreme_eigenvalues(diag5);
  CHECK(ev.lambda_min == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(ev.lambda_max == doctest::Approx(5.0).epsilon(1e-12));

  Matrix m(2, 2);
  m << 2, 1, 1, 2;  // characteristic roots 1 and 3
  ev = symmetric_extreme_eigenvalues(m);
  CHECK(std::abs(ev.lambda_min - 1.0) < 1e-10);
  CHECK(std::abs(ev.lambda_max - 3.0) < 1e-10);

  ev = symmetric_extreme_eigenvalues(Matrix::Identity(3, 3));
  CHECK(ev.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-symmetric input is rejected") {
  Matrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(symmetric_extreme_eigenvalues(m), std::invalid_argument);
}

TEST_CASE("eigen extremes bracket Rayleigh quotients") {
  rng::Stream s(29);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix a(5, 5);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = s.next_uniform(-2, 2);
    const Matrix g = 0.5 * (a + a.transpose());
    const auto ev = symmetric_extreme_eigenvalues(g);
    for (int v = 0; v < 100; ++v) {
      Vector x(5);
      for (Eigen::Index i = 0; i < 5; ++i) x(i) = s.next_gaussian();
      const double q = x.dot(g * x) / x.squaredNorm();
      CHECK(q >= ev.lambda_min - 1e-9);
      CHECK(q <= ev.lambda_max + 1e-9);
    }
  }
}

TEST_CASE("least-squares residuals of the worked instances") {
  Vector r(4);
  r << 9, 8, 7, 6;
  const auto r1 = least_squares_residual(example1_features(), r);
  CHECK(std::abs(r1.residual_norm - std::sqrt(202.6)) < 1e-10);
  const auto r2 = least_squares_residual(example2_features(), r);
  CHECK(std::abs(r2.residual_norm - std::sqrt(205.0)) < 1e-10);
}

TEST_CASE("identity features fit any reward vector exactly") {
  rng::Stream s(3);
  Vector r(6);
  for (Eigen::Index i = 0; i < 6; ++i) r(i) = s.next_uniform(-5, 5);
  const auto fit = least_squares_residual(Matrix::Identity(6, 6), r);
  CHECK(fit.residual_norm < 1e-10);
  CHECK((fit.w_star - r).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rank-deficient features are rejected") {
  Matrix x(3, 2);
  x << 1, 2, 2, 4, 3, 6;
  Vector r(3);
  r << 1, 0, 0;
  CHECK_THROWS_AS(least_squares_residual(x, r), std::invalid_argument);
}

TEST_CASE("orthonormal columns reduce to projection") {
  // Columns e1, e3 of R^4 are orthonormal; residual must equal the energy
  // outside the span.
  Matrix x = Matrix::Zero(4, 2);
  x(0, 0) = 1.0;
  x(2, 1) = 1.0;
  rng::Stream s(17);
  for (int rep = 0; rep < 10; ++rep) {
    Vector r(4);
    for (Eigen::Index i = 0; i < 4; ++i) r(i) = s.next_uniform(-2, 2);
    const Vector proj = x * (x.transpose() * r);
    const auto fit = least_squares_residual(x, r);
    CHECK(std::abs(fit.residual_norm - (r - proj).norm()) < 1e-10);
  }
}
