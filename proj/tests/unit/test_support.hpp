#pragma once

#include "linspg/instances.hpp"
#include "linspg/rng.hpp"

// Helpers shared by the unit suites.

namespace linspg::testing {

inline Vector random_theta(rng::Stream& stream, Eigen::Index d, double scale = 2.0) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = stream.next_uniform(-scale, scale);
  return v;
}

inline Vector random_simplex_point(rng::Stream& stream, Eigen::Index k) {
  Vector v(k);
  for (Eigen::Index i = 0; i < k; ++i) v(i) = -std::log(1.0 - stream.next_unit());
  return v / v.sum();
}

// Central finite differences of the expected reward; the independent oracle
// for the closed-form gradient.
inline Vector fd_gradient(const ProblemInstance& instance, const Vector& theta,
                          double h = 1e-6) {
  Vector g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Vector hi = theta, lo = theta;
    hi(i) += h;
    lo(i) -= h;
    g(i) = (expected_reward(instance, make_policy(instance, hi)) -
            expected_reward(instance, make_policy(instance, lo))) /
           (2.0 * h);
  }
  return g;
}

// A small random instance with no structural requirements beyond A1.
inline ProblemInstance random_instance(std::uint64_t seed, Eigen::Index k, Eigen::Index d,
                                       std::optional<NoiseFamily> noise = std::nullopt) {
  GeneratorSpec spec;
  spec.num_actions = k;
  spec.dim = d;
  spec.require = {Condition::kUniqueRewards};
  spec.seed = seed;
  spec.noise = noise;
  return generate(spec);
}

}  // namespace linspg::testing
