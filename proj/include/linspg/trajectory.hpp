#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linspg/bandit.hpp"
#include "linspg/conditions.hpp"

// Run records shared by the exact and sampled optimizers.

namespace linspg {

// Constant learning rate, given either directly or as a fraction of the
// derived safe bound for the setting at hand.
struct LearningRate {
  enum class Kind { kExplicit, kBoundFraction };
  Kind kind = Kind::kBoundFraction;
  double value = 0.9;

  static LearningRate explicit_rate(double eta) { return {Kind::kExplicit, eta}; }
  static LearningRate bound_fraction(double f) { return {Kind::kBoundFraction, f}; }

  // Exact setting: the safe interval is open, so a fraction must be < 1.
  double resolve_exact(const TheoryConstants& c) const;
  // Sampled setting: the bound itself is admissible (fraction <= 1).
  double resolve_stochastic(const TheoryConstants& c) const;
};

struct TrajectoryPoint {
  std::int64_t iteration = 0;
  Vector theta;
  Vector policy;
  double expected_reward = 0.0;
  double gradient_norm = 0.0;
};

struct Trajectory {
  // Snapshots at the recording stride plus the final iterate.
  std::vector<TrajectoryPoint> points;
  // Expected reward at every iterate 0..T (iterate 0 is the initialization).
  std::vector<double> step_rewards;
  PolicyState final_state;
  double optimal_reward = 0.0;
  Eigen::Index best_action = 0;
  double learning_rate = 0.0;
  bool aborted = false;
  std::string abort_reason;

  double final_expected_reward() const { return step_rewards.back(); }
  double final_suboptimality() const { return optimal_reward - step_rewards.back(); }
};

// Header: iter,expected_reward,grad_norm,pi_max,pi_argmax
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

// Recorded parameter vectors as a JSON array of {iter, theta} objects.
void write_theta_json(const Trajectory& trajectory, const std::string& path);

}  // namespace linspg
