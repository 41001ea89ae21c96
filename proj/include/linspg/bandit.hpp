#pragma once

#include <optional>
#include <string>

#include "linspg/linalg.hpp"
#include "linspg/rng.hpp"

// K-armed bandit instances with log-linear softmax policies. The softmax
// covariance operator H(pi) = diag(pi) - pi pi^T that every update and bound
// shares lives here too.

namespace linspg {

enum class NoiseKind { kBernoulli, kTruncatedGaussian, kBeta };

// Reward noise around the true means. All three families realize rewards in
// [0, 1] and keep E[R | a] equal to the mean reward of arm a. The Gaussian is
// rejection-sampled on the symmetric interval around the mean that fits in
// [0, 1], which preserves the mean exactly.
struct NoiseFamily {
  NoiseKind kind = NoiseKind::kBernoulli;
  double sigma = 0.1;          // truncated-gaussian only
  double concentration = 8.0;  // beta only

  static NoiseFamily bernoulli() { return {NoiseKind::kBernoulli, 0.0, 0.0}; }
  static NoiseFamily truncated_gaussian(double sigma) {
    return {NoiseKind::kTruncatedGaussian, sigma, 0.0};
  }
  static NoiseFamily beta(double concentration) {
    return {NoiseKind::kBeta, 0.0, concentration};
  }

  std::string name() const;
  static NoiseFamily parse(const std::string& name, double sigma, double concentration);
};

// Immutable bandit environment: features X (K x d), true mean rewards r and
// the reward range R_max with |r(a)| <= R_max. Shareable across workers.
class ProblemInstance {
 public:
  // Validates shapes and finiteness. With require_unique_rewards, pairwise
  // reward ties below Tolerances::strict_eps are rejected.
  ProblemInstance(Matrix features, Vector mean_rewards, double reward_bound,
                  std::optional<NoiseFamily> noise = std::nullopt,
                  bool require_unique_rewards = false);

  const Matrix& features() const { return features_; }
  const Vector& mean_rewards() const { return rewards_; }
  double reward_bound() const { return reward_bound_; }
  const std::optional<NoiseFamily>& noise() const { return noise_; }

  Eigen::Index num_actions() const { return features_.rows(); }
  Eigen::Index dim() const { return features_.cols(); }

  // Feature vector of one arm (a row of X).
  Vector arm_feature(Eigen::Index a) const { return features_.row(a).transpose(); }

  Eigen::Index best_action() const { return best_action_; }
  double optimal_reward() const { return rewards_(best_action_); }
  // Minimum pairwise reward gap.
  double reward_gap() const { return reward_gap_; }

  // Draws one reward for arm a from the noise family. Requires a noise family.
  double sample_reward(Eigen::Index a, rng::Stream& stream) const;

  std::string to_json() const;
  static ProblemInstance from_json(const std::string& text);

 private:
  Matrix features_;
  Vector rewards_;
  double reward_bound_;
  std::optional<NoiseFamily> noise_;
  Eigen::Index best_action_;
  double reward_gap_;
};

// One optimizer iterate: parameters, logits z = X theta and pi = softmax(z).
// Always built from theta via make_policy, never updated incrementally.
struct PolicyState {
  Vector theta;
  Vector logits;
  Vector policy;
};

// Softmax with max-logit subtraction. Rejects non-finite theta.
PolicyState make_policy(const ProblemInstance& instance, const Vector& theta);

// <pi, r>
double expected_reward(const ProblemInstance& instance, const PolicyState& state);

// (diag(pi) - pi pi^T) v
Vector covariance_apply(const Eigen::Ref<const Vector>& policy,
                        const Eigen::Ref<const Vector>& v);

// Gradient of <pi_theta, r> with respect to theta: X^T (diag(pi) - pi pi^T) r.
Vector exact_gradient(const ProblemInstance& instance, const PolicyState& state);

// The pairwise double sum
//   sum_{i<j} pi(i) pi(j) (x(i) - x(j)) (y(i) - y(j)),
// an independent route to <x, (diag(pi) - pi pi^T) y>.
double pairwise_covariance_form(const Eigen::Ref<const Vector>& policy,
                                const Eigen::Ref<const Vector>& x,
                                const Eigen::Ref<const Vector>& y);

}  // namespace linspg
