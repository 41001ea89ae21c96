#pragma once

#include <utility>

#include "linspg/trajectory.hpp"

// On-policy sampled optimizer: at each step an action is drawn from the
// current policy, one reward is observed, and the update uses the
// importance-weighted reward estimate
//   rhat(a) = 1{a = a_t} / pi(a_t) * R_t,
//   theta <- theta + eta X^T (diag(pi) - pi pi^T) rhat.
// Runs are reproducible: the same seed yields a bit-identical trajectory.

namespace linspg {

struct StochasticRunConfig {
  Vector theta_init;
  LearningRate rate = LearningRate::bound_fraction(1.0);  // the safe bound itself
  std::int64_t horizon = 1000000;
  std::uint64_t seed = 0;
  std::int64_t record_stride = 100;
  // Track per-pair progress/noise splits of the logit differences. Pairs
  // default to (best arm, a) for every other arm when tracking is on.
  bool track_pairs = false;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> tracked_pairs;
  // Keep one StepRecord per iteration (memory scales with the horizon).
  bool log_every_step = false;
};

struct StepRecord {
  std::int64_t iteration = 0;  // 1-based update index
  Eigen::Index sampled_action = 0;
  double realized_reward = 0.0;
  double expected_reward = 0.0;  // after the update
  double pi_best = 0.0;          // after the update
};

// Running split of a logit difference z(a1) - z(a2) into its conditional-mean
// part (progress) and the zero-mean remainder (noise). Each increment is
// computed independently; their sum reproduces the actual change.
struct PairLedger {
  Eigen::Index first = 0;
  Eigen::Index second = 0;
  double initial_diff = 0.0;
  double progress_sum = 0.0;
  double noise_sum = 0.0;

  struct Row {
    std::int64_t iteration;
    double progress_sum;
    double noise_sum;
    double logit_diff;
  };
  std::vector<Row> rows;  // at the recording stride
};

struct StochasticRunResult {
  Trajectory trajectory;
  std::vector<StepRecord> steps;  // every step when log_every_step, else strided
  std::vector<PairLedger> ledgers;
};

// rhat as a dense vector: realized_reward / pi(a) at the sampled action.
Vector importance_weighted_estimate(const Eigen::Ref<const Vector>& policy,
                                    Eigen::Index sampled_action, double realized_reward);

// One update step through the literal covariance form. Rejects non-finite
// results.
PolicyState stochastic_update(const ProblemInstance& instance, const PolicyState& state,
                              Eigen::Index sampled_action, double realized_reward,
                              double eta);

StochasticRunResult run_stochastic(const ProblemInstance& instance,
                                   const StochasticRunConfig& config);

// E_t[theta_{t+1}] by exact enumeration over the randomness of one step.
// Bernoulli rewards enumerate both outcomes; the other families enter through
// their conditional mean, which is exact because the update is linear in the
// reward. Requires a noise family.
Vector exact_step_expectation(const ProblemInstance& instance, const PolicyState& state,
                              double eta);

// E_t[<pi_{t+1}, r>] by full enumeration; Bernoulli rewards only (the policy
// update is nonlinear in the reward, so a mean substitution would be wrong).
double enumerate_expected_next_reward(const ProblemInstance& instance,
                                      const PolicyState& state, double eta);

// E_t ||X^T (diag(pi) - pi pi^T) rhat||^2 by full enumeration; Bernoulli only.
double enumerate_expected_sq_gradient_norm(const ProblemInstance& instance,
                                           const PolicyState& state);

void write_step_log_csv(const StochasticRunResult& run, const std::string& path);
void write_ledger_csv(const PairLedger& ledger, const std::string& path);

}  // namespace linspg
