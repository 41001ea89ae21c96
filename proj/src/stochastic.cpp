#include "linspg/stochastic.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace linspg {

Vector importance_weighted_estimate(const Eigen::Ref<const Vector>& policy,
                                    Eigen::Index sampled_action, double realized_reward) {
  if (sampled_action < 0 || sampled_action >= policy.size())
    throw std::invalid_argument("estimate: action index out of range");
  const double p = policy(sampled_action);
  if (!(p > 0.0)) throw std::invalid_argument("estimate: sampled action has zero probability");
  Vector rhat = Vector::Zero(policy.size());
  rhat(sampled_action) = realized_reward / p;
  return rhat;
}

PolicyState stochastic_update(const ProblemInstance& instance, const PolicyState& state,
                              Eigen::Index sampled_action, double realized_reward,
                              double eta) {
  const Vector rhat = importance_weighted_estimate(state.policy, sampled_action, realized_reward);
  const Vector theta_next =
      state.theta + eta * (instance.features().transpose() * covariance_apply(state.policy, rhat));
  if (!theta_next.allFinite())
    throw std::runtime_error("stochastic_update: non-finite parameter update");
  return make_policy(instance, theta_next);
}

namespace {

Eigen::Index sample_action(const Vector& policy, double u) {
  // Inverse CDF; the final arm absorbs any rounding slack.
  double acc = 0.0;
  for (Eigen::Index a = 0; a + 1 < policy.size(); ++a) {
    acc += policy(a);
    if (u < acc) return a;
  }
  return policy.size() - 1;
}

}  // namespace

StochasticRunResult run_stochastic(const ProblemInstance& instance,
                                   const StochasticRunConfig& config) {
  if (!instance.noise())
    throw std::invalid_argument("run_stochastic: instance has no noise family");
  if (config.horizon < 1) throw std::invalid_argument("run_stochastic: horizon must be >= 1");
  if (config.record_stride < 1)
    throw std::invalid_argument("run_stochastic: stride must be >= 1");
  const double eta = config.rate.resolve_stochastic(derive_constants(instance));
  const Eigen::Index best = instance.best_action();
  const Vector& r = instance.mean_rewards();
  const Matrix& x = instance.features();

  StochasticRunResult out;
  Trajectory& traj = out.trajectory;
  traj.optimal_reward = instance.optimal_reward();
  traj.best_action = best;
  traj.learning_rate = eta;
  traj.step_rewards.reserve(static_cast<std::size_t>(config.horizon) + 1);

  if (config.track_pairs) {
    auto pairs = config.tracked_pairs;
    if (pairs.empty()) {
      for (Eigen::Index a = 0; a < instance.num_actions(); ++a)
        if (a != best) pairs.emplace_back(best, a);
    }
    for (const auto& [a1, a2] : pairs) {
      PairLedger ledger;
      ledger.first = a1;
      ledger.second = a2;
      out.ledgers.push_back(ledger);
    }
  }

  PolicyState state = make_policy(instance, config.theta_init);
  double reward = expected_reward(instance, state);
  traj.step_rewards.push_back(reward);
  {
    TrajectoryPoint p;
    p.iteration = 0;
    p.theta = state.theta;
    p.policy = state.policy;
    p.expected_reward = reward;
    p.gradient_norm = exact_gradient(instance, state).norm();
    traj.points.push_back(std::move(p));
  }
  for (auto& ledger : out.ledgers) {
    ledger.initial_diff = state.logits(ledger.first) - state.logits(ledger.second);
    ledger.rows.push_back({0, 0.0, 0.0, ledger.initial_diff});
  }

  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    rng::Stream stream =
        rng::step_stream(config.seed, static_cast<std::uint64_t>(t));
    const Eigen::Index action = sample_action(state.policy, stream.next_unit());
    const double realized = instance.sample_reward(action, stream);

    // Literal update; the ledger needs the exact-gradient direction too.
    const Vector rhat = importance_weighted_estimate(state.policy, action, realized);
    const Vector noisy_dir = x.transpose() * covariance_apply(state.policy, rhat);
    const Vector theta_next = state.theta + eta * noisy_dir;
    if (!theta_next.allFinite() || theta_next.norm() > Tolerances::divergence_guard) {
      traj.aborted = true;
      traj.abort_reason = "parameters diverged at iteration " + std::to_string(t);
      break;
    }

    if (!out.ledgers.empty()) {
      const Vector exact_dir = x.transpose() * covariance_apply(state.policy, r);
      for (auto& ledger : out.ledgers) {
        const Vector dx = (x.row(ledger.first) - x.row(ledger.second)).transpose();
        ledger.progress_sum += eta * dx.dot(exact_dir);
        ledger.noise_sum += eta * dx.dot(noisy_dir - exact_dir);
      }
    }

    state = make_policy(instance, theta_next);
    reward = expected_reward(instance, state);
    traj.step_rewards.push_back(reward);

    const bool at_stride = (t % config.record_stride == 0) || t == config.horizon;
    if (config.log_every_step || at_stride) {
      StepRecord rec;
      rec.iteration = t;
      rec.sampled_action = action;
      rec.realized_reward = realized;
      rec.expected_reward = reward;
      rec.pi_best = state.policy(best);
      out.steps.push_back(rec);
    }
    if (at_stride) {
      TrajectoryPoint p;
      p.iteration = t;
      p.theta = state.theta;
      p.policy = state.policy;
      p.expected_reward = reward;
      p.gradient_norm = exact_gradient(instance, state).norm();
      traj.points.push_back(std::move(p));
      for (auto& ledger : out.ledgers)
        ledger.rows.push_back({t, ledger.progress_sum, ledger.noise_sum,
                               state.logits(ledger.first) - state.logits(ledger.second)});
    }
  }
  traj.final_state = std::move(state);
  return out;
}

Vector exact_step_expectation(const ProblemInstance& instance, const PolicyState& state,
                              double eta) {
  if (!instance.noise())
    throw std::invalid_argument("exact_step_expectation: instance has no noise family");
  const Vector& r = instance.mean_rewards();
  Vector expect = Vector::Zero(state.theta.size());
  switch (instance.noise()->kind) {
    case NoiseKind::kBernoulli:
      for (Eigen::Index a = 0; a < instance.num_actions(); ++a) {
        const double p = state.policy(a);
        const Vector up1 = stochastic_update(instance, state, a, 1.0, eta).theta;
        const Vector up0 = stochastic_update(instance, state, a, 0.0, eta).theta;
        expect += p * (r(a) * up1 + (1.0 - r(a)) * up0);
      }
      return expect;
    case NoiseKind::kTruncatedGaussian:
    case NoiseKind::kBeta:
      // The update is linear in the realized reward, so the conditional mean
      // E[R | a] = r(a) substitutes exactly.
      for (Eigen::Index a = 0; a < instance.num_actions(); ++a)
        expect += state.policy(a) * stochastic_update(instance, state, a, r(a), eta).theta;
      return expect;
  }
  throw std::logic_error("exact_step_expectation: unsupported noise family");
}

double enumerate_expected_next_reward(const ProblemInstance& instance,
                                      const PolicyState& state, double eta) {
  if (!instance.noise() || instance.noise()->kind != NoiseKind::kBernoulli)
    throw std::invalid_argument("enumerate_expected_next_reward: needs Bernoulli rewards");
  const Vector& r = instance.mean_rewards();
  double expect = 0.0;
  const double here = expected_reward(instance, state);
  for (Eigen::Index a = 0; a < instance.num_actions(); ++a) {
    const double p = state.policy(a);
    const PolicyState up1 = stochastic_update(instance, state, a, 1.0, eta);
    // A zero reward leaves theta unchanged.
    expect += p * (r(a) * expected_reward(instance, up1) + (1.0 - r(a)) * here);
  }
  return expect;
}

double enumerate_expected_sq_gradient_norm(const ProblemInstance& instance,
                                           const PolicyState& state) {
  if (!instance.noise() || instance.noise()->kind != NoiseKind::kBernoulli)
    throw std::invalid_argument("enumerate_expected_sq_gradient_norm: needs Bernoulli rewards");
  const Vector& r = instance.mean_rewards();
  double expect = 0.0;
  for (Eigen::Index a = 0; a < instance.num_actions(); ++a) {
    const Vector rhat = importance_weighted_estimate(state.policy, a, 1.0);
    const Vector dir = instance.features().transpose() * covariance_apply(state.policy, rhat);
    // R = 0 contributes nothing; E[R^2 | a] = r(a) for Bernoulli rewards.
    expect += state.policy(a) * r(a) * dir.squaredNorm();
  }
  return expect;
}

void write_step_log_csv(const StochasticRunResult& run, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "iter,action,reward,expected_reward,pi_astar\n";
  f.precision(17);
  for (const auto& s : run.steps)
    f << s.iteration << ',' << s.sampled_action << ',' << s.realized_reward << ','
      << s.expected_reward << ',' << s.pi_best << '\n';
}

void write_ledger_csv(const PairLedger& ledger, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "iter,progress_cum,noise_cum,logit_diff\n";
  f.precision(17);
  for (const auto& row : ledger.rows)
    f << row.iteration << ',' << row.progress_sum << ',' << row.noise_sum << ','
      << row.logit_diff << '\n';
}

}  // namespace linspg
