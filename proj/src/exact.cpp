#include "linspg/exact.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "linspg/instances.hpp"

namespace linspg {

double LearningRate::resolve_exact(const TheoryConstants& c) const {
  if (kind == Kind::kExplicit) {
    if (!(value > 0.0)) throw std::invalid_argument("learning rate must be positive");
    return value;
  }
  if (!(value > 0.0 && value < 1.0))
    throw std::invalid_argument("bound fraction must lie in (0, 1) for the exact setting");
  return value * c.eta_exact_bound;
}

double LearningRate::resolve_stochastic(const TheoryConstants& c) const {
  if (kind == Kind::kExplicit) {
    if (!(value > 0.0)) throw std::invalid_argument("learning rate must be positive");
    return value;
  }
  if (!(value > 0.0 && value <= 1.0))
    throw std::invalid_argument("bound fraction must lie in (0, 1] for the sampled setting");
  return value * c.eta_stochastic_bound;
}

namespace {

void record_point(Trajectory& out, std::int64_t iter, const PolicyState& state,
                  double reward, double grad_norm) {
  TrajectoryPoint p;
  p.iteration = iter;
  p.theta = state.theta;
  p.policy = state.policy;
  p.expected_reward = reward;
  p.gradient_norm = grad_norm;
  out.points.push_back(std::move(p));
}

}  // namespace

Trajectory run_exact(const ProblemInstance& instance, const ExactRunConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("run_exact: horizon must be >= 1");
  if (config.record_stride < 1) throw std::invalid_argument("run_exact: stride must be >= 1");
  const double eta = config.rate.resolve_exact(derive_constants(instance));

  Trajectory out;
  out.optimal_reward = instance.optimal_reward();
  out.best_action = instance.best_action();
  out.learning_rate = eta;
  out.step_rewards.reserve(static_cast<std::size_t>(config.horizon) + 1);

  PolicyState state = make_policy(instance, config.theta_init);
  Vector grad = exact_gradient(instance, state);
  double reward = expected_reward(instance, state);
  out.step_rewards.push_back(reward);
  record_point(out, 0, state, reward, grad.norm());

  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const Vector theta_next = state.theta + eta * grad;
    if (!theta_next.allFinite() || theta_next.norm() > Tolerances::divergence_guard) {
      out.aborted = true;
      out.abort_reason = "parameters diverged at iteration " + std::to_string(t);
      break;
    }
    state = make_policy(instance, theta_next);
    grad = exact_gradient(instance, state);
    reward = expected_reward(instance, state);
    out.step_rewards.push_back(reward);
    if (t % config.record_stride == 0 || t == config.horizon)
      record_point(out, t, state, reward, grad.norm());
  }
  if (out.aborted && out.points.back().iteration != static_cast<std::int64_t>(out.step_rewards.size()) - 1)
    record_point(out, static_cast<std::int64_t>(out.step_rewards.size()) - 1, state, reward,
                 grad.norm());
  out.final_state = std::move(state);
  return out;
}

CounterexampleRun run_ordering_counterexample(std::int64_t horizon,
                                              std::int64_t record_stride) {
  const ProblemInstance& instance = registry_entry("example-4").instance;

  // theta_1 = C (x3 - x1) with C = 2, large enough that the initial ratio
  // pi(1)/pi(3) starts below the no-recovery threshold zeta.
  const Vector x1 = instance.arm_feature(0);
  const Vector x2 = instance.arm_feature(1);
  const Vector x3 = instance.arm_feature(2);
  const Vector theta1 = 2.0 * (x3 - x1);

  const PolicyState start = make_policy(instance, theta1);
  const double v0 = expected_reward(instance, start);
  const Vector& r = instance.mean_rewards();
  const double zeta = ((x3 - x2).dot(x1 - x3) / (x1 - x2).dot(x1 - x3)) *
                      ((v0 - r(2)) / (r(0) - v0));

  ExactRunConfig config;
  config.theta_init = theta1;
  config.rate = LearningRate::bound_fraction(0.9);
  config.horizon = horizon;
  config.record_stride = record_stride;

  return CounterexampleRun{instance, zeta, run_exact(instance, config)};
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "iter,expected_reward,grad_norm,pi_max,pi_argmax\n";
  f.precision(17);
  for (const auto& p : trajectory.points) {
    Eigen::Index argmax = 0;
    const double pi_max = p.policy.maxCoeff(&argmax);
    f << p.iteration << ',' << p.expected_reward << ',' << p.gradient_norm << ',' << pi_max
      << ',' << argmax << '\n';
  }
}

void write_theta_json(const Trajectory& trajectory, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : trajectory.points) {
    nlohmann::json o;
    o["iter"] = p.iteration;
    o["theta"] = std::vector<double>(p.theta.data(), p.theta.data() + p.theta.size());
    arr.push_back(std::move(o));
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << arr.dump(2) << '\n';
}

}  // namespace linspg
