#include <cmath>

#include "doctest.h"
#include "linspg/exact.hpp"
#include "linspg/instances.hpp"
#include "test_support.hpp"

using namespace linspg;

TEST_CASE("ascent on the first worked instance reaches the best arm") {
  ExactRunConfig cfg;
  cfg.theta_init = (Vector(2) << 3, 3).finished();
  cfg.rate = LearningRate::explicit_rate(0.2);
  cfg.horizon = 10000;
  cfg.record_stride = 500;
  const auto traj = run_exact(registry_entry("example-1").instance, cfg);
  CHECK_FALSE(traj.aborted);
  CHECK(traj.final_expected_reward() >= 8.9);
  Eigen::Index argmax = 0;
  traj.final_state.policy.maxCoeff(&argmax);
  CHECK(argmax == 0);
}

TEST_CASE("ascent on the swapped instance stalls at the second arm") {
  ExactRunConfig cfg;
  cfg.theta_init = (Vector(2) << 3, 3).finished();
  cfg.rate = LearningRate::explicit_rate(0.2);
  cfg.horizon = 10000;
  const auto traj = run_exact(registry_entry("example-2").instance, cfg);
  CHECK(traj.final_expected_reward() >= 7.9);
  CHECK(traj.final_expected_reward() <= 8.05);
}

TEST_CASE("a one-hot start stays frozen") {
  ProblemInstance inst(Matrix::Identity(3, 3), (Vector(3) << 1, 0.5, 0).finished(), 1.0);
  ExactRunConfig cfg;
  cfg.theta_init = (Vector(3) << 200, 0, 0).finished();
  cfg.rate = LearningRate::bound_fraction(0.9);
  cfg.horizon = 1000;
  const auto traj = run_exact(inst, cfg);
  CHECK((traj.final_state.theta - cfg.theta_init).cwiseAbs().maxCoeff() < 1e-9);
  const auto audit_rewards = traj.step_rewards;
  CHECK(audit_rewards.front() == doctest::Approx(audit_rewards.back()).epsilon(1e-12));
}

TEST_CASE("trajectory bookkeeping") {
  ExactRunConfig cfg;
  cfg.theta_init = Vector::Zero(2);
  cfg.rate = LearningRate::bound_fraction(0.5);
  cfg.horizon = 1003;
  cfg.record_stride = 100;
  const auto traj = run_exact(registry_entry("example-1").instance, cfg);
  CHECK(traj.step_rewards.size() == 1004);
  REQUIRE(!traj.points.empty());
  CHECK(traj.points.front().iteration == 0);
  CHECK(traj.points.back().iteration == 1003);
  for (std::size_t i = 1; i < traj.points.size(); ++i)
    CHECK(traj.points[i].iteration > traj.points[i - 1].iteration);
  for (double r : traj.step_rewards) CHECK(std::isfinite(r));
  CHECK(traj.learning_rate == doctest::Approx(0.5 * 4.0 / 405.0).epsilon(1e-12));
}

TEST_CASE("runaway steps hit the divergence guard") {
  ExactRunConfig cfg;
  cfg.theta_init = Vector::Zero(2);
  cfg.rate = LearningRate::explicit_rate(1e15);
  cfg.horizon = 50;
  const auto traj = run_exact(registry_entry("example-1").instance, cfg);
  CHECK(traj.aborted);
  CHECK(traj.final_state.theta.allFinite());
}

TEST_CASE("in-bound rates never decrease the expected reward") {
  rng::Stream seeds(606);
  for (int rep = 0; rep < 5; ++rep) {
    GeneratorSpec spec;
    spec.num_actions = 4 + rep % 3;
    spec.dim = 2 + rep % 2;
    spec.require = {Condition::kUniqueRewards, Condition::kOrderingWitness,
                    Condition::kFeatureTriples};
    spec.seed = seeds.next_u64();
    const auto inst = generate(spec);
    rng::Stream ts(seeds.next_u64());
    ExactRunConfig cfg;
    cfg.theta_init = testing::random_theta(ts, inst.dim());
    cfg.rate = LearningRate::bound_fraction(0.9);
    cfg.horizon = 5000;
    const auto traj = run_exact(inst, cfg);
    for (std::size_t t = 0; t + 1 < traj.step_rewards.size(); ++t)
      CHECK(traj.step_rewards[t + 1] > traj.step_rewards[t] - 1e-12);
  }
}

TEST_CASE("quadratic upper model bounds the objective change") {
  rng::Stream seeds(707);
  for (int rep = 0; rep < 20; ++rep) {
    const auto inst = testing::random_instance(seeds.next_u64(), 4, 2);
    const auto c = derive_constants(inst);
    rng::Stream ts(seeds.next_u64());
    const Vector a = testing::random_theta(ts, 2, 3.0);
    const Vector b = testing::random_theta(ts, 2, 3.0);
    const PolicyState sa = make_policy(inst, a);
    const PolicyState sb = make_policy(inst, b);
    const double gap = std::abs(expected_reward(inst, sb) - expected_reward(inst, sa) -
                                exact_gradient(inst, sa).dot(b - a));
    CHECK(gap <= 0.5 * c.smoothness_L * (b - a).squaredNorm() + 1e-9);
  }
}

TEST_CASE("deep horizons saturate the policy on the best arm") {
  // Finite-horizon stand-in for the one-hot limit: a million in-bound steps
  // leave almost all probability mass on one arm, and on conforming
  // instances that arm is the best one.
  for (std::uint64_t seed : {11, 12, 13}) {
    GeneratorSpec spec;
    spec.num_actions = 6;
    spec.dim = 3;
    spec.require = {Condition::kUniqueRewards, Condition::kOrderingWitness,
                    Condition::kFeatureTriples};
    spec.seed = seed;
    const auto inst = generate(spec);
    ExactRunConfig cfg;
    cfg.theta_init = Vector::Zero(3);
    cfg.rate = LearningRate::bound_fraction(0.9);
    cfg.horizon = 1000000;
    cfg.record_stride = 100000;
    const auto traj = run_exact(inst, cfg);
    CHECK(traj.final_state.policy.maxCoeff() > 0.99);
    Eigen::Index argmax = 0;
    traj.final_state.policy.maxCoeff(&argmax);
    CHECK(argmax == inst.best_action());
  }
}

TEST_CASE("the trapping initialization keeps the best arm down") {
  const auto run = run_ordering_counterexample(20000, 100);
  // C = 2 clears the threshold -log(zeta) / |x3 - x1|^2 ~ 1.61.
  CHECK(2.0 > -std::log(run.zeta) / 2.0);
  CHECK(-std::log(run.zeta) / 2.0 == doctest::Approx(1.61).epsilon(0.01));
  CHECK(run.trajectory.final_state.policy(0) < 0.5);
}

TEST_CASE("best-to-worst ratio never recovers once under the threshold") {
  // Short run with stride 1 so every iterate is visible.
  const auto run = run_ordering_counterexample(2000, 1);
  double prev = std::exp(run.trajectory.points.front().policy(0) > 0
                             ? std::log(run.trajectory.points.front().policy(0) /
                                        run.trajectory.points.front().policy(2))
                             : 0.0);
  bool below = prev < run.zeta;
  CHECK(below);  // the construction starts below the threshold
  for (std::size_t i = 1; i < run.trajectory.points.size(); ++i) {
    const auto& p = run.trajectory.points[i];
    const double ratio = p.policy(0) / p.policy(2);
    CHECK(ratio <= prev + 1e-12);
    prev = ratio;
  }
}
