#include <cmath>

#include "doctest.h"
#include "linspg/instances.hpp"
#include "test_support.hpp"

using namespace linspg;

TEST_CASE("registry holds the six fixed instances") {
  CHECK(registry().size() == 6);
  CHECK_THROWS_AS(registry_entry("nonsense"), std::invalid_argument);

  const auto& e1 = registry_entry("example-1");
  CHECK(e1.instance.num_actions() == 4);
  CHECK(e1.instance.dim() == 2);
  CHECK(e1.instance.arm_feature(0)(1) == -2.0);

  const auto& e4 = registry_entry("example-4");
  CHECK(e4.instance.arm_feature(1)(0) == 0.6);
  CHECK(e4.instance.arm_feature(1)(1) == 0.6);

  const auto& p3 = registry_entry("prop-3");
  CHECK(p3.instance.arm_feature(0)(0) == 3.0);
  CHECK(p3.instance.arm_feature(1)(1) == 6.0);
  CHECK(p3.instance.mean_rewards()(0) == 3.0);
}

TEST_CASE("analysis reproduces every expected registry property") {
  for (const auto& entry : registry()) {
    const auto report = analyze(entry.instance);
    if (entry.expected.assumption1) CHECK(report.assumption1 == *entry.expected.assumption1);
    if (entry.expected.witness_feasible)
      CHECK(report.ordering_witness.feasible == *entry.expected.witness_feasible);
    if (entry.expected.eps_approx)
      CHECK(std::abs(report.eps_approx - *entry.expected.eps_approx) < 1e-9);
    if (entry.expected.k3_value) {
      REQUIRE(report.k3_condition_value.has_value());
      CHECK(*report.k3_condition_value ==
            doctest::Approx(*entry.expected.k3_value).epsilon(1e-12));
    }
    if (entry.expected.assumption4) CHECK(report.assumption4.holds == *entry.expected.assumption4);
    if (entry.expected.known_witness)
      CHECK(certifies_ordering(entry.instance, *entry.expected.known_witness));
  }
}

TEST_CASE("generator honors requested condition sets") {
  GeneratorSpec s3;
  s3.num_actions = 3;
  s3.dim = 2;
  s3.require = {Condition::kUniqueRewards, Condition::kOrderingWitness, Condition::kThreeArm};
  s3.seed = 21;
  const auto i3 = generate(s3);
  CHECK(three_arm_condition_value(i3) > 0.0);
  CHECK(find_ordering_witness(i3).feasible);

  GeneratorSpec s6;
  s6.num_actions = 6;
  s6.dim = 3;
  s6.require = {Condition::kUniqueRewards, Condition::kFeatureTriples};
  s6.seed = 22;
  const auto i6 = generate(s6);
  CHECK(check_unique_rewards(i6));
  CHECK(check_feature_triples(i6).holds);
  CHECK(i6.reward_gap() >= 0.05 - 1e-12);
}

TEST_CASE("generation is reproducible byte for byte") {
  GeneratorSpec spec;
  spec.num_actions = 5;
  spec.dim = 3;
  spec.require = {Condition::kUniqueRewards, Condition::kFeatureTriples};
  spec.seed = 99;
  spec.noise = NoiseFamily::beta(5.0);
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.to_json() == b.to_json());

  spec.seed = 100;
  const auto c = generate(spec);
  CHECK(a.to_json() != c.to_json());
}

TEST_CASE("forced identity features are accepted as-is") {
  GeneratorSpec spec;
  spec.num_actions = 2;
  spec.dim = 2;
  spec.require = {Condition::kUniqueRewards};
  spec.forced_features = Matrix::Identity(2, 2);
  spec.seed = 1;
  const auto inst = generate(spec);
  CHECK((inst.features() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("impossible requirements exhaust the rejection budget") {
  GeneratorSpec spec;
  spec.num_actions = 4;
  spec.dim = 2;
  spec.require = {Condition::kUniqueRewards, Condition::kFeatureTriples};
  // Identical rows can never satisfy the strict triple cases.
  spec.forced_features = Matrix::Ones(4, 2);
  spec.max_rejections = 25;
  spec.seed = 5;
  CHECK_THROWS_AS(generate(spec), std::runtime_error);
}
