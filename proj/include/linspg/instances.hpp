#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linspg/conditions.hpp"

// Registry of the worked problem instances plus a seeded generator that
// produces random instances satisfying a requested set of conditions.

namespace linspg {

// Fragment of a ConditionReport that an instance is known to reproduce.
struct ExpectedProperties {
  std::optional<bool> assumption1;
  std::optional<bool> witness_feasible;
  std::optional<double> eps_approx;
  std::optional<double> k3_value;
  std::optional<bool> assumption4;
  // A certifying direction known in advance, verified independently of the
  // margin solver.
  std::optional<Vector> known_witness;
};

struct RegistryEntry {
  std::string id;
  ProblemInstance instance;
  ExpectedProperties expected;
  std::string provenance;
};

// The fixed worked instances, keyed by id:
//   example-1, example-2, example-3, example-4, prop-3, tabular-4.
const std::vector<RegistryEntry>& registry();
const RegistryEntry& registry_entry(const std::string& id);

enum class Condition { kUniqueRewards, kOrderingWitness, kThreeArm, kFeatureTriples };

Condition parse_condition(const std::string& name);  // "A1".."A4"

struct GeneratorSpec {
  Eigen::Index num_actions = 6;
  Eigen::Index dim = 3;
  std::set<Condition> require{Condition::kUniqueRewards};
  double reward_lo = 0.0;
  double reward_hi = 1.0;
  // Consecutive reward gaps are drawn at or above this floor (never below
  // 0.05, which keeps the noise constants from exploding near ties).
  double reward_gap_floor = 0.05;
  double feature_scale = 1.0;  // score magnitudes drawn within +- this
  // Per-direction score magnitude decay; 1 keeps all directions comparable.
  double score_shrink = 0.5;
  int max_rejections = 1000;
  std::uint64_t seed = 0;
  std::optional<NoiseFamily> noise;
  // When set, feature construction is skipped and this matrix is used as-is.
  std::optional<Matrix> forced_features;
};

// Draws instances until the required conditions certify, up to
// max_rejections; deterministic given the spec and seed. Rewards are drawn
// descending with pairwise gaps of at least 0.05. When ordering/alignment
// conditions are requested, features are built from per-direction descending
// scores with shrinking magnitude, which lands in the feasible family with
// high probability; every candidate is still re-certified before acceptance.
ProblemInstance generate(const GeneratorSpec& spec);

// Fixed 6-arm, 3-feature benchmark satisfying all four conditions with a
// near-isotropic Gram (condition number ~1.0005), so the derived safe step
// size is as large as the theory allows on a 6-arm instance. Rewards are
// 1.0 down to 0.0 in steps of 0.2. Found by constraint-respecting search;
// feature_scale rescales X without changing any condition verdict.
ProblemInstance conditioned_benchmark(double feature_scale = 1.0,
                                      std::optional<NoiseFamily> noise = NoiseFamily::bernoulli());

}  // namespace linspg
