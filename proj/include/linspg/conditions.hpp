#pragma once

#include <array>
#include <optional>
#include <string>

#include "linspg/bandit.hpp"

// Certification of the feature/reward conditions that decide convergence of
// softmax policy gradient with linear features, plus every derived constant
// and learning-rate bound the theory needs.
//
// The four conditions, for rewards relabeled in descending order:
//   1. unique rewards: all pairwise reward gaps are non-zero.
//   2. ordering witness: some direction w makes X w sort arms exactly like r.
//   3. three-arm alignment (K = 3 only): <x2 - x3, x1 - x3> > 0.
//   4. triple alignment: for every (i, j, k) with r(i) > r(j), r(i) > r(k),
//      <x_i - x_j, x_best - x_k> must be > 0 when i is the best arm or j = k,
//      and >= 0 otherwise.

namespace linspg {

struct OrderingWitness {
  bool feasible = false;
  Vector w;             // meaningful when feasible
  double margin = 0.0;  // best achievable margin, also reported when infeasible
};

struct TripleCheck {
  bool holds = true;
  // First violating (i, j, k) in lexicographic order over reward-descending
  // indices, mapped back to original action indices (0-based).
  std::optional<std::array<Eigen::Index, 3>> violation;
  double violation_value = 0.0;
};

// Derived constants in one record.
struct TheoryConstants {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;            // lambda_max / lambda_min
  double delta = 0.0;            // min pairwise reward gap
  double r_max = 0.0;
  double smoothness_L = 0.0;     // 9 R lambda_max / 2
  double sgc_rho = 0.0;          // 8 R^3 K^{3/2} / delta^2
  double eta_exact_bound = 0.0;  // 4 / (9 R lambda_max), open interval
  double eta_stochastic_bound = 0.0;  // min of the two stochastic branches
};

struct ConditionReport {
  bool assumption1 = false;
  OrderingWitness ordering_witness;
  std::optional<double> k3_condition_value;  // K = 3 only
  TripleCheck assumption4;
  double eps_approx = 0.0;
  TheoryConstants constants;

  std::string to_json() const;
};

// Condition 1: every pairwise gap exceeds Tolerances::strict_eps.
bool check_unique_rewards(const ProblemInstance& instance);

// Condition 2 decided by margin maximization: maximize t subject to
// <x_{s(i)} - x_{s(i+1)}, w> >= t over consecutive reward-sorted pairs and
// |w|_inf <= 1. Feasible iff the optimum clears Tolerances::lp_margin.
// Requires condition 1; throws std::runtime_error if the solver stalls.
OrderingWitness find_ordering_witness(const ProblemInstance& instance);

// Condition 3 value for K = 3 (arms sorted by descending reward first).
double three_arm_condition_value(const ProblemInstance& instance);

// Condition 4 over all triples; requires condition 1.
TripleCheck check_feature_triples(const ProblemInstance& instance);

// All derived constants. Throws on rank-deficient features (kappa undefined).
TheoryConstants derive_constants(const ProblemInstance& instance);

// Full report; deterministic given the instance.
ConditionReport analyze(const ProblemInstance& instance);

// True iff X w reproduces the reward ordering with strictly positive gaps.
// Used to validate witnesses independently of the margin solver.
bool certifies_ordering(const ProblemInstance& instance, const Vector& w);

}  // namespace linspg
