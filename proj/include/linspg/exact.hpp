#pragma once

#include "linspg/trajectory.hpp"

// Gradient ascent with the true mean rewards:
//   theta <- theta + eta X^T (diag(pi) - pi pi^T) r
// Deterministic; full trajectory recording.

namespace linspg {

struct ExactRunConfig {
  Vector theta_init;
  LearningRate rate = LearningRate::bound_fraction(0.9);
  std::int64_t horizon = 100000;
  std::int64_t record_stride = 100;
};

// Runs the configured number of updates. Aborts (with the last finite state
// preserved and abort_reason set) if theta stops being finite or its norm
// passes the divergence guard.
Trajectory run_exact(const ProblemInstance& instance, const ExactRunConfig& config);

struct CounterexampleRun {
  ProblemInstance instance;
  double zeta = 0.0;  // ratio threshold below which the best arm cannot recover
  Trajectory trajectory;
};

// Runs the fixed 3-arm misaligned instance (registry id "example-4") from the
// trapping initialization theta_1 = 2 (x3 - x1) = (2, 2) with an in-bound
// learning rate. The best arm's probability stays bounded away from one.
CounterexampleRun run_ordering_counterexample(std::int64_t horizon = 100000,
                                              std::int64_t record_stride = 100);

}  // namespace linspg
