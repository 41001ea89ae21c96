#pragma once

#include "linspg/trajectory.hpp"

// Post-hoc verification of run behaviour: monotonicity audits, tail-rate
// fits, closed-form bound evaluation, and the gradient-domination inequality.

namespace linspg {

struct MonotonicityAudit {
  std::int64_t violations = 0;
  double worst_drop = 0.0;  // largest single-step decrease observed
};

// Counts steps whose expected reward drops by more than strict_eps.
MonotonicityAudit audit_monotonicity(const Trajectory& trajectory);

enum class RateModel { kInverseT, kLogTOverT };

struct RateFit {
  RateModel model = RateModel::kInverseT;
  double fitted_c = 0.0;
  double residual = 0.0;  // RMS residual of the log-space fit
  std::int64_t window_begin = 0;
  std::int64_t window_end = 0;
};

// Least-squares fit of log suboptimality against log(c * model(t)) over the
// tail window (second half of the run). Suboptimalities are clipped at 1e-15
// before the log. With averaged = true the running mean of the suboptimality
// over the window is fitted instead of the pointwise values.
RateFit fit_rate(const Trajectory& trajectory, RateModel model, bool averaged = false);

// Closed-form ceiling on the average suboptimality between iterations tau and
// T when an arbitrary constant learning rate is used:
//   2 R [ (K-1)/C ln(C T + e^C) + pi^2 (K-1) / (6 C) ] / (T - tau).
double averaged_suboptimality_bound(int num_actions, double C, double T, double tau,
                                    double r_max);

struct GradientDomination {
  double lhs = 0.0;  // || (diag(pi) - pi pi^T) r ||
  double rhs = 0.0;  // pi(best) * (r(best) - <pi, r>)
  bool holds = false;
};

// The gradient-norm lower bound that drives the 1/T rate.
GradientDomination gradient_domination(const ProblemInstance& instance,
                                       const PolicyState& state);

// Median-of-pairwise-slopes estimator, robust to heavy-tailed noise.
double theil_sen_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace linspg
