#include "linspg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linspg {

MonotonicityAudit audit_monotonicity(const Trajectory& trajectory) {
  MonotonicityAudit out;
  const auto& r = trajectory.step_rewards;
  for (std::size_t t = 0; t + 1 < r.size(); ++t) {
    const double drop = r[t] - r[t + 1];
    if (drop > Tolerances::strict_eps) {
      ++out.violations;
      out.worst_drop = std::max(out.worst_drop, drop);
    }
  }
  return out;
}

RateFit fit_rate(const Trajectory& trajectory, RateModel model, bool averaged) {
  const auto& rewards = trajectory.step_rewards;
  if (rewards.size() < 4) throw std::invalid_argument("fit_rate: trajectory too short");
  const std::int64_t total = static_cast<std::int64_t>(rewards.size()) - 1;
  RateFit fit;
  fit.model = model;
  fit.window_begin = std::max<std::int64_t>(1, total / 2);
  fit.window_end = total;

  // Suboptimality over the window, optionally as a running mean.
  std::vector<double> gap;
  gap.reserve(static_cast<std::size_t>(fit.window_end - fit.window_begin + 1));
  double acc = 0.0;
  for (std::int64_t t = fit.window_begin; t <= fit.window_end; ++t) {
    const double g =
        std::max(trajectory.optimal_reward - rewards[static_cast<std::size_t>(t)], 1e-15);
    if (averaged) {
      acc += g;
      gap.push_back(acc / static_cast<double>(t - fit.window_begin + 1));
    } else {
      gap.push_back(g);
    }
  }

  // log gap_t = log c + log model(t); intercept-only least squares.
  double mean = 0.0;
  std::vector<double> resid(gap.size());
  for (std::size_t i = 0; i < gap.size(); ++i) {
    const double t = static_cast<double>(fit.window_begin + static_cast<std::int64_t>(i));
    const double log_model = model == RateModel::kInverseT
                                 ? -std::log(t)
                                 : std::log(std::log(std::max(t, 2.0))) - std::log(t);
    resid[i] = std::log(gap[i]) - log_model;
    mean += resid[i];
  }
  mean /= static_cast<double>(gap.size());
  fit.fitted_c = std::exp(mean);
  double ss = 0.0;
  for (double v : resid) ss += (v - mean) * (v - mean);
  fit.residual = std::sqrt(ss / static_cast<double>(gap.size()));
  return fit;
}

double averaged_suboptimality_bound(int num_actions, double C, double T, double tau,
                                    double r_max) {
  if (!(C > 0.0)) throw std::invalid_argument("bound: C must be positive");
  if (!(T > tau)) throw std::invalid_argument("bound: need T > tau");
  constexpr double kPiSq = 9.869604401089358;
  const double arms = static_cast<double>(num_actions - 1);
  return 2.0 * r_max *
         (arms / C * std::log(C * T + std::exp(C)) + kPiSq * arms / (6.0 * C)) /
         (T - tau);
}

GradientDomination gradient_domination(const ProblemInstance& instance,
                                       const PolicyState& state) {
  GradientDomination out;
  out.lhs = covariance_apply(state.policy, instance.mean_rewards()).norm();
  out.rhs = state.policy(instance.best_action()) *
            (instance.optimal_reward() - expected_reward(instance, state));
  out.holds = out.lhs >= out.rhs - Tolerances::strict_eps;
  return out;
}

double theil_sen_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("theil_sen_slope: need matched series of length >= 2");
  std::vector<double> slopes;
  slopes.reserve(xs.size() * (xs.size() - 1) / 2);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[j] != xs[i]) slopes.push_back((ys[j] - ys[i]) / (xs[j] - xs[i]));
  if (slopes.empty()) throw std::invalid_argument("theil_sen_slope: degenerate abscissae");
  const std::size_t mid = slopes.size() / 2;
  std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid),
                   slopes.end());
  double hi = slopes[mid];
  if (slopes.size() % 2 == 0) {
    std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid) - 1,
                     slopes.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (slopes[mid - 1] + hi);
  }
  return hi;
}

}  // namespace linspg
