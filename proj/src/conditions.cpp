#include "linspg/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "linspg/simplex.hpp"

namespace linspg {

namespace {

// Action indices sorted by descending mean reward.
std::vector<Eigen::Index> descending_order(const ProblemInstance& instance) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(instance.num_actions()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Vector& r = instance.mean_rewards();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return r(a) > r(b); });
  return order;
}

}  // namespace

bool check_unique_rewards(const ProblemInstance& instance) {
  return instance.reward_gap() > Tolerances::strict_eps;
}

bool certifies_ordering(const ProblemInstance& instance, const Vector& w) {
  const auto order = descending_order(instance);
  const Vector scores = instance.features() * w;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (!(scores(order[i]) - scores(order[i + 1]) > 0.0)) return false;
  }
  return true;
}

OrderingWitness find_ordering_witness(const ProblemInstance& instance) {
  if (!check_unique_rewards(instance))
    throw std::invalid_argument("ordering witness: rewards must be pairwise distinct");
  const Eigen::Index k = instance.num_actions();
  const Eigen::Index d = instance.dim();
  const auto order = descending_order(instance);

  // Variables (w, t); constraints  -<dx_i, w> + t <= 0  and  |w|_inf <= 1.
  const Eigen::Index m = (k - 1) + 2 * d;
  Matrix A = Matrix::Zero(m, d + 1);
  Vector b = Vector::Zero(m);
  for (Eigen::Index i = 0; i < k - 1; ++i) {
    const Vector dx = instance.arm_feature(order[static_cast<std::size_t>(i)]) -
                      instance.arm_feature(order[static_cast<std::size_t>(i + 1)]);
    A.block(i, 0, 1, d) = -dx.transpose();
    A(i, d) = 1.0;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    A(k - 1 + 2 * j, j) = 1.0;
    b(k - 1 + 2 * j) = 1.0;
    A(k - 1 + 2 * j + 1, j) = -1.0;
    b(k - 1 + 2 * j + 1) = 1.0;
  }
  Vector c = Vector::Zero(d + 1);
  c(d) = 1.0;

  lp::Result sol;
  try {
    sol = lp::maximize(A, b, c);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("ordering witness: margin solver did not converge; outcome indeterminate");
  }

  OrderingWitness out;
  out.margin = sol.objective;
  out.feasible = sol.objective > Tolerances::lp_margin;
  if (out.feasible) {
    out.w = sol.x.head(d);
    // The solver's vertex must itself certify the ordering.
    if (!certifies_ordering(instance, out.w))
      throw std::runtime_error("ordering witness: solver returned a non-certifying direction");
  }
  return out;
}

double three_arm_condition_value(const ProblemInstance& instance) {
  if (instance.num_actions() != 3)
    throw std::invalid_argument("three-arm condition: defined only for K = 3");
  const auto order = descending_order(instance);
  const Vector x1 = instance.arm_feature(order[0]);
  const Vector x2 = instance.arm_feature(order[1]);
  const Vector x3 = instance.arm_feature(order[2]);
  return (x2 - x3).dot(x1 - x3);
}

TripleCheck check_feature_triples(const ProblemInstance& instance) {
  if (!check_unique_rewards(instance))
    throw std::invalid_argument("feature triples: rewards must be pairwise distinct");
  const Eigen::Index k = instance.num_actions();
  const auto order = descending_order(instance);
  const Vector x_best = instance.arm_feature(order[0]);

  TripleCheck out;
  // Sorted index i beats sorted indices j, k whenever i < j and i < k.
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      for (Eigen::Index kk = i + 1; kk < k; ++kk) {
        const Vector lhs = instance.arm_feature(order[static_cast<std::size_t>(i)]) -
                           instance.arm_feature(order[static_cast<std::size_t>(j)]);
        const Vector rhs = x_best - instance.arm_feature(order[static_cast<std::size_t>(kk)]);
        const double v = lhs.dot(rhs);
        const bool strict = (i == 0) || (j == kk);
        const bool ok = strict ? v > Tolerances::strict_eps : v >= -Tolerances::strict_eps;
        if (!ok) {
          out.holds = false;
          out.violation = {order[static_cast<std::size_t>(i)],
                           order[static_cast<std::size_t>(j)],
                           order[static_cast<std::size_t>(kk)]};
          out.violation_value = v;
          return out;
        }
      }
    }
  }
  return out;
}

TheoryConstants derive_constants(const ProblemInstance& instance) {
  TheoryConstants c;
  const EigenExtremes ev = symmetric_extreme_eigenvalues(gram(instance.features()));
  c.lambda_min = ev.lambda_min;
  c.lambda_max = ev.lambda_max;
  c.r_max = instance.reward_bound();
  c.delta = instance.reward_gap();
  c.smoothness_L = 4.5 * c.r_max * c.lambda_max;
  const double k32 = std::pow(static_cast<double>(instance.num_actions()), 1.5);
  c.sgc_rho = 8.0 * std::pow(c.r_max, 3) * k32 / (c.delta * c.delta);
  c.eta_exact_bound = 4.0 / (9.0 * c.r_max * c.lambda_max);
  if (c.lambda_min <= Tolerances::strict_eps)
    throw std::invalid_argument("constants: rank-deficient features, condition number undefined");
  c.kappa = c.lambda_max / c.lambda_min;
  c.eta_stochastic_bound =
      std::min(1.0 / (6.0 * std::pow(c.lambda_max, 1.5) * std::sqrt(2.0 * c.r_max)),
               c.lambda_min / (6.0 * c.sgc_rho * c.lambda_max * c.lambda_max));
  return c;
}

ConditionReport analyze(const ProblemInstance& instance) {
  ConditionReport rep;
  rep.assumption1 = check_unique_rewards(instance);
  rep.constants = derive_constants(instance);
  rep.eps_approx = least_squares_residual(instance.features(), instance.mean_rewards()).residual_norm;
  if (rep.assumption1) {
    rep.ordering_witness = find_ordering_witness(instance);
    rep.assumption4 = check_feature_triples(instance);
  } else {
    rep.assumption4.holds = false;
  }
  if (instance.num_actions() == 3) rep.k3_condition_value = three_arm_condition_value(instance);
  return rep;
}

std::string ConditionReport::to_json() const {
  nlohmann::json j;
  j["assumption1"] = assumption1;
  j["assumption2"]["feasible"] = ordering_witness.feasible;
  j["assumption2"]["margin"] = ordering_witness.margin;
  if (ordering_witness.feasible)
    j["assumption2"]["witness"] =
        std::vector<double>(ordering_witness.w.data(),
                            ordering_witness.w.data() + ordering_witness.w.size());
  if (k3_condition_value) j["assumption3_value"] = *k3_condition_value;
  j["assumption4"]["holds"] = assumption4.holds;
  if (assumption4.violation) {
    j["assumption4"]["violation"] = {static_cast<long long>((*assumption4.violation)[0]),
                                     static_cast<long long>((*assumption4.violation)[1]),
                                     static_cast<long long>((*assumption4.violation)[2])};
    j["assumption4"]["violation_value"] = assumption4.violation_value;
  }
  j["eps_approx"] = eps_approx;
  j["lambda_min"] = constants.lambda_min;
  j["lambda_max"] = constants.lambda_max;
  j["kappa"] = constants.kappa;
  j["delta"] = constants.delta;
  j["r_max"] = constants.r_max;
  j["smoothness_L"] = constants.smoothness_L;
  j["sgc_rho"] = constants.sgc_rho;
  j["eta_exact_bound"] = constants.eta_exact_bound;
  j["eta_stochastic_bound"] = constants.eta_stochastic_bound;
  return j.dump(2);
}

}  // namespace linspg
