#include "linspg/instances.hpp"

#include <cmath>
#include <stdexcept>

namespace linspg {

namespace {

Matrix from_transposed(std::initializer_list<std::initializer_list<double>> rows_of_xt) {
  const Eigen::Index d = static_cast<Eigen::Index>(rows_of_xt.size());
  const Eigen::Index k = static_cast<Eigen::Index>(rows_of_xt.begin()->size());
  Matrix x(k, d);
  Eigen::Index i = 0;
  for (const auto& row : rows_of_xt) {
    Eigen::Index a = 0;
    for (double v : row) x(a++, i) = v;
    ++i;
  }
  return x;
}

Vector vec(std::initializer_list<double> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

std::vector<RegistryEntry> build_registry() {
  std::vector<RegistryEntry> entries;

  {
    RegistryEntry e{"example-1",
                    ProblemInstance(from_transposed({{0, -1, 0, 2}, {-2, 0, 1, 0}}),
                                    vec({9, 8, 7, 6}), 9.0),
                    {}, "4-arm, 2-d instance with an order-preserving direction; gradient "
                        "ascent reaches the best arm despite a large projection residual"};
    e.expected.assumption1 = true;
    e.expected.witness_feasible = true;
    e.expected.assumption4 = true;
    e.expected.eps_approx = std::sqrt(202.6);
    e.expected.known_witness = vec({-1, -1});
    entries.push_back(std::move(e));
  }
  {
    RegistryEntry e{"example-2",
                    ProblemInstance(from_transposed({{0, 0, -1, 2}, {-2, 1, 0, 0}}),
                                    vec({9, 8, 7, 6}), 9.0),
                    {}, "example-1 with two feature columns swapped; no direction preserves "
                        "the reward ordering and ascent stalls on a suboptimal arm"};
    e.expected.assumption1 = true;
    e.expected.witness_feasible = false;
    e.expected.eps_approx = std::sqrt(205.0);
    entries.push_back(std::move(e));
  }
  {
    RegistryEntry e{"example-3",
                    ProblemInstance(from_transposed({{0, -0.3, 1}, {-1, 0.6, 0}}),
                                    vec({1, 0.5, 0}), 1.0),
                    {}, "3-arm instance satisfying every condition; converges from any start"};
    e.expected.assumption1 = true;
    e.expected.witness_feasible = true;
    e.expected.k3_value = 0.7;
    e.expected.assumption4 = true;
    e.expected.known_witness = vec({-2, -1});
    entries.push_back(std::move(e));
  }
  {
    RegistryEntry e{"example-4",
                    ProblemInstance(from_transposed({{0, 0.6, 1}, {-1, 0.6, 0}}),
                                    vec({1, 0.5, 0}), 1.0),
                    {}, "3-arm instance with an ordering witness but misaligned triples; "
                        "a trapping initialization defeats gradient ascent"};
    e.expected.assumption1 = true;
    e.expected.witness_feasible = true;
    e.expected.k3_value = -0.2;
    e.expected.assumption4 = false;
    e.expected.known_witness = vec({-2, -1});
    entries.push_back(std::move(e));
  }
  {
    RegistryEntry e{"prop-3",
                    ProblemInstance(from_transposed({{3, 5, 1}, {4, 6, 2}}),
                                    vec({3, 2, 1}), 3.0),
                    {}, "3-arm instance whose three-arm value is positive yet no ordering "
                        "witness exists; the best arm is unreachable for any parameters"};
    e.expected.assumption1 = true;
    e.expected.witness_feasible = false;
    e.expected.k3_value = 16.0;
    e.expected.assumption4 = false;
    entries.push_back(std::move(e));
  }
  {
    RegistryEntry e{"tabular-4",
                    ProblemInstance(Matrix::Identity(4, 4), vec({9, 8, 7, 6}), 9.0),
                    {}, "one-hot features recover the tabular bandit; every condition holds "
                        "and the projection residual vanishes"};
    e.expected.assumption1 = true;
    e.expected.witness_feasible = true;
    e.expected.assumption4 = true;
    e.expected.eps_approx = 0.0;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = build_registry();
  return entries;
}

const RegistryEntry& registry_entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown registry id: " + id);
}

Condition parse_condition(const std::string& name) {
  if (name == "A1" || name == "a1") return Condition::kUniqueRewards;
  if (name == "A2" || name == "a2") return Condition::kOrderingWitness;
  if (name == "A3" || name == "a3") return Condition::kThreeArm;
  if (name == "A4" || name == "a4") return Condition::kFeatureTriples;
  throw std::invalid_argument("unknown condition name: " + name);
}

namespace {

// Strictly descending draws over [lo, hi] with consecutive gaps >= min_gap.
Vector descending_draws(rng::Stream& stream, Eigen::Index n, double lo, double hi,
                        double min_gap) {
  const double span = hi - lo;
  if (span < min_gap * static_cast<double>(n - 1))
    throw std::invalid_argument("generate: range too narrow for the gap floor");
  Vector gaps(n - 1);
  const double gap_hi = span / static_cast<double>(n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i)
    gaps(i) = min_gap + stream.next_unit() * (gap_hi - min_gap);
  const double slack = span - gaps.sum();
  Vector out(n);
  out(0) = hi - stream.next_unit() * slack;
  for (Eigen::Index i = 1; i < n; ++i) out(i) = out(i - 1) - gaps(i - 1);
  return out;
}

// Random orthonormal columns via Gram-Schmidt on gaussian draws.
Matrix random_orthonormal(rng::Stream& stream, Eigen::Index d) {
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = stream.next_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(d, d);
}

bool satisfies(const ProblemInstance& instance, const std::set<Condition>& require) {
  for (Condition c : require) {
    switch (c) {
      case Condition::kUniqueRewards:
        if (!check_unique_rewards(instance)) return false;
        break;
      case Condition::kOrderingWitness:
        if (!check_unique_rewards(instance)) return false;
        if (!find_ordering_witness(instance).feasible) return false;
        break;
      case Condition::kThreeArm:
        if (instance.num_actions() != 3) return false;
        if (!(three_arm_condition_value(instance) > Tolerances::strict_eps)) return false;
        break;
      case Condition::kFeatureTriples:
        if (!check_unique_rewards(instance)) return false;
        if (!check_feature_triples(instance).holds) return false;
        break;
    }
  }
  return true;
}

}  // namespace

ProblemInstance generate(const GeneratorSpec& spec) {
  if (spec.num_actions < 2 || spec.dim < 1 || spec.dim > spec.num_actions)
    throw std::invalid_argument("generate: need K >= 2 and 1 <= d <= K");
  if (spec.require.count(Condition::kThreeArm) && spec.num_actions != 3)
    throw std::invalid_argument("generate: the three-arm condition needs K = 3");
  if (spec.noise && (spec.reward_lo < 0.0 || spec.reward_hi > 1.0))
    throw std::invalid_argument("generate: noisy rewards need a range inside [0, 1]");

  const bool structured = spec.require.count(Condition::kOrderingWitness) ||
                          spec.require.count(Condition::kThreeArm) ||
                          spec.require.count(Condition::kFeatureTriples);
  const double kMinGap = std::max(0.05, spec.reward_gap_floor);
  if (!(spec.score_shrink > 0.0 && spec.score_shrink <= 1.0))
    throw std::invalid_argument("generate: score shrink must lie in (0, 1]");

  for (int attempt = 0; attempt < spec.max_rejections; ++attempt) {
    rng::Stream stream(rng::derive_key(spec.seed, static_cast<std::uint64_t>(attempt)));

    Vector rewards = descending_draws(stream, spec.num_actions, spec.reward_lo,
                                      spec.reward_hi, kMinGap);

    Matrix features;
    if (spec.forced_features) {
      features = *spec.forced_features;
    } else if (structured) {
      // Per-direction descending scores with shrinking magnitude: every
      // orthogonal projection preserves the reward ordering, which puts the
      // candidate inside the certified family by construction.
      const Matrix basis = random_orthonormal(stream, spec.dim);
      features = Matrix::Zero(spec.num_actions, spec.dim);
      double scale = spec.feature_scale;
      for (Eigen::Index p = 0; p < spec.dim; ++p) {
        const double gap_floor =
            std::min(kMinGap * scale, scale / static_cast<double>(spec.num_actions - 1));
        const Vector score =
            descending_draws(stream, spec.num_actions, -scale, scale, gap_floor);
        features += score * basis.col(p).transpose();
        scale *= spec.score_shrink;
      }
    } else {
      features = Matrix(spec.num_actions, spec.dim);
      for (Eigen::Index a = 0; a < spec.num_actions; ++a)
        for (Eigen::Index i = 0; i < spec.dim; ++i)
          features(a, i) = stream.next_uniform(-spec.feature_scale, spec.feature_scale);
    }

    const double r_abs = rewards.cwiseAbs().maxCoeff();
    const double bound = spec.noise ? std::max(1.0, r_abs) : r_abs;
    ProblemInstance candidate(std::move(features), std::move(rewards), bound, spec.noise);
    if (satisfies(candidate, spec.require)) return candidate;
  }
  throw std::runtime_error(
      "generate: exhausted " + std::to_string(spec.max_rejections) +
      " attempts without meeting the required conditions (acceptance rate 0)");
}

ProblemInstance conditioned_benchmark(double feature_scale,
                                      std::optional<NoiseFamily> noise) {
  Matrix x(6, 3);
  x << 0.712758, 1.098285, 0.190811,
       1.150958, -0.371305, 0.108038,
      -0.212273, -0.291711, 1.307959,
      -0.032792, -0.279828, -0.564024,
       0.197526, -0.453425, -0.281425,
       0.499671, -0.674856, 0.108748;
  Vector r(6);
  r << 1.0, 0.8, 0.6, 0.4, 0.2, 0.0;
  return ProblemInstance(feature_scale * x, r, 1.0, noise);
}

}  // namespace linspg
