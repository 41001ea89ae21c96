#include "linspg/bandit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace linspg {

std::string NoiseFamily::name() const {
  switch (kind) {
    case NoiseKind::kBernoulli: return "bernoulli";
    case NoiseKind::kTruncatedGaussian: return "truncated-gaussian";
    case NoiseKind::kBeta: return "beta";
  }
  return "unknown";
}

NoiseFamily NoiseFamily::parse(const std::string& name, double sigma, double concentration) {
  if (name == "bernoulli") return bernoulli();
  if (name == "truncated-gaussian" || name == "gaussian") return truncated_gaussian(sigma);
  if (name == "beta") return beta(concentration);
  throw std::invalid_argument("unknown noise family: " + name);
}

ProblemInstance::ProblemInstance(Matrix features, Vector mean_rewards, double reward_bound,
                                 std::optional<NoiseFamily> noise, bool require_unique_rewards)
    : features_(std::move(features)),
      rewards_(std::move(mean_rewards)),
      reward_bound_(reward_bound),
      noise_(noise) {
  const Eigen::Index k = features_.rows();
  const Eigen::Index d = features_.cols();
  if (k < 2) throw std::invalid_argument("instance: need at least 2 actions");
  if (d < 1 || d > k) throw std::invalid_argument("instance: need 1 <= d <= K");
  if (rewards_.size() != k) throw std::invalid_argument("instance: reward length != K");
  if (!features_.allFinite() || !rewards_.allFinite())
    throw std::invalid_argument("instance: non-finite entries");
  if (!(reward_bound_ > 0.0)) throw std::invalid_argument("instance: reward bound must be positive");
  if (rewards_.cwiseAbs().maxCoeff() > reward_bound_ + 1e-15)
    throw std::invalid_argument("instance: |r(a)| exceeds the reward bound");
  if (noise_) {
    // All noise families realize rewards in [0, 1].
    if (rewards_.minCoeff() < 0.0 || rewards_.maxCoeff() > 1.0)
      throw std::invalid_argument("instance: noisy rewards need means in [0, 1]");
    if (reward_bound_ < 1.0)
      throw std::invalid_argument("instance: noisy rewards realize values up to 1, bound must cover them");
  }

  best_action_ = 0;
  rewards_.maxCoeff(&best_action_);
  reward_gap_ = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j)
      reward_gap_ = std::min(reward_gap_, std::abs(rewards_(i) - rewards_(j)));
  if (require_unique_rewards && reward_gap_ <= Tolerances::strict_eps)
    throw std::invalid_argument("instance: mean rewards are not pairwise distinct");
}

double ProblemInstance::sample_reward(Eigen::Index a, rng::Stream& stream) const {
  if (!noise_) throw std::logic_error("sample_reward: instance has no noise family");
  const double mean = rewards_(a);
  switch (noise_->kind) {
    case NoiseKind::kBernoulli:
      return stream.next_bernoulli(mean) ? 1.0 : 0.0;
    case NoiseKind::kTruncatedGaussian: {
      // Symmetric truncation keeps the conditional mean at r(a).
      const double delta = std::min(mean, 1.0 - mean);
      if (delta <= 0.0) return mean;
      for (int i = 0; i < 1000; ++i) {
        const double x = mean + noise_->sigma * stream.next_gaussian();
        if (std::abs(x - mean) <= delta) return x;
      }
      return mean;  // pathological sigma/delta ratio; fall back to the mean
    }
    case NoiseKind::kBeta: {
      if (mean <= 0.0) return 0.0;
      if (mean >= 1.0) return 1.0;
      const double c = noise_->concentration;
      return stream.next_beta(mean * c, (1.0 - mean) * c);
    }
  }
  throw std::logic_error("sample_reward: unreachable");
}

std::string ProblemInstance::to_json() const {
  nlohmann::json j;
  j["K"] = num_actions();
  j["d"] = dim();
  std::vector<double> feats;
  feats.reserve(static_cast<std::size_t>(num_actions() * dim()));
  for (Eigen::Index a = 0; a < num_actions(); ++a)
    for (Eigen::Index i = 0; i < dim(); ++i) feats.push_back(features_(a, i));
  j["features"] = feats;
  j["rewards"] = std::vector<double>(rewards_.data(), rewards_.data() + rewards_.size());
  j["r_max"] = reward_bound_;
  if (noise_) {
    nlohmann::json n;
    n["kind"] = noise_->name();
    if (noise_->kind == NoiseKind::kTruncatedGaussian) n["sigma"] = noise_->sigma;
    if (noise_->kind == NoiseKind::kBeta) n["concentration"] = noise_->concentration;
    j["noise"] = n;
  } else {
    j["noise"] = nullptr;
  }
  return j.dump(2);
}

ProblemInstance ProblemInstance::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const Eigen::Index k = j.at("K").get<Eigen::Index>();
  const Eigen::Index d = j.at("d").get<Eigen::Index>();
  const auto feats = j.at("features").get<std::vector<double>>();
  const auto rews = j.at("rewards").get<std::vector<double>>();
  if (feats.size() != static_cast<std::size_t>(k * d))
    throw std::invalid_argument("instance json: features length != K*d");
  if (rews.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("instance json: rewards length != K");
  Matrix x(k, d);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index i = 0; i < d; ++i) x(a, i) = feats[static_cast<std::size_t>(a * d + i)];
  Vector r(k);
  for (Eigen::Index a = 0; a < k; ++a) r(a) = rews[static_cast<std::size_t>(a)];
  std::optional<NoiseFamily> noise;
  if (j.contains("noise") && !j.at("noise").is_null()) {
    const auto& n = j.at("noise");
    noise = NoiseFamily::parse(n.at("kind").get<std::string>(),
                               n.value("sigma", 0.1), n.value("concentration", 8.0));
  }
  return ProblemInstance(std::move(x), std::move(r), j.at("r_max").get<double>(), noise);
}

PolicyState make_policy(const ProblemInstance& instance, const Vector& theta) {
  if (theta.size() != instance.dim())
    throw std::invalid_argument("make_policy: theta length != d");
  if (!theta.allFinite()) throw std::invalid_argument("make_policy: non-finite theta");
  PolicyState s;
  s.theta = theta;
  s.logits = instance.features() * theta;
  const double zmax = s.logits.maxCoeff();
  s.policy = (s.logits.array() - zmax).exp();
  s.policy /= s.policy.sum();
  return s;
}

double expected_reward(const ProblemInstance& instance, const PolicyState& state) {
  return state.policy.dot(instance.mean_rewards());
}

Vector covariance_apply(const Eigen::Ref<const Vector>& policy,
                        const Eigen::Ref<const Vector>& v) {
  return (policy.array() * v.array()).matrix() - policy * policy.dot(v);
}

Vector exact_gradient(const ProblemInstance& instance, const PolicyState& state) {
  return instance.features().transpose() *
         covariance_apply(state.policy, instance.mean_rewards());
}

double pairwise_covariance_form(const Eigen::Ref<const Vector>& policy,
                                const Eigen::Ref<const Vector>& x,
                                const Eigen::Ref<const Vector>& y) {
  const Eigen::Index k = policy.size();
  double s = 0.0;
  for (Eigen::Index i = 0; i < k - 1; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j)
      s += policy(i) * policy(j) * (x(i) - x(j)) * (y(i) - y(j));
  return s;
}

}  // namespace linspg
