#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Counter-based deterministic random numbers. Every draw is a pure function
// of (key, counter), so runs are reproducible and independent of scheduling
// order. Child keys are derived with a fixed 64-bit mixing function.

namespace linspg::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Stateless counter draw: hash of key and counter.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + mix64(counter + kGolden));
}

// Derives an independent child key, e.g. per run of a sweep.
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) {
  return mix64(parent ^ mix64(index + 0x5851f42d4c957f2dULL));
}

// A small stream view over one key. Each iteration of an optimizer gets its
// own stream (key derived from run key and iteration), so a variable number
// of draws per step (rejection sampling) never shifts later iterations.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return at(key_, counter_++); }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang, with the usual boost for shape < 1.
  double next_gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
    if (shape < 1.0) {
      const double u = next_unit();
      return next_gamma(shape + 1.0) * std::pow(u > 0.0 ? u : 1e-300, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_gaussian();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = next_unit();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Beta(a, b) from two gammas.
  double next_beta(double a, double b) {
    const double g1 = next_gamma(a);
    const double g2 = next_gamma(b);
    const double s = g1 + g2;
    return s > 0.0 ? g1 / s : 0.5;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream for a single iteration of a run.
inline Stream step_stream(std::uint64_t run_key, std::uint64_t iteration) {
  return Stream(mix64(run_key + kGolden * (iteration + 1)));
}

}  // namespace linspg::rng
