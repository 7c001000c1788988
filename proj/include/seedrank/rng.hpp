#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace seedrank {

/// xoshiro256++ generator seeded through SplitMix64.
///
/// Streams are splittable: `Rng::stream(seed, i)` derives an independent
/// generator for trial `i` by hashing (seed, i) through SplitMix64, so a
/// Monte Carlo loop produces the same draws whatever the thread count.
/// All derived quantities (uniform doubles, bounded integers, shuffles) are
/// computed here rather than with <random> distributions, whose outputs are
/// implementation-defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  /// Generator for sub-stream `index` of `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);
  /// Two-level stream, e.g. (seed, grid cell, trial).
  static Rng stream(std::uint64_t seed, std::uint64_t major,
                    std::uint64_t minor);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), unbiased (Lemire's method).
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Bernoulli(p) sampler that compares the top 53 bits of one draw against a
/// precomputed threshold; exact for p = 0 and p = 1.
class BernoulliThreshold {
 public:
  explicit BernoulliThreshold(double p);
  bool operator()(Rng& rng) const { return (rng.next() >> 11) < threshold_; }
  bool never() const { return threshold_ == 0; }

 private:
  std::uint64_t threshold_;
};

}  // namespace seedrank
