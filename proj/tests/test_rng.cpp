#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "seedrank/rng.hpp"

using namespace seedrank;

TEST_CASE("xoshiro256++ reference output") {
  // Reference: the published xoshiro256++ step applied to SplitMix64(0)
  // state words, computed independently below.
  std::uint64_t sm = 0;
  std::uint64_t s[4];
  for (auto& w : s) w = splitmix64(sm);
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  Rng rng(0);
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t expected = rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    CHECK(rng.next() == expected);
  }
}

TEST_CASE("splitmix64 known value") {
  std::uint64_t state = 0;
  CHECK(splitmix64(state) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("streams are deterministic and distinct") {
  Rng a = Rng::stream(42, 7);
  Rng b = Rng::stream(42, 7);
  Rng c = Rng::stream(42, 8);
  Rng d = Rng::stream(42, 7, 0);
  for (int i = 0; i < 8; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    (void)d.next();
  }
  CHECK(Rng::stream(1, 2, 3).next() == Rng::stream(1, 2, 3).next());
  CHECK(Rng::stream(1, 2, 3).next() != Rng::stream(1, 3, 2).next());
}

TEST_CASE("uniform lies in [0, 1) with the right mean") {
  Rng rng(3);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("below is unbiased and in range") {
  Rng rng(5);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto x = rng.below(7);
    REQUIRE(x < 7);
    ++counts[x];
  }
  // Each bucket ~ Binomial(n, 1/7): sd ~ 92, allow 5 sd.
  for (int c : counts) CHECK(std::abs(c - 10000) < 460);
}

TEST_CASE("shuffle is a permutation and covers all positions") {
  Rng rng(9);
  std::vector<int> first_slot(5, 0);
  for (int t = 0; t < 5000; ++t) {
    std::vector<int> v(5);
    std::iota(v.begin(), v.end(), 0);
    rng.shuffle(std::span<int>(v));
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == std::vector<int>{0, 1, 2, 3, 4});
    ++first_slot[v[0]];
  }
  for (int c : first_slot) CHECK(std::abs(c - 1000) < 150);
}

TEST_CASE("Bernoulli threshold is exact at 0 and 1") {
  Rng rng(1);
  BernoulliThreshold never(0.0), always(1.0), half(0.5);
  CHECK(never.never());
  int heads = 0;
  for (int i = 0; i < 10000; ++i) {
    CHECK_FALSE(never(rng));
    CHECK(always(rng));
    heads += half(rng) ? 1 : 0;
  }
  CHECK(std::abs(heads - 5000) < 250);
}
