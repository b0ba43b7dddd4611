#include <doctest.h>

#include <vector>

#include "ratings/rng.hpp"

using namespace ratings;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 1000; ++k) CHECK(a.next_u64() == b.next_u64());
  for (int k = 0; k < 1000; ++k) CHECK(a.next_unit() == b.next_unit());
  for (int k = 0; k < 1000; ++k) CHECK(a.next_below(7) == b.next_below(7));
}

TEST_CASE("next_unit stays in [0, 1)") {
  Rng rng(7);
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("next_below is bounded and roughly uniform") {
  Rng rng(99);
  std::vector<int> hits(3, 0);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    const std::uint64_t v = rng.next_below(3);
    REQUIRE(v < 3);
    ++hits[v];
  }
  for (int c = 0; c < 3; ++c) {
    const double freq = static_cast<double>(hits[c]) / draws;
    CHECK(freq == doctest::Approx(1.0 / 3.0).epsilon(0.03));
  }
}

TEST_CASE("next_range covers its interval") {
  Rng rng(5);
  for (int k = 0; k < 10000; ++k) {
    const double v = rng.next_range(-0.1, 0.1);
    CHECK(v >= -0.1);
    CHECK(v < 0.1);
  }
}

TEST_CASE("derive_seed separates sub-streams") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
  CHECK(derive_seed(1, {2}) != derive_seed(1, {2, 0}));
}

TEST_CASE("shuffle is a deterministic permutation") {
  std::vector<int> first(100);
  std::vector<int> second(100);
  for (int k = 0; k < 100; ++k) first[k] = second[k] = k;

  Rng a(11);
  Rng b(11);
  a.shuffle(first);
  b.shuffle(second);
  CHECK(first == second);

  std::vector<bool> seen(100, false);
  for (int v : first) {
    REQUIRE(v >= 0);
    REQUIRE(v < 100);
    CHECK_FALSE(seen[v]);
    seen[v] = true;
  }

  std::vector<int> identity(100);
  for (int k = 0; k < 100; ++k) identity[k] = k;
  CHECK(first != identity);
}
