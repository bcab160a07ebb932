#include <doctest.h>

#include <cmath>
#include <set>

#include "parl/rng.hpp"

using namespace parl;

TEST_SUITE("rng") {

TEST_CASE("identical seeds give identical sequences") {
  RngStream a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("doubles lie in the half-open unit interval") {
  RngStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("bounded draws cover the range roughly uniformly") {
  RngStream rng(2);
  const std::uint64_t n = 7;
  int counts[7] = {};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[rng.next_below(n)];
  const double expect = draws / double(n);
  const double sigma = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
  for (int v = 0; v < 7; ++v) CHECK(std::fabs(counts[v] - expect) < 4 * sigma);
}

TEST_CASE("derived child seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint64_t child = RngStream::derive(42, i);
    CHECK(child == RngStream::derive(42, i));
    seen.insert(child);
  }
  CHECK(seen.size() == 100);
  CHECK(RngStream::derive(42, 0) != RngStream::derive(43, 0));
}

}  // TEST_SUITE
