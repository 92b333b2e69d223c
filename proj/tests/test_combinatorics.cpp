#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "zenolab/combinatorics.hpp"
#include "zenolab/errors.hpp"

using namespace zenolab;
using Catch::Approx;

namespace {

// Odometer over [lo_l, hi]^k counting tuples with sum <= cap. Written
// independently of the library's recursive enumerator.
long long odometer_count(long k, const std::vector<long>& lo, long cap) {
  if (cap < 0) return 0;
  std::vector<long> digits(lo.begin(), lo.end());
  long long count = 0;
  for (;;) {
    const long sum = std::accumulate(digits.begin(), digits.end(), 0L);
    if (sum <= cap) ++count;
    long pos = 0;
    while (pos < k) {
      if (++digits[pos] <= cap) break;
      digits[pos] = lo[pos];
      ++pos;
    }
    if (pos == k) return count;
  }
}

long long brute_simplex(long n, long k) {
  return odometer_count(k, std::vector<long>(k, 0), n - k);
}

long long brute_restricted(long n, long k, const std::vector<long>& N) {
  std::vector<long> lo(N.begin(), N.begin() + k);
  return odometer_count(k, lo, n - k - N[k]);
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(1000, 8) == BigInt("24115080524699431125"));
  // Pascal's rule on a band.
  for (long n = 1; n <= 60; ++n)
    for (long k = 1; k <= n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("simplex count examples") {
  CHECK(simplex_count(5, 2) == 10);
  CHECK(brute_simplex(5, 2) == 10);
  for (long k = 1; k <= 6; ++k) CHECK(simplex_count(k, k) == 1);
  CHECK(simplex_count(2, 3) == 0);
  CHECK(simplex_count(1000, 8) == BigInt("24115080524699431125"));
}

TEST_CASE("simplex count equals enumeration") {
  for (long n = 1; n <= 25; ++n) {
    for (long k = 1; k <= 5; ++k) {
      const long long brute = brute_simplex(n, k);
      CHECK(simplex_count(n, k) == brute);
      CHECK(enumerate_simplex(n, k) == brute);
    }
  }
}

TEST_CASE("restricted count examples") {
  CHECK(restricted_count(12, 3, {0, 0, 0, 0}) == simplex_count(12, 3));
  for (long n = 1; n <= 20; ++n)
    for (long a = 0; a <= 5; ++a)
      for (long b = 0; b <= 5; ++b) CHECK(restricted_count(n, 1, {a, b}) == std::max(0L, n - a - b));
  CHECK_THROWS_AS(restricted_count(10, 2, {1, 1}), InvariantViolation);
  CHECK_THROWS_AS(restricted_count(10, 2, {1, -1, 0}), InvariantViolation);

  SimplexSpec spec;
  spec.n = 9;
  spec.k = 2;
  spec.N = std::vector<long>{1, 2, 0};
  CHECK(restricted_count(spec) == binomial(6, 2));
}

TEST_CASE("restricted count equals enumeration") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<long> entry(0, 5);
  for (long n = 1; n <= 25; ++n) {
    for (long k = 1; k <= 4; ++k) {
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<long> N(k + 1);
        for (auto& v : N) v = entry(gen);
        const long long brute = brute_restricted(n, k, N);
        CHECK(restricted_count(n, k, N) == brute);
        CHECK(enumerate_restricted(n, k, N) == brute);
      }
    }
  }
}

TEST_CASE("simplex ratio bound") {
  const SimplexRatioCheck one = simplex_ratio_bound_check(7, 1);
  CHECK(one.ratio == 1.0);
  CHECK(one.limit == 1.0);
  CHECK(one.deviation == 0.0);
  CHECK(one.bound == Approx(2.0 / 7.0));
  CHECK(one.holds);

  const SimplexRatioCheck c = simplex_ratio_bound_check(100, 3);
  CHECK(c.ratio == Approx(0.1617).epsilon(1e-15));
  CHECK(c.deviation == Approx(0.004966666666666667).epsilon(1e-14));
  CHECK(c.bound == Approx(0.04));
  CHECK(c.holds);

  CHECK_THROWS_AS(simplex_ratio_bound_check(2, 3), InvariantViolation);
  CHECK_THROWS_AS(simplex_ratio_bound_check(5, 0), InvariantViolation);
}

TEST_CASE("cardinality bounds hold on the full sweep") {
  std::size_t failures = 0;
  for (long k = 1; k <= 8; ++k)
    for (long n = k; n <= 1000; ++n)
      if (!simplex_ratio_bound_check(n, k).holds) ++failures;
  CHECK(failures == 0);
}

TEST_CASE("restricted difference bound") {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<long> entry(0, 5);
  for (long n = 1; n <= 60; ++n) {
    for (long k = 1; k <= std::min(4L, n); ++k) {
      std::vector<long> N(k + 1);
      for (auto& v : N) v = entry(gen);
      const RestrictedBoundCheck c = restricted_bound_check(n, k, N);
      CHECK(c.holds);
      CHECK(c.difference <= c.bound + 1e-15);
      // The exact difference against the enumeration oracle.
      if (n <= 25) {
        const double diff = double(brute_simplex(n, k) - brute_restricted(n, k, N)) / std::pow(double(n), k);
        CHECK(c.difference == Approx(diff).epsilon(1e-14).margin(1e-300));
      }
    }
  }
  // Zero shifts give zero difference.
  const RestrictedBoundCheck z = restricted_bound_check(30, 3, {0, 0, 0, 0});
  CHECK(z.difference == 0.0);
  CHECK(z.bound == 0.0);
  CHECK(z.holds);
}
