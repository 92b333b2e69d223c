#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace zenolab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct SimplexSpec {
  long n = 1;
  long k = 1;
  /// (N_1, ..., N_{k+1}) when present.
  std::optional<std::vector<long>> N;
};

/// C(n, k); zero when k > n or k < 0.
BigInt binomial(long n, long k);

/// |{i in N_0^k : sum i <= n - k}| = C(n, k).
BigInt simplex_count(long n, long k);

/// |{i in N_0^k : i_l >= N_l, sum i <= n - k - N_{k+1}}|
/// = C(n - sum N, k) when n - sum N >= k, else 0.
BigInt restricted_count(long n, long k, const std::vector<long>& N);
BigInt restricted_count(const SimplexSpec& spec);

struct SimplexRatioCheck {
  double ratio;      // |Delta^k(n)| / n^k
  double limit;      // 1 / k!
  double deviation;  // |ratio - limit|, exact rational rounded once
  double bound;      // 2^k / ((k-1)! n)
  bool holds;        // decided in exact arithmetic
};

/// Requires n >= k >= 1.
SimplexRatioCheck simplex_ratio_bound_check(long n, long k);

struct RestrictedBoundCheck {
  double difference;  // (|Delta| - |I|) / n^k
  double bound;       // sum N / ((k-1)! n)
  bool holds;         // decided in exact arithmetic
};

RestrictedBoundCheck restricted_bound_check(long n, long k, const std::vector<long>& N);

/// Brute-force enumeration oracles (small n only).
long long enumerate_simplex(long n, long k);
long long enumerate_restricted(long n, long k, const std::vector<long>& N);

}  // namespace zenolab
