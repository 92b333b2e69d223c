#include "zenolab/combinatorics.hpp"

#include <string>

#include "zenolab/errors.hpp"

namespace zenolab {

namespace {

BigInt factorial(long k) {
  BigInt f = 1;
  for (long i = 2; i <= k; ++i) f *= i;
  return f;
}

BigInt int_pow(long base, long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

void check_N(long k, const std::vector<long>& N) {
  if (static_cast<long>(N.size()) != k + 1) {
    throw InvariantViolation("restricted simplex: N must have k + 1 = " +
                             std::to_string(k + 1) + " entries");
  }
  for (long v : N) {
    if (v < 0) throw InvariantViolation("restricted simplex: N entries must be >= 0");
  }
}

// Counts tuples (i_pos, ..., i_{k-1}) with i_l >= lower[l] and the running
// sum staying <= budget.
long long enumerate(long pos, long k, long budget, const std::vector<long>& lower) {
  if (budget < 0) return 0;
  if (pos == k) return 1;
  long long total = 0;
  for (long v = lower[pos]; v <= budget; ++v) {
    total += enumerate(pos + 1, k, budget - v, lower);
  }
  return total;
}

}  // namespace

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt simplex_count(long n, long k) {
  if (n < 1 || k < 1) throw InvariantViolation("simplex_count: n, k must be >= 1");
  return binomial(n, k);
}

BigInt restricted_count(long n, long k, const std::vector<long>& N) {
  if (n < 1 || k < 1) throw InvariantViolation("restricted_count: n, k must be >= 1");
  check_N(k, N);
  long sum = 0;
  for (long v : N) sum += v;
  const long m = n - sum;
  if (m < k) return 0;
  return binomial(m, k);
}

BigInt restricted_count(const SimplexSpec& spec) {
  if (!spec.N) return simplex_count(spec.n, spec.k);
  return restricted_count(spec.n, spec.k, *spec.N);
}

SimplexRatioCheck simplex_ratio_bound_check(long n, long k) {
  if (k < 1 || n < k) {
    throw InvariantViolation("simplex_ratio_bound_check: requires n >= k >= 1");
  }
  const BigRational ratio(simplex_count(n, k), int_pow(n, k));
  const BigRational limit(BigInt(1), factorial(k));
  const BigRational bound(BigInt(1) << k, factorial(k - 1) * n);
  const BigRational dev = abs(ratio - limit);
  return {static_cast<double>(ratio), static_cast<double>(limit),
          static_cast<double>(dev), static_cast<double>(bound), dev <= bound};
}

RestrictedBoundCheck restricted_bound_check(long n, long k, const std::vector<long>& N) {
  if (k < 1 || n < k) {
    throw InvariantViolation("restricted_bound_check: requires n >= k >= 1");
  }
  check_N(k, N);
  long sum = 0;
  for (long v : N) sum += v;
  const BigRational diff(simplex_count(n, k) - restricted_count(n, k, N),
                         int_pow(n, k));
  const BigRational bound(BigInt(sum), factorial(k - 1) * n);
  return {static_cast<double>(diff), static_cast<double>(bound), diff <= bound};
}

long long enumerate_simplex(long n, long k) {
  return enumerate_restricted(n, k, std::vector<long>(static_cast<std::size_t>(k + 1), 0));
}

long long enumerate_restricted(long n, long k, const std::vector<long>& N) {
  if (n < 1 || k < 1) throw InvariantViolation("enumerate: n, k must be >= 1");
  check_N(k, N);
  std::vector<long> lower(N.begin(), N.begin() + k);
  return enumerate(0, k, n - k - N[static_cast<std::size_t>(k)], lower);
}

}  // namespace zenolab
