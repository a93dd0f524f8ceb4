#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "estraus/arith.hpp"

namespace estraus {

inline constexpr u64 kMaxSieve = u64{1} << 40;
inline constexpr std::size_t kDefaultSieveWindow = std::size_t{1} << 20;

/// Primes in the half-open interval [lo, hi), increasing.
struct PrimeRange {
  u64 lo = 2;
  u64 hi = 2;
  std::vector<u64> primes;
};

/// Segmented sieve. Memory is O(window + pi(sqrt(hi))).
/// Requires 2 <= lo <= hi <= 2^40.
PrimeRange primes_in_range(u64 lo, u64 hi,
                           std::size_t window = kDefaultSieveWindow);

/// Streams primes of [lo, hi) window by window without materializing them.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit,
                    std::size_t window = kDefaultSieveWindow);

/// pi(X): number of primes <= X. Requires X >= 2.
u64 prime_count(u64 x);

/// Lambda(m) = log p if m = p^k (k >= 1), else 0.
double mangoldt(u64 m);

/// Sum of Lambda(d) over the divisors d of n; equals log n.
double mangoldt_divisor_sum(u64 n);

}  // namespace estraus
