#include "estraus/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "estraus/error.hpp"

namespace estraus {

namespace {

u64 isqrt(u64 x) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::vector<u64> base_primes(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit,
                    std::size_t window) {
  if (lo < 2 || lo > hi) {
    fail(ErrorKind::Domain, "invalid prime range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + ")");
  }
  if (hi > kMaxSieve) fail(ErrorKind::Domain, "prime range exceeds 2^40");
  if (window == 0) fail(ErrorKind::Domain, "sieve window must be positive");
  if (lo == hi) return;

  const std::vector<u64> small = base_primes(isqrt(hi - 1));
  std::vector<char> composite;
  for (u64 start = lo; start < hi; start += window) {
    const u64 stop = std::min<u64>(hi, start + window);
    composite.assign(stop - start, 0);
    for (const u64 p : small) {
      if (p * p >= stop) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 m = first; m < stop; m += p) composite[m - start] = 1;
    }
    for (u64 v = start; v < stop; ++v) {
      if (!composite[v - start]) visit(v);
    }
  }
}

PrimeRange primes_in_range(u64 lo, u64 hi, std::size_t window) {
  PrimeRange out{lo, hi, {}};
  for_each_prime(lo, hi, [&](u64 p) { out.primes.push_back(p); }, window);
  return out;
}

u64 prime_count(u64 x) {
  if (x < 2) fail(ErrorKind::Domain, "prime_count needs X >= 2");
  u64 count = 0;
  for_each_prime(2, x + 1, [&](u64) { ++count; });
  return count;
}

double mangoldt(u64 m) {
  if (m == 0) fail(ErrorKind::Domain, "mangoldt needs m >= 1");
  const Factorization f = factorize(m);
  if (f.factors.size() != 1) return 0.0;
  return std::log(static_cast<double>(f.factors.front().prime));
}

double mangoldt_divisor_sum(u64 n) {
  double total = 0.0;
  for (const u64 d : divisors(factorize(n))) total += mangoldt(d);
  return total;
}

}  // namespace estraus
