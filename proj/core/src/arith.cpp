#include "estraus/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "estraus/error.hpp"

namespace estraus {

namespace {

constexpr u64 kTrialLimit = 1'000'000;
constexpr u64 kSpfLimit = u64{1} << 21;

// Smallest prime factor for every value below kSpfLimit.
const std::vector<std::uint32_t>& spf_table() {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<std::uint32_t> spf(kSpfLimit, 0);
    for (u64 i = 2; i < kSpfLimit; ++i) {
      if (spf[i] != 0) continue;
      for (u64 j = i; j < kSpfLimit; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
      }
    }
    return spf;
  }();
  return table;
}

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (u64 i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  // Deterministic sequence of (seed, increment) pairs; retried until a
  // nontrivial factor appears.
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 block = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += block) {
        ys = y;
        const u64 steps = std::min(block, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const u64 d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exponent, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exponent != 0) {
    if (exponent & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set that is exact for all n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 m) {
  if (m == 0) fail(ErrorKind::Domain, "factorize: argument must be >= 1");
  Factorization out;
  out.value = m;
  u64 rest = m;
  for (const std::uint32_t p : trial_primes()) {
    if (static_cast<u64>(p) * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    do {
      rest /= p;
      ++e;
    } while (rest % p == 0);
    out.factors.push_back({p, e});
  }
  if (rest == 1) return out;
  if (rest <= kTrialLimit * kTrialLimit || is_prime(rest)) {
    // Either the loop ran out of candidates below sqrt(rest), or rest
    // tested prime: in both cases rest is a single prime.
    out.factors.push_back({rest, 1});
    return out;
  }
  std::map<u64, unsigned> large;
  split_large(rest, large);
  for (const auto& [p, e] : large) out.factors.push_back({p, e});
  return out;
}

Factorization multiply(const Factorization& lhs, const Factorization& rhs) {
  Factorization out;
  if (__builtin_mul_overflow(lhs.value, rhs.value, &out.value)) {
    fail(ErrorKind::Overflow, "factorization product exceeds 64 bits");
  }
  auto a = lhs.factors.begin();
  auto b = rhs.factors.begin();
  while (a != lhs.factors.end() || b != rhs.factors.end()) {
    if (b == rhs.factors.end() || (a != lhs.factors.end() && a->prime < b->prime)) {
      out.factors.push_back(*a++);
    } else if (a == lhs.factors.end() || b->prime < a->prime) {
      out.factors.push_back(*b++);
    } else {
      out.factors.push_back({a->prime, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  return out;
}

SmallFactorization factorize_small(u64 m) {
  SmallFactorization out;
  if (m == 0) fail(ErrorKind::Domain, "factorize: argument must be >= 1");
  out.value = m;
  if (m < kSpfLimit) {
    const auto& spf = spf_table();
    while (m > 1) {
      const u64 p = spf[m];
      unsigned e = 0;
      do {
        m /= p;
        ++e;
      } while (m % p == 0);
      out.factors[out.size++] = {p, e};
    }
    return out;
  }
  for (const auto& pp : factorize(m).factors) out.factors[out.size++] = pp;
  return out;
}

SmallFactorization combine(const SmallFactorization& lhs,
                           const SmallFactorization& rhs, u64 divisor) {
  SmallFactorization out;
  const u128 product = static_cast<u128>(lhs.value) * rhs.value;
  if (divisor == 0 || product % divisor != 0 || product / divisor > ~u64{0}) {
    fail(ErrorKind::Overflow, "combine: quotient not a 64-bit integer");
  }
  out.value = static_cast<u64>(product / divisor);
  auto push = [&](u64 p, unsigned e) {
    while (e > 0 && divisor % p == 0) {
      divisor /= p;
      --e;
    }
    if (e > 0) out.factors[out.size++] = {p, e};
  };
  std::size_t i = 0, j = 0;
  while (i < lhs.size || j < rhs.size) {
    if (j == rhs.size || (i < lhs.size && lhs.factors[i].prime < rhs.factors[j].prime)) {
      push(lhs.factors[i].prime, lhs.factors[i].exponent);
      ++i;
    } else if (i == lhs.size || rhs.factors[j].prime < lhs.factors[i].prime) {
      push(rhs.factors[j].prime, rhs.factors[j].exponent);
      ++j;
    } else {
      push(lhs.factors[i].prime, lhs.factors[i].exponent + rhs.factors[j].exponent);
      ++i;
      ++j;
    }
  }
  return out;
}

void square_divisors_upto(std::span<const PrimePower> factors, u64 bound,
                          std::vector<u64>& out) {
  out.clear();
  if (bound == 0) return;
  out.push_back(1);
  for (const auto& [p, e] : factors) {
    const u64 limit = bound / p;  // x * p <= bound  <=>  x <= bound / p
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) {
      u64 x = out[i];
      for (unsigned k = 0; k < 2 * e && x <= limit; ++k) {
        x *= p;
        out.push_back(x);
      }
    }
  }
}

DivisibilityTest::DivisibilityTest(u64 divisor) {
  if (divisor == 0) fail(ErrorKind::Domain, "divisibility test by zero");
  limit_ = ~u64{0} / divisor;
  shift_ = static_cast<unsigned>(__builtin_ctzll(divisor));
  const u64 odd = divisor >> shift_;
  // Newton iteration for the inverse of an odd number modulo 2^64.
  u64 inv = odd;
  for (int i = 0; i < 5; ++i) inv *= 2 - odd * inv;
  inverse_ = inv;
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace estraus
