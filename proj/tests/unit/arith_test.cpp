#include <doctest.h>

#include <random>

#include "estraus/arith.hpp"
#include "estraus/error.hpp"

using namespace estraus;

namespace {

// Test oracle: plain trial division up to sqrt(m).
std::vector<PrimePower> trial_division(u64 m) {
  std::vector<PrimePower> out;
  for (u64 p = 2; p <= m / p; ++p) {
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

bool trial_is_prime(u64 m) {
  if (m < 2) return false;
  for (u64 p = 2; p <= m / p; ++p) {
    if (m % p == 0) return false;
  }
  return true;
}

u64 multiply_back(const Factorization& f) {
  u64 value = 1;
  for (const auto& [p, e] : f.factors) {
    for (unsigned i = 0; i < e; ++i) value *= p;
  }
  return value;
}

}  // namespace

TEST_CASE("factorize small values") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factorize(97).factors == std::vector<PrimePower>{{97, 1}});
  CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("factorize 10^12 + 39 against trial division") {
  const u64 m = 1'000'000'000'039ULL;
  const Factorization f = factorize(m);
  CHECK(f.factors == trial_division(m));
  CHECK(multiply_back(f) == m);
  for (const auto& pp : f.factors) CHECK(trial_is_prime(pp.prime));
}

TEST_CASE("factorize needs Pollard rho for large semiprimes") {
  // both factors above the trial-division limit
  const u64 p = 1'000'000'007ULL;
  const u64 q = 2'147'483'647ULL;
  const Factorization f = factorize(p * q);
  CHECK(f.factors == std::vector<PrimePower>{{p, 1}, {q, 1}});

  const u64 cube = 1'000'003ULL * 1'000'003ULL * 1'000'033ULL;
  CHECK(factorize(cube).factors == std::vector<PrimePower>{{1'000'003ULL, 2}, {1'000'033ULL, 1}});

  const u64 near_top = (u64{1} << 62) + 1;  // 5 * 5581 * 8681 * 49477 * 384773
  const Factorization g = factorize(near_top);
  CHECK(multiply_back(g) == near_top);
  for (const auto& pp : g.factors) CHECK(is_prime(pp.prime));
}

TEST_CASE("factorization invariants for 1..10^5") {
  for (u64 m = 1; m <= 100'000; ++m) {
    const Factorization f = factorize(m);
    REQUIRE(multiply_back(f) == m);
    u64 expected_count = 1;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      if (i > 0) REQUIRE(f.factors[i - 1].prime < f.factors[i].prime);
      REQUIRE(f.factors[i].exponent >= 1);
      expected_count *= f.factors[i].exponent + 1;
    }
    REQUIRE(divisors(f).size() == expected_count);
    const SmallFactorization s = factorize_small(m);
    REQUIRE(std::vector<PrimePower>(s.view().begin(), s.view().end()) == f.factors);
  }
  CHECK(factorize(600851475143ULL) == factorize(600851475143ULL));
}

TEST_CASE("divisors") {
  CHECK(divisors(factorize(1)) == std::vector<u64>{1});
  CHECK(divisors(factorize(12)) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  std::vector<u64> scan;
  for (u64 d = 1; d <= 196; ++d) {
    if (196 % d == 0) scan.push_back(d);
  }
  CHECK(divisors(factorize(196)) == scan);
  CHECK(scan == std::vector<u64>{1, 2, 4, 7, 14, 28, 49, 98, 196});
}

TEST_CASE("is_prime matches trial division and rejects strong pseudoprimes") {
  for (u64 m = 0; m < 20'000; ++m) REQUIRE(is_prime(m) == trial_is_prime(m));
  CHECK_FALSE(is_prime(3'215'031'751ULL));  // spsp to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(561));
  CHECK(is_prime((u64{1} << 61) - 1));
  CHECK(is_prime(18'446'744'073'709'551'557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18'446'744'073'709'551'615ULL));
}

TEST_CASE("square divisors up to a bound") {
  for (u64 m : {1ULL, 12ULL, 360ULL, 9699690ULL}) {
    const SmallFactorization f = factorize_small(m);
    for (u64 bound : {m, m / 2 + 1, m * 3}) {
      std::vector<u64> got;
      square_divisors_upto(f.view(), bound, got);
      std::sort(got.begin(), got.end());
      std::vector<u64> want;
      for (const u64 d : divisors(factorize(m * m))) {
        if (d <= bound) want.push_back(d);
      }
      CHECK(got == want);
    }
  }
}

TEST_CASE("combine divides out a common factor") {
  const SmallFactorization a = factorize_small(84);   // 2^2 3 7
  const SmallFactorization b = factorize_small(90);   // 2 3^2 5
  const SmallFactorization c = combine(a, b, 6);       // 84*90/6 = 1260
  CHECK(c.value == 1260);
  CHECK(std::vector<PrimePower>(c.view().begin(), c.view().end()) == factorize(1260).factors);
  CHECK_THROWS_AS(combine(a, b, 11), Error);
}

TEST_CASE("divisibility test agrees with the remainder operator") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 2000; ++round) {
    const u64 divisor = rng() % 100'000 + 1;
    const DivisibilityTest test(divisor);
    for (int k = 0; k < 50; ++k) {
      const u64 x = (k % 2 == 0) ? rng() : divisor * (rng() % 1'000'000);
      REQUIRE(test.divides(x) == (x % divisor == 0));
    }
  }
}

TEST_CASE("128-bit decimal formatting") {
  CHECK(to_string(u128{0}) == "0");
  CHECK(to_string(u128{210}) == "210");
  CHECK(to_string(~u128{0}) == "340282366920938463463374607431768211455");
}
