#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace estraus {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string to_string(u128 value);

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of `value`, primes strictly increasing.
/// The factorization of 1 has no factors.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exponent, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Trial division by primes below 10^6, then Pollard rho (Brent) on the
/// cofactor. Throws Domain for m = 0. Exact for m < 2^63; larger 64-bit
/// inputs are accepted and factored with the same machinery.
Factorization factorize(u64 m);

/// Combines two factorizations into the factorization of their product.
/// Throws Overflow if the product does not fit in 64 bits.
Factorization multiply(const Factorization& lhs, const Factorization& rhs);

/// All divisors of f.value in strictly increasing order.
std::vector<u64> divisors(const Factorization& f);

/// Fixed-capacity factorization for the enumeration hot path. Any value
/// below 2^64 has at most 15 distinct prime factors.
struct SmallFactorization {
  u64 value = 1;
  std::array<PrimePower, 16> factors{};
  std::size_t size = 0;

  std::span<const PrimePower> view() const { return {factors.data(), size}; }
};

/// Same result as factorize(), served from a smallest-prime-factor table
/// for small m.
SmallFactorization factorize_small(u64 m);

/// Factorization of lhs.value * rhs.value / divisor. `divisor` must divide
/// the product and the quotient must fit in 64 bits.
SmallFactorization combine(const SmallFactorization& lhs,
                           const SmallFactorization& rhs, u64 divisor);

/// Fills `out` with every divisor d of value^2 (value given by its prime
/// factors) with d <= bound. Order is unspecified. The enumeration only
/// ever needs the lower half of the divisor lattice of a square.
void square_divisors_upto(std::span<const PrimePower> factors, u64 bound,
                          std::vector<u64>& out);

/// Exact divisibility test by a fixed divisor using one multiplication:
/// x is divisible by 2^k * m (m odd) iff rotr(x * m^-1 mod 2^64, k) <= (2^64-1)/(2^k m).
class DivisibilityTest {
 public:
  explicit DivisibilityTest(u64 divisor);

  bool divides(u64 x) const {
    const u64 y = x * inverse_;
    const u64 rotated = shift_ == 0 ? y : (y >> shift_) | (y << (64 - shift_));
    return rotated <= limit_;
  }

 private:
  u64 inverse_ = 1;
  u64 limit_ = 0;
  unsigned shift_ = 0;
};

}  // namespace estraus
