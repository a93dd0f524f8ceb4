#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "estraus/arith.hpp"

namespace estraus {

/// Largest n (exclusive) for which enumeration is guaranteed to stay inside
/// 128-bit intermediates.
inline constexpr u64 kMaxN = u64{1} << 31;

/// One solution of 4/n = 1/n1 + 1/n2 + 1/n3, stored with n1 <= n2 <= n3.
/// n3 can reach roughly n^4/16, hence the 128-bit fields.
struct UnitFractionTriple {
  u128 n1 = 0;
  u128 n2 = 0;
  u128 n3 = 0;

  friend auto operator<=>(const UnitFractionTriple&,
                          const UnitFractionTriple&) = default;
};

std::ostream& operator<<(std::ostream& os, const UnitFractionTriple& t);

/// Number of distinct orderings of the triple: 6, 3 or 1.
unsigned orderings(const UnitFractionTriple& t);

/// Exact check that t is a canonical solution for n. Throws Overflow only
/// if the triple is so large that the check itself cannot be carried out.
bool is_solution(u64 n, const UnitFractionTriple& t);

struct SolutionCount {
  u64 n = 0;
  u64 ordered = 0;    // f(n), ordered triples in N^3
  u64 unordered = 0;  // distinct multisets

  friend bool operator==(const SolutionCount&, const SolutionCount&) = default;
};

enum class Method { Naive, Divisor };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

/// Streams canonical solutions in lexicographic order. Returning false from
/// `visit` stops the search early.
void for_each_solution(u64 n, Method method,
                       const std::function<bool(const UnitFractionTriple&)>& visit);

std::vector<UnitFractionTriple> enumerate_solutions(u64 n,
                                                    Method method = Method::Divisor);

SolutionCount count_solutions(u64 n, Method method = Method::Divisor);

/// Early-exit existence test: stops at the first solution.
bool has_solution(u64 n);

/// First n in [lo, hi] without a solution, or nullopt when every n has one.
std::optional<u64> verify_conjecture_range(u64 lo, u64 hi);

enum class SolutionType { TypeI, TypeII };

std::string_view to_string(SolutionType type) noexcept;

/// Type I: exactly one denominator divisible by p. Type II: exactly two.
/// Requires p prime, p >= 5, and t a solution for p.
SolutionType classify_triple(u64 p, const UnitFractionTriple& t);

struct TypeSplit {
  u64 p = 0;
  u64 type_i_ordered = 0;
  u64 type_ii_ordered = 0;
  u64 f_i = 0;   // type_i_ordered / 3
  u64 f_ii = 0;  // type_ii_ordered / 3

  friend bool operator==(const TypeSplit&, const TypeSplit&) = default;
};

TypeSplit type_counts(u64 p, Method method = Method::Divisor);

/// Throws Domain unless p is a prime >= 5.
void require_classifiable_prime(u64 p);

}  // namespace estraus
