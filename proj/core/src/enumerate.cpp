#include "estraus/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "estraus/error.hpp"

namespace estraus {

namespace {

void require_n(u64 n) {
  if (n < 2) fail(ErrorKind::Domain, "n must be >= 2, got " + std::to_string(n));
  if (n >= kMaxN) {
    fail(ErrorKind::Overflow,
         "n must be < 2^31 to stay within 128-bit arithmetic, got " + std::to_string(n));
  }
}

// Smallest n1 with 1/n1 < 4/n, and largest with 3/n1 >= 4/n.
u64 first_n1(u64 n) { return n / 4 + 1; }
u64 last_n1(u64 n) { return 3 * n / 4; }

// Iterates n2 over the whole residual window and tests n3 for integrality.
// Works on the unreduced residual (4 n1 - n) / (n n1).
template <typename Int>
bool naive_row(u64 n1, Int r, Int q,
               const std::function<bool(const UnitFractionTriple&)>& visit) {
  const Int lo = std::max<Int>(n1, q / r + 1);
  const Int hi = 2 * q / r;
  for (Int b = lo; b <= hi; ++b) {
    const Int den = r * b - q;
    const Int num = q * b;
    if (num % den != 0) continue;
    if (!visit({n1, b, num / den})) return false;
  }
  return true;
}

bool naive_search(u64 n, const std::function<bool(const UnitFractionTriple&)>& visit) {
  for (u64 a = first_n1(n); a <= last_n1(n); ++a) {
    const u64 r = 4 * a - n;
    const u64 q = n * a;
    // q * n2 <= 2 q^2 / r; stay in 64 bits while that is safe
    const bool fits64 = q < (u64{1} << 31);
    const bool keep_going = fits64 ? naive_row<u64>(a, r, q, visit)
                                   : naive_row<u128>(a, r, q, visit);
    if (!keep_going) return false;
  }
  return true;
}

// For fixed n1 the residual reduces to r/q; 1/n2 + 1/n3 = r/q holds iff
// (r n2 - q)(r n3 - q) = q^2, so each divisor d <= q of q^2 with
// d = -q (mod r) yields n2 = (d + q)/r, n3 = (q^2/d + q)/r.
struct ResidualRow {
  u64 r = 0;
  u64 q = 0;
  u64 d_min = 0;  // n2 >= n1 means d >= r n1 - q
  SmallFactorization fq;
};

ResidualRow residual_row(u64 n, const SmallFactorization& fn, u64 a) {
  const u64 num = 4 * a - n;
  const u64 den = n * a;
  const u64 g = std::gcd(num, den);
  ResidualRow row;
  row.r = num / g;
  row.q = den / g;
  row.d_min = row.r * a > row.q ? row.r * a - row.q : 0;
  row.fq = combine(fn, factorize_small(a), g);
  return row;
}

bool divisor_search(u64 n, const std::function<bool(const UnitFractionTriple&)>& visit) {
  const SmallFactorization fn = factorize_small(n);
  std::vector<u64> divs;
  std::vector<std::pair<u64, u128>> hits;
  for (u64 a = first_n1(n); a <= last_n1(n); ++a) {
    const ResidualRow row = residual_row(n, fn, a);
    const DivisibilityTest by_r(row.r);
    const u128 q2 = static_cast<u128>(row.q) * row.q;

    square_divisors_upto(row.fq.view(), row.q, divs);
    hits.clear();
    for (const u64 d : divs) {
      const u64 shifted = d + row.q;
      if (d < row.d_min || !by_r.divides(shifted)) continue;
      hits.emplace_back(shifted / row.r, q2 / d + row.q);
    }
    std::sort(hits.begin(), hits.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [b, c_num] : hits) {
      if (c_num % row.r != 0) {
        fail(ErrorKind::Invariant,
             "divisor pair congruence mismatch at n=" + std::to_string(n));
      }
      if (!visit({a, b, c_num / row.r})) return false;
    }
  }
  return true;
}

bool divisor_exists(u64 n) {
  const SmallFactorization fn = factorize_small(n);
  std::vector<u64> divs;
  for (u64 a = first_n1(n); a <= last_n1(n); ++a) {
    const ResidualRow row = residual_row(n, fn, a);
    const DivisibilityTest by_r(row.r);
    square_divisors_upto(row.fq.view(), row.q, divs);
    for (const u64 d : divs) {
      if (d >= row.d_min && by_r.divides(d + row.q)) return true;
    }
  }
  return false;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const UnitFractionTriple& t) {
  return os << '(' << to_string(t.n1) << ',' << to_string(t.n2) << ','
            << to_string(t.n3) << ')';
}

unsigned orderings(const UnitFractionTriple& t) {
  if (t.n1 == t.n2 && t.n2 == t.n3) return 1;
  if (t.n1 == t.n2 || t.n2 == t.n3 || t.n1 == t.n3) return 3;
  return 6;
}

bool is_solution(u64 n, const UnitFractionTriple& t) {
  if (n == 0 || t.n1 == 0 || t.n1 > t.n2 || t.n2 > t.n3) return false;
  // 4/n - 1/n1 = (4 n1 - n) / (n n1); subtracting 1/n2 must leave exactly
  // 1/n3, i.e. n n1 n2 == n3 ((4 n1 - n) n2 - n n1).
  const u128 n_w = n;
  u128 four_n1;
  if (__builtin_mul_overflow(t.n1, u128{4}, &four_n1)) {
    fail(ErrorKind::Overflow, "triple too large to verify");
  }
  if (four_n1 <= n_w) return false;
  u128 lhs, left_term, right_term, rhs;
  if (__builtin_mul_overflow(n_w, t.n1, &lhs) ||
      __builtin_mul_overflow(lhs, t.n2, &lhs) ||
      __builtin_mul_overflow(four_n1 - n_w, t.n2, &left_term) ||
      __builtin_mul_overflow(n_w, t.n1, &right_term)) {
    fail(ErrorKind::Overflow, "triple too large to verify");
  }
  if (left_term <= right_term) return false;
  if (__builtin_mul_overflow(t.n3, left_term - right_term, &rhs)) return false;
  return lhs == rhs;
}

std::string_view to_string(Method method) noexcept {
  return method == Method::Naive ? "naive" : "divisor";
}

Method parse_method(std::string_view text) {
  if (text == "naive") return Method::Naive;
  if (text == "divisor") return Method::Divisor;
  fail(ErrorKind::Domain, "unknown method '" + std::string(text) + "'");
}

void for_each_solution(u64 n, Method method,
                       const std::function<bool(const UnitFractionTriple&)>& visit) {
  require_n(n);
  if (method == Method::Naive) {
    naive_search(n, visit);
  } else {
    divisor_search(n, visit);
  }
}

std::vector<UnitFractionTriple> enumerate_solutions(u64 n, Method method) {
  std::vector<UnitFractionTriple> out;
  for_each_solution(n, method, [&](const UnitFractionTriple& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

SolutionCount count_solutions(u64 n, Method method) {
  SolutionCount out{n, 0, 0};
  for_each_solution(n, method, [&](const UnitFractionTriple& t) {
    out.ordered += orderings(t);
    ++out.unordered;
    return true;
  });
  return out;
}

bool has_solution(u64 n) {
  require_n(n);
  return divisor_exists(n);
}

std::optional<u64> verify_conjecture_range(u64 lo, u64 hi) {
  if (lo < 2 || lo > hi) {
    fail(ErrorKind::Domain, "malformed range " + std::to_string(lo) + ".." +
                                std::to_string(hi));
  }
  if (hi >= kMaxN) fail(ErrorKind::Overflow, "range upper end must be < 2^31");
  for (u64 n = lo; n <= hi; ++n) {
    if (!has_solution(n)) return n;
  }
  return std::nullopt;
}

std::string_view to_string(SolutionType type) noexcept {
  return type == SolutionType::TypeI ? "I" : "II";
}

void require_classifiable_prime(u64 p) {
  if (p < 5 || !is_prime(p)) {
    fail(ErrorKind::Domain,
         "type classification needs a prime >= 5, got " + std::to_string(p));
  }
}

SolutionType classify_triple(u64 p, const UnitFractionTriple& t) {
  require_classifiable_prime(p);
  if (!is_solution(p, t)) {
    std::ostringstream os;
    os << t << " is not a solution for n=" << p;
    fail(ErrorKind::Domain, os.str());
  }
  const int divisible = (t.n1 % p == 0) + (t.n2 % p == 0) + (t.n3 % p == 0);
  if (divisible == 1) return SolutionType::TypeI;
  if (divisible == 2) return SolutionType::TypeII;
  fail(ErrorKind::Invariant, "solution for prime " + std::to_string(p) + " has " +
                                 std::to_string(divisible) + " p-divisible denominators");
}

TypeSplit type_counts(u64 p, Method method) {
  require_classifiable_prime(p);
  TypeSplit out;
  out.p = p;
  for_each_solution(p, method, [&](const UnitFractionTriple& t) {
    const unsigned k = orderings(t);
    if (classify_triple(p, t) == SolutionType::TypeI) {
      out.type_i_ordered += k;
    } else {
      out.type_ii_ordered += k;
    }
    return true;
  });
  if (out.type_i_ordered % 3 != 0 || out.type_ii_ordered % 3 != 0) {
    fail(ErrorKind::Invariant, "type counts for p=" + std::to_string(p) +
                                   " not divisible by 3");
  }
  out.f_i = out.type_i_ordered / 3;
  out.f_ii = out.type_ii_ordered / 3;
  return out;
}

}  // namespace estraus
