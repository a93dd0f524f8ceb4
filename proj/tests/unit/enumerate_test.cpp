#include <doctest.h>

#include <sstream>

#include "estraus/enumerate.hpp"
#include "estraus/error.hpp"

using namespace estraus;

namespace {

using Triples = std::vector<UnitFractionTriple>;

// Test oracle: scan n1 <= n2 over a box known to contain every solution
// (n1 <= n, n2 <= 2 n^2) and solve for n3 by cross-multiplication, with no
// use of the residual windows the library relies on.
Triples brute_force(u64 n) {
  Triples out;
  for (u128 a = 1; a <= n; ++a) {
    for (u128 b = a; b <= 2 * u128{n} * n; ++b) {
      // 1/c = 4/n - 1/a - 1/b = (4ab - nb - na) / (nab)
      const u128 num_pos = 4 * a * b;
      const u128 num_neg = n * b + n * a;
      if (num_pos <= num_neg) continue;
      const u128 num = num_pos - num_neg;
      const u128 den = n * a * b;
      if (den % num != 0) continue;
      const u128 c = den / num;
      if (c >= b) out.push_back({a, b, c});
    }
  }
  return out;
}

std::string show(const Triples& ts) {
  std::ostringstream os;
  for (const auto& t : ts) os << t;
  return os.str();
}

}  // namespace

TEST_CASE("frozen enumerations from the brute-force oracle") {
  const Triples two{{1, 2, 2}};
  const Triples three{{1, 4, 12}, {1, 6, 6}, {2, 2, 3}};
  const Triples seven{{2, 15, 210}, {2, 16, 112}, {2, 18, 63}, {2, 21, 42},
                      {2, 28, 28},  {3, 6, 14},   {4, 4, 14}};
  CHECK(brute_force(2) == two);
  CHECK(brute_force(3) == three);
  CHECK(brute_force(7) == seven);
  for (const Method m : {Method::Naive, Method::Divisor}) {
    CAPTURE(to_string(m));
    CHECK(enumerate_solutions(2, m) == two);
    CHECK(enumerate_solutions(3, m) == three);
    CHECK(enumerate_solutions(7, m) == seven);
  }
}

TEST_CASE("both methods agree with the oracle for small n") {
  for (u64 n = 2; n <= 40; ++n) {
    CAPTURE(n);
    const Triples want = brute_force(n);
    const Triples naive = enumerate_solutions(n, Method::Naive);
    const Triples divisor = enumerate_solutions(n, Method::Divisor);
    REQUIRE(show(naive) == show(want));
    REQUIRE(show(divisor) == show(want));
  }
}

TEST_CASE("counts") {
  CHECK(count_solutions(2) == SolutionCount{2, 3, 1});
  CHECK(count_solutions(3) == SolutionCount{3, 12, 3});
  CHECK(count_solutions(4) == SolutionCount{4, 10, 3});
  CHECK(count_solutions(5) == SolutionCount{5, 12, 2});
  CHECK(count_solutions(7) == SolutionCount{7, 36, 7});
  CHECK(enumerate_solutions(4) == Triples{{2, 3, 6}, {2, 4, 4}, {3, 3, 3}});
}

TEST_CASE("count invariants and solution identity") {
  for (u64 n = 2; n <= 400; ++n) {
    const Triples ts = enumerate_solutions(n);
    const SolutionCount c = count_solutions(n);
    REQUIRE(c.unordered == ts.size());
    REQUIRE(c.unordered <= c.ordered);
    REQUIRE(c.ordered <= 6 * c.unordered);
    u64 ordered = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto& t = ts[i];
      REQUIRE(is_solution(n, t));
      REQUIRE(t.n1 > n / 4);  // 1/n1 < 4/n
      REQUIRE(t.n1 <= 3 * n / 4);  // 3/n1 >= 4/n
      if (i > 0) REQUIRE(ts[i - 1] < t);
      ordered += orderings(t);
    }
    REQUIRE(ordered == c.ordered);
  }
}

TEST_CASE("orderings") {
  CHECK(orderings({3, 3, 3}) == 1);
  CHECK(orderings({2, 4, 4}) == 3);
  CHECK(orderings({2, 2, 3}) == 3);
  CHECK(orderings({2, 3, 6}) == 6);
}

TEST_CASE("is_solution") {
  CHECK(is_solution(5, {2, 4, 20}));
  CHECK(is_solution(5, {2, 5, 10}));
  CHECK_FALSE(is_solution(5, {2, 4, 21}));
  CHECK_FALSE(is_solution(5, {4, 2, 20}));  // not canonical
  CHECK_FALSE(is_solution(5, {0, 4, 20}));
}

TEST_CASE("domain and overflow errors") {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Invariant;
  };
  CHECK(kind_of([] { count_solutions(1); }) == ErrorKind::Domain);
  CHECK(kind_of([] { count_solutions(0); }) == ErrorKind::Domain);
  CHECK(kind_of([] { enumerate_solutions(kMaxN); }) == ErrorKind::Overflow);
  CHECK(kind_of([] { verify_conjecture_range(5, 4); }) == ErrorKind::Domain);
  CHECK(kind_of([] { verify_conjecture_range(1, 4); }) == ErrorKind::Domain);
  CHECK(kind_of([] { parse_method("fast"); }) == ErrorKind::Domain);
}

TEST_CASE("large n stays exact") {
  // near the top of the supported range the first row already has solutions
  const u64 n = kMaxN - 1;
  CHECK(has_solution(n));
  u64 seen = 0;
  for_each_solution(n, Method::Divisor, [&](const UnitFractionTriple& t) {
    REQUIRE(is_solution(n, t));
    return ++seen < 50;
  });
  CHECK(seen == 50);
}

TEST_CASE("verify_conjecture_range") {
  CHECK(verify_conjecture_range(2, 1000) == std::nullopt);
  CHECK(verify_conjecture_range(2, 2) == std::nullopt);
  for (u64 n = 2; n <= 2000; ++n) {
    REQUIRE(has_solution(n) == (count_solutions(n).ordered > 0));
  }
}

TEST_CASE("classify_triple") {
  CHECK(classify_triple(5, {2, 4, 20}) == SolutionType::TypeI);
  CHECK(classify_triple(5, {2, 5, 10}) == SolutionType::TypeII);
  CHECK(classify_triple(7, {2, 28, 28}) == SolutionType::TypeII);
  CHECK_THROWS_AS(classify_triple(3, {1, 4, 12}), Error);
  CHECK_THROWS_AS(classify_triple(9, {3, 4, 36}), Error);
  CHECK_THROWS_AS(classify_triple(5, {2, 4, 21}), Error);
}

TEST_CASE("type_counts") {
  CHECK(type_counts(5) == TypeSplit{5, 6, 6, 2, 2});
  CHECK(type_counts(7) == TypeSplit{7, 27, 9, 9, 3});
  CHECK(type_counts(7, Method::Naive) == type_counts(7));
  for (u64 p = 5; p <= 600; ++p) {
    if (!is_prime(p)) continue;
    const TypeSplit s = type_counts(p);
    const SolutionCount c = count_solutions(p);
    REQUIRE(s.type_i_ordered + s.type_ii_ordered == c.ordered);
    REQUIRE(c.ordered == 3 * s.f_i + 3 * s.f_ii);
  }
  CHECK_THROWS_AS(type_counts(2), Error);
  CHECK_THROWS_AS(type_counts(15), Error);
}
