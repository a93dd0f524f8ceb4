#include "estraus/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "estraus/error.hpp"
#include "estraus/primes.hpp"

namespace estraus {

namespace {

double checked(double value, const char* what) {
  if (!std::isfinite(value)) fail(ErrorKind::NonFinite, std::string("non-finite result in ") + what);
  return value;
}

double eval_node(const BoundExpr& e, double n) {
  using K = BoundExpr::Kind;
  auto arg = [&](std::size_t i) { return eval_node(e.children()[i], n); };
  switch (e.kind()) {
    case K::Variable: return n;
    case K::Number:
    case K::Constant: return e.value();
    case K::Add: return checked(arg(0) + arg(1), "+");
    case K::Sub: return checked(arg(0) - arg(1), "-");
    case K::Mul: return checked(arg(0) * arg(1), "*");
    case K::Div: {
      const double num = arg(0);
      const double den = arg(1);
      if (den == 0.0) fail(ErrorKind::NonFinite, "division by zero");
      return checked(num / den, "/");
    }
    case K::Pow: return checked(std::pow(arg(0), e.value()), "^");
    case K::Log: {
      const double x = arg(0);
      if (x <= 0.0) fail(ErrorKind::Domain, "log of nonpositive value");
      return std::log(x);
    }
    case K::LogLog: {
      const double x = arg(0);
      if (x <= 1.0) fail(ErrorKind::Domain, "loglog of value <= 1");
      return std::log(std::log(x));
    }
    case K::Exp: return checked(std::exp(arg(0)), "exp");
    case K::Sqrt: {
      const double x = arg(0);
      if (x < 0.0) fail(ErrorKind::Domain, "sqrt of negative value");
      return std::sqrt(x);
    }
  }
  fail(ErrorKind::Invariant, "malformed expression node");
}

constexpr std::string_view kNames[] = {"tao-upper", "tao-typeI", "jia", "paper-G"};

}  // namespace

double eval_bound(const BoundExpr& expr, u64 n) {
  if (n < 2) fail(ErrorKind::Domain, "bounds are evaluated for N >= 2");
  if (n < 16 && expr.contains(BoundExpr::Kind::LogLog)) {
    fail(ErrorKind::Domain, "expressions with loglog need N >= 16, got N=" + std::to_string(n));
  }
  return eval_node(expr, static_cast<double>(n));
}

std::vector<std::string_view> predefined_bound_names() {
  return {std::begin(kNames), std::end(kNames)};
}

BoundExpr predefined_bound(std::string_view name, const Constants& constants) {
  if (name == "tao-upper") return parse_bound("N*log(N)^2*loglog(N)");
  if (name == "tao-typeI") {
    Constants with_c = constants;
    with_c.try_emplace("c", 1.0);
    return parse_bound("N*exp(c*log(N)/loglog(N))", with_c);
  }
  if (name == "jia") return parse_bound("N*log(N)^5*loglog(N)^2");
  if (name == "paper-G") return parse_bound("N*log(N)^5*loglog(N)^2 - log(N)");
  fail(ErrorKind::UnknownName, "unknown bound name '" + std::string(name) + "'");
}

double pnt_ratio(u64 x) {
  const double xd = static_cast<double>(x);
  return static_cast<double>(prime_count(x)) * std::log(xd) / xd;
}

std::vector<ReportRow> residual_series(const SumSeries& sums, const BoundExpr& g) {
  std::vector<ReportRow> rows;
  double runmax = 0.0;
  for (const SumRow& in : sums.rows) {
    ReportRow row;
    row.n = in.n;
    row.s = in.s;
    row.s_i = in.s_i;
    try {
      row.g = eval_bound(g, in.n);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (grid N=" + std::to_string(in.n) + ")");
    }
    const double s_i = static_cast<double>(in.s_i);
    row.epsilon = s_i - row.g;
    runmax = std::max(runmax, row.epsilon);
    row.epsilon_runmax = runmax;
    row.chi = row.g + runmax;
    row.ratio_si_g = row.g == 0.0 ? std::numeric_limits<double>::quiet_NaN() : s_i / row.g;
    row.pnt_ratio = pnt_ratio(in.n);
    const double slack = 1e-12 * std::max({std::abs(row.g), s_i, 1.0});
    if (row.chi < s_i - slack) {
      fail(ErrorKind::Invariant, "chi < S_I at N=" + std::to_string(in.n));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<RatioRow> ratio_comparison(const SumSeries& sums, const BoundExpr& g) {
  std::vector<RatioRow> rows;
  for (const SumRow& in : sums.rows) {
    const double value = eval_bound(g, in.n);
    if (value == 0.0) {
      fail(ErrorKind::DivisionByZero, "G(N) = 0 at N=" + std::to_string(in.n));
    }
    rows.push_back({in.n, static_cast<double>(in.s_i) / value, pnt_ratio(in.n)});
  }
  return rows;
}

Congruence congruence_check(const BoundExpr& g, u64 n) {
  const double value = eval_bound(g, n);
  constexpr double kLimit = 4611686018427387904.0;  // 2^62
  if (!(std::abs(value) < kLimit)) {
    fail(ErrorKind::Magnitude, "|G(N)| >= 2^62 at N=" + std::to_string(n));
  }
  Congruence out;
  out.floor_value = static_cast<std::int64_t>(std::floor(value));
  const auto modulus = static_cast<std::int64_t>(n);
  out.remainder = static_cast<u64>(((out.floor_value % modulus) + modulus) % modulus);
  out.divisible = out.remainder == 0;
  return out;
}

}  // namespace estraus
