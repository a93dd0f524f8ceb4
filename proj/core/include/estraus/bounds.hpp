#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "estraus/bound_expr.hpp"
#include "estraus/sums.hpp"

namespace estraus {

/// Evaluates G at N in double precision. Requires N >= 2, and N >= 16 when
/// the tree contains loglog. Throws Domain for log/sqrt outside their
/// domain and NonFinite for overflow, NaN or division by zero.
double eval_bound(const BoundExpr& expr, u64 n);

/// tao-upper:  N*log(N)^2*loglog(N)
/// tao-typeI:  N*exp(c*log(N)/loglog(N))   (c defaults to 1)
/// jia:        N*log(N)^5*loglog(N)^2
/// paper-G:    N*log(N)^5*loglog(N)^2 - log(N)
BoundExpr predefined_bound(std::string_view name, const Constants& constants = {});

std::vector<std::string_view> predefined_bound_names();

struct ReportRow {
  u64 n = 0;
  u64 s = 0;
  u64 s_i = 0;
  double g = 0.0;
  double epsilon = 0.0;         // S_I(N) - G(N)
  double epsilon_runmax = 0.0;  // max(0, running max of epsilon)
  double chi = 0.0;             // G(N) + epsilon_runmax
  double ratio_si_g = 0.0;      // NaN when G(N) = 0
  double pnt_ratio = 0.0;
};

/// Empirical residual of S_I against G. epsilon_runmax is the smallest
/// nonnegative nondecreasing eps(N) with S_I(N) - G(N) <= eps(N) on the grid,
/// so chi >= S_I holds at every row; that is asserted (to within 1e-12
/// relative rounding) and reported as Invariant if broken.
std::vector<ReportRow> residual_series(const SumSeries& sums, const BoundExpr& g);

/// pi(X) log X / X.
double pnt_ratio(u64 x);

struct RatioRow {
  u64 n = 0;
  double si_over_g = 0.0;
  double pnt_ratio = 0.0;
};

/// Throws DivisionByZero if G vanishes on the grid.
std::vector<RatioRow> ratio_comparison(const SumSeries& sums, const BoundExpr& g);

/// floor(G(N)) mod N. The congruence is taken on the floor of the evaluated
/// real value; |G(N)| must stay below 2^62.
struct Congruence {
  std::int64_t floor_value = 0;
  u64 remainder = 0;
  bool divisible = false;
};

Congruence congruence_check(const BoundExpr& g, u64 n);

}  // namespace estraus
