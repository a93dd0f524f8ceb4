#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stop_token>
#include <vector>

#include "estraus/arith.hpp"
#include "estraus/enumerate.hpp"

namespace estraus {

/// Per-prime solution counts. Type counts are only meaningful for p >= 5;
/// they are zero for 2 and 3.
struct PerPrimeRecord {
  u64 p = 0;
  u64 f_ordered = 0;
  u64 type_i_ordered = 0;
  u64 type_ii_ordered = 0;

  bool classified() const { return p >= 5; }

  friend bool operator==(const PerPrimeRecord&, const PerPrimeRecord&) = default;
};

/// Throws Invariant if the record breaks the type partition.
void validate_record(const PerPrimeRecord& record);

/// Counts for every prime in [lo, hi). The divisor method shares the
/// divisor lists of n1^2 across all primes of the block.
std::vector<PerPrimeRecord> count_prime_block(u64 lo, u64 hi,
                                              Method method = Method::Divisor);

/// S(N) sums f over p <= N; S_I and S_II sum f_I, f_II over 5 <= p < N.
struct SumRow {
  u64 n = 0;
  u64 s = 0;
  u64 s_i = 0;
  u64 s_ii = 0;

  friend bool operator==(const SumRow&, const SumRow&) = default;
};

struct SumSeries {
  std::vector<SumRow> rows;

  friend bool operator==(const SumSeries&, const SumSeries&) = default;
};

/// Accumulates sorted records over an increasing grid.
SumSeries accumulate(std::span<const PerPrimeRecord> records,
                     std::span<const u64> grid);

/// A contiguous integer range [lo, hi) whose primes were processed.
struct ShardRange {
  u64 lo = 0;
  u64 hi = 0;
};

struct SweepOptions {
  u64 max_n = 2;
  std::vector<u64> grid;
  unsigned workers = 1;
  Method method = Method::Divisor;
  std::optional<std::filesystem::path> checkpoint;
  u64 shard_width = 10'000;
  /// Workers stop picking up shards once stop is requested; the sweep then
  /// throws Interrupted after flushing finished shards to the checkpoint.
  std::stop_token stop;
  /// Called on the aggregating thread after each shard is recorded.
  std::function<void(const ShardRange&)> on_shard_done;
};

struct SweepResult {
  std::vector<PerPrimeRecord> primes;  // every prime <= max_n, increasing
  SumSeries series;
};

/// Output is independent of worker count and of any interruption/resume
/// history recorded in the checkpoint.
SweepResult sweep(const SweepOptions& options);

void write_records_csv(std::ostream& os, std::span<const PerPrimeRecord> records);
void write_series_csv(std::ostream& os, const SumSeries& series);
SumSeries read_series_csv(std::istream& is);

}  // namespace estraus
