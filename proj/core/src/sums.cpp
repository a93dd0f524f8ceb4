#include "estraus/sums.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "estraus/checkpoint.hpp"
#include "estraus/csv.hpp"
#include "estraus/error.hpp"
#include "estraus/grid.hpp"
#include "estraus/primes.hpp"

namespace estraus {

namespace {

struct TypeTally {
  u64 ordered = 0;
  u64 type_i = 0;
  u64 type_ii = 0;
};

// For prime p and p/4 < a <= 3p/4 the residual 4/p - 1/a is already in
// lowest terms, r/q = (4a - p)/(pa), and the divisors of q^2 = p^2 a^2 not
// exceeding q are exactly x and p*x for x | a^2 (the latter with x <= a).
void tally_row(u64 p, u64 a, std::span<const u64> square_divisors, TypeTally& tally) {
  const u64 r = 4 * a - p;
  const u64 q = p * a;
  const u128 q2 = static_cast<u128>(q) * q;
  const u64 d_min = r * a > q ? r * a - q : 0;
  const DivisibilityTest by_r(r);

  auto record = [&](u64 d) {
    const u64 b = (d + q) / r;
    const u128 c = (q2 / d + q) / r;
    const UnitFractionTriple t{a, b, c};
    const unsigned k = orderings(t);
    tally.ordered += k;
    const int divisible = (b % p == 0) + (c % p == 0);
    if (divisible == 1) {
      tally.type_i += k;
    } else if (divisible == 2) {
      tally.type_ii += k;
    } else {
      fail(ErrorKind::Invariant, "unclassifiable solution for p=" + std::to_string(p));
    }
  };

  const auto first = std::lower_bound(square_divisors.begin(), square_divisors.end(), d_min);
  for (auto it = first; it != square_divisors.end(); ++it) {
    if (by_r.divides(*it + q)) record(*it);
  }
  for (const u64 x : square_divisors) {
    if (x > a) break;
    const u64 d = p * x;
    if (d >= d_min && by_r.divides(d + q)) record(d);
  }
}

std::vector<PerPrimeRecord> batched_divisor_counts(std::span<const u64> primes) {
  std::vector<PerPrimeRecord> out;
  if (primes.empty()) return out;
  std::vector<TypeTally> tallies(primes.size());
  const u64 a_lo = primes.front() / 4 + 1;
  const u64 a_hi = 3 * primes.back() / 4;
  std::vector<u64> divs;
  for (u64 a = a_lo; a <= a_hi; ++a) {
    // p/4 < a <= 3p/4  <=>  ceil(4a/3) <= p < 4a
    const auto lo = std::lower_bound(primes.begin(), primes.end(), (4 * a + 2) / 3);
    const auto hi = std::lower_bound(lo, primes.end(), 4 * a);
    if (lo == hi) continue;
    const SmallFactorization fa = factorize_small(a);
    square_divisors_upto(fa.view(), a * a, divs);
    std::sort(divs.begin(), divs.end());
    for (auto it = lo; it != hi; ++it) {
      tally_row(*it, a, divs, tallies[static_cast<std::size_t>(it - primes.begin())]);
    }
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    out.push_back({primes[i], tallies[i].ordered, tallies[i].type_i, tallies[i].type_ii});
  }
  return out;
}

}  // namespace

void validate_record(const PerPrimeRecord& record) {
  const std::string where = "record p=" + std::to_string(record.p);
  if (!record.classified()) {
    if (record.type_i_ordered != 0 || record.type_ii_ordered != 0) {
      fail(ErrorKind::Invariant, where + ": type counts must be 0 below 5");
    }
    return;
  }
  if (record.type_i_ordered + record.type_ii_ordered != record.f_ordered) {
    fail(ErrorKind::Invariant, where + ": type counts do not sum to f(p)");
  }
  if (record.type_i_ordered % 3 != 0 || record.type_ii_ordered % 3 != 0) {
    fail(ErrorKind::Invariant, where + ": type counts not divisible by 3");
  }
}

std::vector<PerPrimeRecord> count_prime_block(u64 lo, u64 hi, Method method) {
  const PrimeRange range = primes_in_range(lo, hi);
  std::vector<PerPrimeRecord> out;
  auto large = range.primes.begin();
  for (; large != range.primes.end() && *large < 5; ++large) {
    out.push_back({*large, count_solutions(*large, method).ordered, 0, 0});
  }
  const std::span<const u64> rest(large, range.primes.end());
  if (method == Method::Divisor) {
    if (!rest.empty() && rest.back() >= kMaxN) {
      fail(ErrorKind::Overflow, "primes must be < 2^31");
    }
    const auto counted = batched_divisor_counts(rest);
    out.insert(out.end(), counted.begin(), counted.end());
  } else {
    for (const u64 p : rest) {
      const TypeSplit split = type_counts(p, method);
      out.push_back({p, split.type_i_ordered + split.type_ii_ordered,
                     split.type_i_ordered, split.type_ii_ordered});
    }
  }
  for (const auto& record : out) validate_record(record);
  return out;
}

SumSeries accumulate(std::span<const PerPrimeRecord> records, std::span<const u64> grid) {
  SumSeries series;
  SumRow running;
  std::size_t inclusive = 0;  // records with p <= N consumed into s
  std::size_t strict = 0;     // records with p < N consumed into s_i, s_ii
  for (const u64 n : grid) {
    while (inclusive < records.size() && records[inclusive].p <= n) {
      running.s += records[inclusive].f_ordered;
      ++inclusive;
    }
    while (strict < records.size() && records[strict].p < n) {
      running.s_i += records[strict].type_i_ordered / 3;
      running.s_ii += records[strict].type_ii_ordered / 3;
      ++strict;
    }
    running.n = n;
    series.rows.push_back(running);
  }
  return series;
}

namespace {

void validate_options(const SweepOptions& options) {
  if (options.max_n < 2) fail(ErrorKind::Domain, "max N must be >= 2");
  if (options.max_n >= kMaxN) fail(ErrorKind::Overflow, "max N must be < 2^31");
  if (options.workers == 0) fail(ErrorKind::Domain, "workers must be positive");
  if (options.shard_width == 0) fail(ErrorKind::Domain, "shard width must be positive");
  for (std::size_t i = 0; i < options.grid.size(); ++i) {
    const u64 n = options.grid[i];
    if (n < 2 || n > options.max_n) {
      fail(ErrorKind::Domain, "grid value " + std::to_string(n) + " outside [2, max N]");
    }
    if (i > 0 && n <= options.grid[i - 1]) {
      fail(ErrorKind::Domain, "grid must be strictly increasing");
    }
  }
}

// Shards are aligned to 2 + k * width and clipped to the uncovered parts
// of [2, end).
std::vector<ShardRange> plan_shards(u64 end, u64 width,
                                    const std::vector<CheckpointBlock>& done) {
  std::vector<ShardRange> covered;
  for (const auto& block : done) covered.push_back(block.range);
  std::sort(covered.begin(), covered.end(),
            [](const ShardRange& x, const ShardRange& y) { return x.lo < y.lo; });
  std::vector<ShardRange> plan;
  std::size_t next = 0;
  for (u64 lo = 2; lo < end;) {
    while (next < covered.size() && covered[next].hi <= lo) ++next;
    if (next < covered.size() && covered[next].lo <= lo) {
      lo = covered[next].hi;
      continue;
    }
    u64 hi = std::min(end, 2 + ((lo - 2) / width + 1) * width);
    if (next < covered.size()) hi = std::min(hi, covered[next].lo);
    plan.push_back({lo, hi});
    lo = hi;
  }
  return plan;
}

}  // namespace

SweepResult sweep(const SweepOptions& options) {
  validate_options(options);
  const u64 end = options.max_n + 1;

  Checkpoint state;
  std::optional<CheckpointWriter> writer;
  if (options.checkpoint) {
    state = resume(*options.checkpoint);
    if (state.method && *state.method != options.method) {
      fail(ErrorKind::CorruptCheckpoint,
           "checkpoint was written with method " + std::string(to_string(*state.method)));
    }
    state.method = options.method;
    write_checkpoint(*options.checkpoint, state);
    writer.emplace(*options.checkpoint);
  }

  const std::vector<ShardRange> plan = plan_shards(end, options.shard_width, state.blocks);

  // Workers claim shards from a shared cursor; the calling thread is the
  // single aggregator and the only writer of the checkpoint.
  std::vector<std::optional<std::vector<PerPrimeRecord>>> results(plan.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> abort{false};
  std::mutex mutex;
  std::condition_variable ready;
  std::vector<std::size_t> finished;
  std::exception_ptr failure;
  unsigned running = 0;

  auto work = [&] {
    while (!abort.load() && !options.stop.stop_requested()) {
      const std::size_t index = cursor.fetch_add(1);
      if (index >= plan.size()) break;
      try {
        auto records = count_prime_block(plan[index].lo, plan[index].hi, options.method);
        std::lock_guard lock(mutex);
        results[index] = std::move(records);
        finished.push_back(index);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        abort = true;
      }
      ready.notify_one();
    }
    std::lock_guard lock(mutex);
    --running;
    ready.notify_one();
  };

  const unsigned pool = static_cast<unsigned>(
      std::min<std::size_t>(options.workers, std::max<std::size_t>(plan.size(), 1)));
  std::vector<std::jthread> threads;
  running = pool;
  for (unsigned i = 0; i < pool; ++i) threads.emplace_back(work);

  std::size_t recorded = 0;
  std::unique_lock lock(mutex);
  while (true) {
    ready.wait(lock, [&] { return !finished.empty() || running == 0; });
    std::vector<std::size_t> batch;
    batch.swap(finished);
    const bool done = running == 0;
    lock.unlock();
    for (const std::size_t index : batch) {
      ++recorded;
      if (writer && !abort.load()) writer->append({plan[index], *results[index]});
      if (options.on_shard_done) options.on_shard_done(plan[index]);
    }
    lock.lock();
    if (done && finished.empty()) break;
  }
  lock.unlock();
  threads.clear();

  if (failure) std::rethrow_exception(failure);
  if (recorded < plan.size()) {
    fail(ErrorKind::Interrupted, "sweep interrupted after " + std::to_string(recorded) +
                                     " of " + std::to_string(plan.size()) + " shards");
  }

  SweepResult result;
  for (const auto& block : state.blocks) {
    for (const auto& record : block.records) {
      if (record.p <= options.max_n) result.primes.push_back(record);
    }
  }
  for (auto& records : results) {
    result.primes.insert(result.primes.end(), records->begin(), records->end());
  }
  std::sort(result.primes.begin(), result.primes.end(),
            [](const PerPrimeRecord& x, const PerPrimeRecord& y) { return x.p < y.p; });
  result.series = accumulate(result.primes, options.grid);
  return result;
}

void write_records_csv(std::ostream& os, std::span<const PerPrimeRecord> records) {
  csv::write_row(os, {"p", "f_ordered", "typeI_ordered", "typeII_ordered", "classified"});
  for (const auto& r : records) {
    csv::write_row(os, {std::to_string(r.p), std::to_string(r.f_ordered),
                        std::to_string(r.type_i_ordered), std::to_string(r.type_ii_ordered),
                        r.classified() ? "1" : "0"});
  }
}

void write_series_csv(std::ostream& os, const SumSeries& series) {
  csv::write_row(os, {"N", "S", "S_I", "S_II"});
  for (const auto& row : series.rows) {
    csv::write_row(os, {std::to_string(row.n), std::to_string(row.s),
                        std::to_string(row.s_i), std::to_string(row.s_ii)});
  }
}

SumSeries read_series_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || csv::split_row(line) != std::vector<std::string>{"N", "S", "S_I", "S_II"}) {
    fail(ErrorKind::Domain, "series CSV must start with header N,S,S_I,S_II");
  }
  SumSeries series;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = csv::split_row(line);
    if (fields.size() != 4) {
      fail(ErrorKind::Domain, "series CSV line " + std::to_string(line_no) + ": expected 4 fields");
    }
    SumRow row{parse_integer(fields[0]), parse_integer(fields[1]), parse_integer(fields[2]),
               parse_integer(fields[3])};
    if (!series.rows.empty()) {
      const SumRow& prev = series.rows.back();
      if (row.n <= prev.n || row.s < prev.s || row.s_i < prev.s_i || row.s_ii < prev.s_ii) {
        fail(ErrorKind::Domain,
             "series CSV line " + std::to_string(line_no) + ": series must be increasing in N and nondecreasing");
      }
    }
    series.rows.push_back(row);
  }
  return series;
}

}  // namespace estraus
