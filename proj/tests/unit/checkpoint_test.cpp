#include <doctest.h>

#include <sstream>
#include <stop_token>

#include "estraus/checkpoint.hpp"
#include "estraus/error.hpp"
#include "test_support.hpp"

using namespace estraus;
using estraus::testing::slurp;
using estraus::testing::spit;
using estraus::testing::temp_path;

namespace {

SweepOptions options(u64 max_n, const std::filesystem::path& ckpt, unsigned workers = 1) {
  SweepOptions o;
  o.max_n = max_n;
  o.grid = {100, max_n};
  o.workers = workers;
  o.shard_width = 500;
  o.checkpoint = ckpt;
  return o;
}

std::string render(const SweepResult& r) {
  std::ostringstream os;
  write_series_csv(os, r.series);
  write_records_csv(os, r.primes);
  return os.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

const char* kSmall =
    "ESTRAUS-CKPT v1\n"
    "method,divisor\n"
    "range,2,12\n"
    "p,f_ordered,typeI_ordered,typeII_ordered\n"
    "2,3,0,0\n"
    "3,12,0,0\n"
    "5,12,6,6\n"
    "7,36,27,9\n"
    "11,48,33,15\n"
    "end,2,12,5\n";

}  // namespace

TEST_CASE("written checkpoint has the documented layout") {
  const auto path = temp_path("layout.ckpt");
  SweepOptions o = options(11, path);
  o.grid = {11};
  o.shard_width = 10;
  sweep(o);
  CHECK(slurp(path) ==
        "ESTRAUS-CKPT v1\n"
        "method,divisor\n"
        "range,2,12\n"
        "p,f_ordered,typeI_ordered,typeII_ordered\n"
        "2,3,0,0\n"
        "3,12,0,0\n"
        "5,12,6,6\n"
        "7,36,27,9\n"
        "11,48,33,15\n"
        "end,2,12,5\n");
}

TEST_CASE("interrupt then resume equals an uninterrupted run") {
  const auto straight_path = temp_path("straight.ckpt");
  const SweepResult straight = sweep(options(6000, straight_path));

  const auto path = temp_path("interrupted.ckpt");
  std::stop_source stop;
  SweepOptions first = options(6000, path, 2);
  std::size_t done = 0;
  first.stop = stop.get_token();
  first.on_shard_done = [&](const ShardRange&) {
    if (++done == 6) stop.request_stop();
  };
  CHECK(kind_of([&] { sweep(first); }) == ErrorKind::Interrupted);

  const Checkpoint partial = resume(path);
  CHECK(partial.blocks.size() >= 6);
  CHECK(partial.blocks.size() < 12);

  std::size_t resumed_shards = 0;
  SweepOptions second = options(6000, path, 3);
  second.on_shard_done = [&](const ShardRange&) { ++resumed_shards; };
  const SweepResult resumed = sweep(second);
  CHECK(resumed_shards == 12 - partial.blocks.size());
  CHECK(render(resumed) == render(straight));

  // a fully covered checkpoint needs no work at all
  std::size_t again = 0;
  second.on_shard_done = [&](const ShardRange&) { ++again; };
  CHECK(render(sweep(second)) == render(straight));
  CHECK(again == 0);
}

TEST_CASE("round trip write -> read -> continue") {
  const auto path = temp_path("roundtrip.ckpt");
  spit(path, kSmall);
  const Checkpoint c = resume(path);
  REQUIRE(c.blocks.size() == 1);
  CHECK(c.method == Method::Divisor);
  const auto copy = temp_path("roundtrip-copy.ckpt");
  write_checkpoint(copy, c);
  CHECK(slurp(copy) == kSmall);

  SweepOptions o = options(1000, copy);
  CHECK(render(sweep(o)) == render(sweep(options(1000, temp_path("fresh.ckpt")))));
}

TEST_CASE("empty or missing checkpoint starts from scratch") {
  const auto missing = temp_path("missing.ckpt");
  CHECK(resume(missing).blocks.empty());
  const auto empty = temp_path("empty.ckpt");
  spit(empty, "");
  CHECK(resume(empty).blocks.empty());
  CHECK_FALSE(resume(empty).method.has_value());
  CHECK(render(sweep(options(1000, empty))) == render(sweep(options(1000, missing))));
}

TEST_CASE("unterminated trailing block is dropped") {
  const auto path = temp_path("truncated.ckpt");
  std::string text = kSmall;
  text += "range,12,20\np,f_ordered,typeI_ordered,typeII_ordered\n13,";
  spit(path, text);
  CHECK(resume(path).blocks.size() == 1);
}

TEST_CASE("corrupt checkpoints are rejected") {
  const auto path = temp_path("corrupt.ckpt");
  auto check = [&](const std::string& text, ErrorKind want) {
    spit(path, text);
    CHECK(kind_of([&] { resume(path); }) == want);
  };
  std::string overlap = kSmall;
  overlap += "range,10,14\np,f_ordered,typeI_ordered,typeII_ordered\n11,48,33,15\n13,"
             "24,18,6\nend,10,14,2\n";
  check(overlap, ErrorKind::CorruptCheckpoint);

  std::string version = kSmall;
  version.replace(0, 15, "ESTRAUS-CKPT v2");
  check(version, ErrorKind::CorruptCheckpoint);

  std::string missing_prime = kSmall;
  missing_prime.replace(missing_prime.find("3,12,0,0\n"), 9, "");
  missing_prime.replace(missing_prime.find("end,2,12,5"), 10, "end,2,12,4");
  check(missing_prime, ErrorKind::CorruptCheckpoint);

  std::string bad_count = kSmall;
  bad_count.replace(bad_count.find("end,2,12,5"), 10, "end,2,12,6");
  check(bad_count, ErrorKind::CorruptCheckpoint);

  std::string broken_record = kSmall;
  broken_record.replace(broken_record.find("7,36,27,9"), 9, "7,36,27,6");
  check(broken_record, ErrorKind::Invariant);

  check("ESTRAUS-CKPT v1\nmethod,fast\n", ErrorKind::CorruptCheckpoint);
}

TEST_CASE("method mismatch invalidates the checkpoint") {
  const auto path = temp_path("method.ckpt");
  spit(path, kSmall);
  SweepOptions o = options(1000, path);
  o.method = Method::Naive;
  CHECK(kind_of([&] { sweep(o); }) == ErrorKind::CorruptCheckpoint);
}

TEST_CASE("unwritable checkpoint is an I/O error") {
  SweepOptions o = options(1000, "/nonexistent-dir/x.ckpt");
  CHECK(kind_of([&] { sweep(o); }) == ErrorKind::Io);
}
