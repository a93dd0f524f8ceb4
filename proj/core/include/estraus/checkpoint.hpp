#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string_view>
#include <vector>

#include "estraus/enumerate.hpp"
#include "estraus/sums.hpp"

namespace estraus {

inline constexpr std::string_view kCheckpointVersion = "ESTRAUS-CKPT v1";
inline constexpr std::string_view kRecordHeader =
    "p,f_ordered,typeI_ordered,typeII_ordered";

struct CheckpointBlock {
  ShardRange range;
  std::vector<PerPrimeRecord> records;
};

/// Completed shards, in file order. `method` is empty for a fresh file.
struct Checkpoint {
  std::optional<Method> method;
  std::vector<CheckpointBlock> blocks;
};

/// Reads and validates a checkpoint. A missing or empty file yields an empty
/// checkpoint; a trailing block cut off before its "end" line is dropped.
/// Throws CorruptCheckpoint on malformed content or overlapping ranges and
/// Invariant on records that break the type partition.
Checkpoint resume(const std::filesystem::path& path);

/// Replaces the file with the given checkpoint (write to temp, rename).
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);

/// Appends blocks to an existing checkpoint file, flushing after each one.
class CheckpointWriter {
 public:
  explicit CheckpointWriter(const std::filesystem::path& path);

  void append(const CheckpointBlock& block);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace estraus
