#include "estraus/checkpoint.hpp"

#include <algorithm>
#include <string>
#include <system_error>

#include "estraus/csv.hpp"
#include "estraus/error.hpp"
#include "estraus/grid.hpp"
#include "estraus/primes.hpp"

namespace estraus {

namespace {

[[noreturn]] void corrupt(const std::filesystem::path& path, std::size_t line,
                          const std::string& message) {
  fail(ErrorKind::CorruptCheckpoint,
       path.string() + ":" + std::to_string(line) + ": " + message);
}

void write_block(std::ostream& os, const CheckpointBlock& block) {
  const std::string lo = std::to_string(block.range.lo);
  const std::string hi = std::to_string(block.range.hi);
  csv::write_row(os, {"range", lo, hi});
  os << kRecordHeader << '\n';
  for (const auto& r : block.records) {
    csv::write_row(os, {std::to_string(r.p), std::to_string(r.f_ordered),
                        std::to_string(r.type_i_ordered), std::to_string(r.type_ii_ordered)});
  }
  csv::write_row(os, {"end", lo, hi, std::to_string(block.records.size())});
}

u64 field(const std::filesystem::path& path, std::size_t line, const std::string& text) {
  try {
    return parse_integer(text);
  } catch (const Error&) {
    corrupt(path, line, "bad integer '" + text + "'");
  }
}

}  // namespace

Checkpoint resume(const std::filesystem::path& path) {
  Checkpoint out;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return out;
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open checkpoint " + path.string());

  std::vector<std::string> lines;
  bool torn = false;  // last line lacks its newline: a write was cut short
  for (std::string line; std::getline(in, line);) {
    torn = in.eof();
    lines.push_back(line);
  }
  if (torn) lines.pop_back();
  if (lines.empty()) return out;

  std::size_t i = 0;
  if (lines[i] != kCheckpointVersion) corrupt(path, 1, "unsupported version line");
  ++i;
  if (i >= lines.size()) return out;
  {
    const auto fields = csv::split_row(lines[i]);
    if (fields.size() != 2 || fields[0] != "method") corrupt(path, i + 1, "expected method line");
    try {
      out.method = parse_method(fields[1]);
    } catch (const Error&) {
      corrupt(path, i + 1, "unknown method '" + fields[1] + "'");
    }
    ++i;
  }

  while (i < lines.size()) {
    const std::size_t block_line = i + 1;
    const auto head = csv::split_row(lines[i]);
    if (head.size() != 3 || head[0] != "range") corrupt(path, block_line, "expected range line");
    CheckpointBlock block;
    block.range = {field(path, block_line, head[1]), field(path, block_line, head[2])};
    if (block.range.lo < 2 || block.range.lo >= block.range.hi) {
      corrupt(path, block_line, "empty or invalid range");
    }
    ++i;
    if (i < lines.size() && lines[i] != kRecordHeader) corrupt(path, i + 1, "bad record header");
    ++i;
    bool closed = false;
    for (; i < lines.size(); ++i) {
      const auto fields = csv::split_row(lines[i]);
      if (!fields.empty() && fields[0] == "end") {
        if (fields.size() != 4 || field(path, i + 1, fields[1]) != block.range.lo ||
            field(path, i + 1, fields[2]) != block.range.hi ||
            field(path, i + 1, fields[3]) != block.records.size()) {
          corrupt(path, i + 1, "end line does not match its block");
        }
        closed = true;
        ++i;
        break;
      }
      if (fields.size() != 4) corrupt(path, i + 1, "expected 4 record fields");
      const PerPrimeRecord record{field(path, i + 1, fields[0]), field(path, i + 1, fields[1]),
                                  field(path, i + 1, fields[2]), field(path, i + 1, fields[3])};
      if (record.p < block.range.lo || record.p >= block.range.hi) {
        corrupt(path, i + 1, "record outside its range");
      }
      validate_record(record);
      block.records.push_back(record);
    }
    // An interrupted write leaves an unterminated final block; it is simply
    // recomputed.
    if (!closed) break;

    std::vector<u64> listed;
    for (const auto& r : block.records) listed.push_back(r.p);
    if (listed != primes_in_range(block.range.lo, block.range.hi).primes) {
      corrupt(path, block_line, "block does not list exactly the primes of its range");
    }
    for (const auto& other : out.blocks) {
      if (block.range.lo < other.range.hi && other.range.lo < block.range.hi) {
        corrupt(path, block_line, "range overlaps an earlier block");
      }
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write checkpoint " + temp.string());
    out << kCheckpointVersion << '\n';
    if (checkpoint.method) csv::write_row(out, {"method", std::string(to_string(*checkpoint.method))});
    for (const auto& block : checkpoint.blocks) write_block(out, block);
    out.flush();
    if (!out) fail(ErrorKind::Io, "failed writing checkpoint " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) fail(ErrorKind::Io, "cannot replace checkpoint " + path.string() + ": " + ec.message());
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::app) {
  if (!out_) fail(ErrorKind::Io, "cannot append to checkpoint " + path.string());
}

void CheckpointWriter::append(const CheckpointBlock& block) {
  write_block(out_, block);
  out_.flush();
  if (!out_) fail(ErrorKind::Io, "failed appending to checkpoint " + path_.string());
}

}  // namespace estraus
