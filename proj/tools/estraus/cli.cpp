#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "estraus/bounds.hpp"
#include "estraus/csv.hpp"
#include "estraus/enumerate.hpp"
#include "estraus/error.hpp"
#include "estraus/grid.hpp"
#include "estraus/sums.hpp"

namespace estraus::cli {

namespace {

struct RunConfig {
  std::string out_path;
  unsigned workers = 0;
  std::string method = "divisor";
  std::vector<std::string> constants;

  std::string n;
  std::string p;
  bool list = false;
  std::string range;

  std::string max_n;
  std::string grid;
  std::string checkpoint;
  std::string primes_out;
  std::string series;

  std::string expr;
  std::string bound;
};

// Validated inputs shared by the subcommands.
struct Prepared {
  Method method = Method::Divisor;
  Constants constants;
  unsigned workers = 1;
};

Prepared prepare(const RunConfig& config) {
  Prepared out;
  out.method = parse_method(config.method);
  for (const auto& text : config.constants) {
    auto [name, value] = parse_constant(text);
    out.constants[name] = value;
  }
  out.workers = config.workers != 0 ? config.workers
                                    : std::max(1u, std::thread::hardware_concurrency());
  return out;
}

BoundExpr resolve_bound(const RunConfig& config, const Constants& constants) {
  if (!config.expr.empty()) return parse_bound(config.expr, constants);
  if (!config.bound.empty()) return predefined_bound(config.bound, constants);
  fail(ErrorKind::Domain, "one of --expr or --bound is required");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::Io, "cannot open output file " + path);
  return file;
}

void emit(const std::ostringstream& buffer, std::optional<std::ofstream>& file, std::ostream& out,
          const std::string& path) {
  if (!file) {
    out << buffer.str();
    return;
  }
  *file << buffer.str();
  file->flush();
  if (!*file) fail(ErrorKind::Io, "failed writing " + path);
}

void run_count(const RunConfig& config, const Prepared& prep, std::ostream& os) {
  const u64 n = parse_integer(config.n);
  if (config.list) {
    const auto triples = enumerate_solutions(n, prep.method);
    u64 ordered = 0;
    for (const auto& t : triples) ordered += orderings(t);
    csv::write_row(os, {"n", "ordered", "unordered"});
    csv::write_row(os, {std::to_string(n), std::to_string(ordered), std::to_string(triples.size())});
    os << '\n';
    csv::write_row(os, {"n1", "n2", "n3", "orderings"});
    for (const auto& t : triples) {
      csv::write_row(os, {to_string(t.n1), to_string(t.n2), to_string(t.n3),
                          std::to_string(orderings(t))});
    }
    return;
  }
  const SolutionCount count = count_solutions(n, prep.method);
  csv::write_row(os, {"n", "ordered", "unordered"});
  csv::write_row(os, {std::to_string(count.n), std::to_string(count.ordered),
                      std::to_string(count.unordered)});
}

void run_classify(const RunConfig& config, const Prepared& prep, std::ostream& os) {
  const u64 p = parse_integer(config.p);
  if (!is_prime(p)) fail(ErrorKind::Domain, std::to_string(p) + " is not prime");
  const auto triples = enumerate_solutions(p, prep.method);
  const bool classified = p >= 5;

  u64 ordered = 0;
  TypeSplit split;
  split.p = p;
  std::vector<std::string> types;
  for (const auto& t : triples) {
    const unsigned k = orderings(t);
    ordered += k;
    if (!classified) {
      types.emplace_back("NA");
      continue;
    }
    const SolutionType type = classify_triple(p, t);
    (type == SolutionType::TypeI ? split.type_i_ordered : split.type_ii_ordered) += k;
    types.emplace_back(to_string(type));
  }
  if (classified) {
    if (split.type_i_ordered % 3 != 0 || split.type_ii_ordered % 3 != 0 ||
        split.type_i_ordered + split.type_ii_ordered != ordered) {
      fail(ErrorKind::Invariant, "type partition broken for p=" + std::to_string(p));
    }
    split.f_i = split.type_i_ordered / 3;
    split.f_ii = split.type_ii_ordered / 3;
  }
  auto or_na = [&](u64 v) { return classified ? std::to_string(v) : std::string("NA"); };

  csv::write_row(os, {"p", "f_ordered", "unordered", "typeI_ordered", "typeII_ordered", "f_I",
                      "f_II", "classified"});
  csv::write_row(os, {std::to_string(p), std::to_string(ordered), std::to_string(triples.size()),
                      or_na(split.type_i_ordered), or_na(split.type_ii_ordered), or_na(split.f_i),
                      or_na(split.f_ii), classified ? "1" : "0"});
  os << '\n';
  csv::write_row(os, {"n1", "n2", "n3", "orderings", "type"});
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    csv::write_row(os, {to_string(t.n1), to_string(t.n2), to_string(t.n3),
                        std::to_string(orderings(t)), types[i]});
  }
}

void run_verify(const RunConfig& config, std::ostream& os) {
  const auto [lo, hi] = parse_range(config.range);
  const auto first = verify_conjecture_range(lo, hi);
  os << (first ? std::to_string(*first) : std::string("none")) << '\n';
}

SweepOptions sweep_options(const RunConfig& config, const Prepared& prep) {
  SweepOptions options;
  if (config.max_n.empty()) fail(ErrorKind::Domain, "--max-N is required");
  options.max_n = parse_integer(config.max_n);
  options.grid = config.grid.empty() ? std::vector<u64>{options.max_n} : parse_grid(config.grid);
  options.workers = prep.workers;
  options.method = prep.method;
  if (!config.checkpoint.empty()) options.checkpoint = config.checkpoint;
  return options;
}

void run_sum(const RunConfig& config, const Prepared& prep, std::ostream& os,
             std::optional<std::ofstream>& primes_file) {
  const SweepResult result = sweep(sweep_options(config, prep));
  write_series_csv(os, result.series);
  if (primes_file) {
    write_records_csv(*primes_file, result.primes);
    primes_file->flush();
    if (!*primes_file) fail(ErrorKind::Io, "failed writing per-prime CSV");
  }
}

void run_bounds(const RunConfig& config, const Prepared& prep, std::ostream& os) {
  if (config.grid.empty()) fail(ErrorKind::Domain, "--grid is required");
  const BoundExpr g = resolve_bound(config, prep.constants);
  const auto grid = parse_grid(config.grid);
  csv::write_row(os, {"N", "G"});
  for (const u64 n : grid) {
    csv::write_row(os, {std::to_string(n), csv::format_real(eval_bound(g, n))});
  }
}

void run_report(const RunConfig& config, const Prepared& prep, std::ostream& os) {
  const BoundExpr g = resolve_bound(config, prep.constants);
  SumSeries series;
  if (!config.series.empty()) {
    std::ifstream in(config.series, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open series file " + config.series);
    series = read_series_csv(in);
  } else {
    series = sweep(sweep_options(config, prep)).series;
  }
  const auto rows = residual_series(series, g);
  csv::write_row(os, {"N", "S", "S_I", "G", "epsilon", "epsilon_runmax", "chi", "ratio_SI_G",
                      "pnt_ratio", "eps_logN", "eps_NlogN", "G_floor_mod_N", "N_divides_G_floor"});
  for (const auto& row : rows) {
    std::string remainder = "NA";
    std::string divisible = "NA";
    try {
      const Congruence c = congruence_check(g, row.n);
      remainder = std::to_string(c.remainder);
      divisible = c.divisible ? "1" : "0";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Magnitude) throw;
    }
    const double log_n = std::log(static_cast<double>(row.n));
    csv::write_row(os, {std::to_string(row.n), std::to_string(row.s), std::to_string(row.s_i),
                        csv::format_real(row.g), csv::format_real(row.epsilon),
                        csv::format_real(row.epsilon_runmax), csv::format_real(row.chi),
                        csv::format_real(row.ratio_si_g), csv::format_real(row.pnt_ratio),
                        csv::format_real(log_n),
                        csv::format_real(static_cast<double>(row.n) * log_n), remainder,
                        divisible});
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::CorruptCheckpoint:
    case ErrorKind::Interrupted: return kIoError;
    case ErrorKind::Invariant: return kInvariantError;
    default: return kDomainError;
  }
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

void add_shared(CLI::App* sub, RunConfig& config) {
  sub->add_option("--out", config.out_path, "Write output to PATH instead of stdout");
  sub->add_option("--workers", config.workers, "Worker threads (default: hardware threads)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--method", config.method, "Enumeration method")
      ->check(CLI::IsMember({"naive", "divisor"}));
  sub->add_option("--const", config.constants, "Named constant name=value (repeatable)");
}

void add_bound_choice(CLI::App* sub, RunConfig& config) {
  auto* expr = sub->add_option("--expr", config.expr, "Bound expression over N");
  auto* bound = sub->add_option("--bound", config.bound,
                                "Predefined bound: tao-upper, tao-typeI, jia, paper-G");
  expr->excludes(bound);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Enumerate and count Erdos-Straus solutions; compare bound expressions"};
  app.name("estraus");
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "Count solutions of 4/n = 1/n1 + 1/n2 + 1/n3");
  count->add_option("--n", config.n, "n >= 2")->required();
  count->add_flag("--list", config.list, "Also list canonical triples");
  add_shared(count, config);

  auto* classify = app.add_subcommand("classify", "Type I / Type II split for a prime");
  classify->add_option("--p", config.p, "prime p")->required();
  add_shared(classify, config);

  auto* verify = app.add_subcommand("verify", "Search a range for n without solutions");
  verify->add_option("--range", config.range, "LO..HI")->required();
  add_shared(verify, config);

  auto* sum = app.add_subcommand("sum", "Prime-indexed cumulative sums S, S_I, S_II");
  sum->add_option("--max-N", config.max_n, "Largest N")->required();
  sum->add_option("--grid", config.grid, "log:LO..HI or comma list (default: max N)");
  sum->add_option("--checkpoint", config.checkpoint, "Resumable checkpoint file");
  sum->add_option("--primes-out", config.primes_out,
                  "Per-prime CSV (default: <out>.primes.csv when --out is given)");
  add_shared(sum, config);

  auto* bounds = app.add_subcommand("bounds", "Evaluate a bound over a grid");
  bounds->add_option("--grid", config.grid, "log:LO..HI or comma list")->required();
  add_bound_choice(bounds, config);
  add_shared(bounds, config);

  auto* report = app.add_subcommand("report", "Join sums with a bound: residuals and ratios");
  report->add_option("--series", config.series, "Series CSV from 'sum' (otherwise sweep)");
  report->add_option("--max-N", config.max_n, "Largest N when sweeping");
  report->add_option("--grid", config.grid, "Grid when sweeping");
  report->add_option("--checkpoint", config.checkpoint, "Checkpoint when sweeping");
  add_bound_choice(report, config);
  add_shared(report, config);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "estraus: error[usage]: " << one_line(e.what()) << '\n';
    return kDomainError;
  }

  try {
    const Prepared prep = prepare(config);
    std::optional<std::ofstream> out_file;
    if (!config.out_path.empty()) out_file = open_output(config.out_path);
    std::ostringstream buffer;

    if (count->parsed()) {
      run_count(config, prep, buffer);
    } else if (classify->parsed()) {
      run_classify(config, prep, buffer);
    } else if (verify->parsed()) {
      run_verify(config, buffer);
    } else if (sum->parsed()) {
      std::optional<std::ofstream> primes_file;
      std::string primes_path = config.primes_out;
      if (primes_path.empty() && !config.out_path.empty()) {
        primes_path = std::filesystem::path(config.out_path).replace_extension(".primes.csv").string();
      }
      if (!primes_path.empty()) primes_file = open_output(primes_path);
      run_sum(config, prep, buffer, primes_file);
    } else if (bounds->parsed()) {
      run_bounds(config, prep, buffer);
    } else if (report->parsed()) {
      if (config.series.empty() && config.max_n.empty()) {
        fail(ErrorKind::Domain, "report needs --series or --max-N");
      }
      run_report(config, prep, buffer);
    }
    emit(buffer, out_file, out, config.out_path);
    return kOk;
  } catch (const Error& e) {
    err << "estraus: error[" << to_string(e.kind()) << "]: " << one_line(e.what()) << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "estraus: error[internal]: " << one_line(e.what()) << '\n';
    return kInvariantError;
  }
}

}  // namespace estraus::cli
