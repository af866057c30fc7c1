#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "selfred/counting.hpp"
#include "selfred/formula.hpp"
#include "selfred/level_pruning.hpp"

namespace selfred {

enum class Algorithm { Selector, Tally, Sparse, EnumCount };

struct InlineSource {
  std::string text;
};

/// Formula per line (blank lines and lines starting with '#' skipped), or a
/// single DIMACS formula when the path ends in ".cnf".
struct FileSource {
  std::string path;
};

struct RandomSource {
  std::size_t vars = 8;
  /// 0 picks 4 * vars.
  std::size_t node_budget = 0;
  std::uint64_t seed = 1;
  std::size_t count = 1;
};

using InputSource = std::variant<InlineSource, FileSource, RandomSource>;

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Selector;
  /// Empty picks the algorithm's default style.
  std::string oracle_style;
  std::uint64_t seed = 0;
  SparseMode mode = SparseMode::EarlyAccept;
  InputSource input = InlineSource{};
  bool verify = true;
  std::size_t brute_limit = kDefaultBruteLimit;
  /// Adds wall time to trace records (breaks byte-for-byte reproducibility).
  bool timing = false;
};

struct RunRecord {
  std::size_t formula_id = 0;
  std::string formula;
  std::size_t vars = 0;
  /// "true"/"false" for deciders, the decimal count for the counter.
  std::string result;
  std::optional<std::string> reference;
  std::optional<bool> agree;
  std::uint64_t oracle_calls = 0;
  /// (pre_prune_width, post_prune_width) per level; level deciders only.
  std::vector<std::pair<std::size_t, std::size_t>> widths;
  std::optional<std::size_t> max_width;
  std::string outcome;
  std::optional<std::string> error;
  double wall_ms = 0.0;
};

struct RunReport {
  ExperimentConfig config;
  std::string oracle_style;
  std::vector<RunRecord> records;
  /// JSONL lines: per-level / per-step trace records, then one "run" record
  /// per formula, in input order.
  std::vector<std::string> trace_lines;

  /// Every record agrees (when verifying) and none failed.
  bool ok() const;
};

std::string_view to_string(Algorithm algorithm);
std::string_view default_style(Algorithm algorithm);

/// Parses "vars=8 count=100 seed=3 budget=20" style key=value tokens.
/// Throws InvalidParams on unknown keys or bad numbers.
RandomSource parse_random_spec(const std::vector<std::string>& tokens);

/// Reads the configured input. Throws SyntaxError / InvalidParams.
std::vector<Formula> load_inputs(const ExperimentConfig& config);

/// Runs the configured algorithm over every input formula, verifying against
/// brute force when asked. Per-formula oracle failures are recorded on the
/// record; parse and configuration errors are thrown.
RunReport run(const ExperimentConfig& config);

void write_trace(const RunReport& report, std::ostream& out);
/// Columns: formula_id, vars, algorithm, oracle_style, seed, result,
/// reference, agree, oracle_calls, max_width.
void write_summary_csv(const RunReport& report, std::ostream& out);

/// The naive-failure witnesses as one JSON document.
std::string naive_failure_json();

}  // namespace selfred
