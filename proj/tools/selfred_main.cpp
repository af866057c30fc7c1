// selfred: run the self-reducibility deciders and the enumerator-based
// counter on inline, file or random formulas, optionally checking every
// answer against brute force.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selfred/errors.hpp"
#include "selfred/harness.hpp"
#include "selfred/random_formula.hpp"

namespace {

enum ExitCode { kOk = 0, kDisagree = 1, kBadInput = 2, kFailed = 3 };

struct InputFlags {
  std::string inline_text;
  std::string file;
  std::vector<std::string> random;
};

struct RunFlags {
  InputFlags input;
  std::string oracle;
  std::uint64_t seed = 0;
  std::string mode = "early_accept";
  bool verify = true;
  bool timing = false;
  std::string trace;
  std::string summary;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  auto* group = cmd->add_option_group("input");
  group->add_option("--inline", in.inline_text, "Formula text, e.g. \"x1 & !x2\"");
  group->add_option("--file", in.file, "Formula-per-line file, or DIMACS when the name ends in .cnf");
  group->add_option("--random", in.random, "Random corpus: vars=N count=N seed=N [budget=N]")
      ->expected(1, -1);
  group->require_option(1);
}

void add_run_flags(CLI::App* cmd, RunFlags& flags, bool with_mode) {
  add_input_flags(cmd, flags.input);
  cmd->add_option("--oracle", flags.oracle, "Oracle style");
  cmd->add_option("--seed", flags.seed, "Oracle seed");
  if (with_mode) {
    cmd->add_option("--mode", flags.mode, "Over-threshold handling")
        ->check(CLI::IsMember({"early_accept", "capped_continue"}));
  }
  cmd->add_flag("--verify,!--no-verify", flags.verify, "Check every answer by brute force");
  cmd->add_flag("--timing", flags.timing, "Record wall time in trace records");
  cmd->add_option("--trace", flags.trace, "JSONL trace output (default: stdout)");
  cmd->add_option("--summary", flags.summary, "CSV summary output");
}

selfred::InputSource to_source(const InputFlags& in) {
  if (!in.inline_text.empty()) return selfred::InlineSource{in.inline_text};
  if (!in.file.empty()) return selfred::FileSource{in.file};
  return selfred::parse_random_spec(in.random);
}

std::size_t brute_limit_from_env() {
  if (const char* env = std::getenv("SELFRED_BRUTE_LIMIT")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw selfred::InvalidParams(std::string("bad SELFRED_BRUTE_LIMIT '") + env + "'");
    }
  }
  return selfred::kDefaultBruteLimit;
}

int execute(selfred::Algorithm algorithm, const RunFlags& flags) {
  selfred::ExperimentConfig config;
  config.algorithm = algorithm;
  config.oracle_style = flags.oracle;
  config.seed = flags.seed;
  config.mode = flags.mode == "capped_continue" ? selfred::SparseMode::CappedContinue
                                                 : selfred::SparseMode::EarlyAccept;
  config.input = to_source(flags.input);
  config.verify = flags.verify;
  config.timing = flags.timing;
  config.brute_limit = brute_limit_from_env();

  const selfred::RunReport report = selfred::run(config);

  if (flags.trace.empty()) {
    selfred::write_trace(report, std::cout);
  } else {
    std::ofstream out(flags.trace, std::ios::binary);
    if (!out) throw selfred::InvalidParams("cannot write " + flags.trace);
    selfred::write_trace(report, out);
  }
  if (!flags.summary.empty()) {
    std::ofstream out(flags.summary, std::ios::binary);
    if (!out) throw selfred::InvalidParams("cannot write " + flags.summary);
    selfred::write_summary_csv(report, out);
  }

  std::size_t errors = 0;
  std::size_t disagreements = 0;
  double wall_ms = 0;
  for (const auto& r : report.records) {
    wall_ms += r.wall_ms;
    if (r.error) {
      ++errors;
      std::cerr << "formula " << r.formula_id << " (" << r.formula << "): " << *r.error << '\n';
    } else if (r.agree && !*r.agree) {
      ++disagreements;
      std::cerr << "formula " << r.formula_id << " (" << r.formula << "): result " << r.result
                << " but brute force says " << *r.reference << '\n';
    }
  }
  std::cerr << report.records.size() << " formulas, " << errors << " errors, " << disagreements
            << " disagreements, " << wall_ms << " ms\n";
  if (errors) return kFailed;
  return disagreements ? kDisagree : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-reducibility tree pruning: SAT deciders and #SAT from a 2-enumerator"};
  app.require_subcommand(1);

  RunFlags selector_flags, tally_flags, sparse_flags, enum_flags;
  auto* decide = app.add_subcommand("decide", "Decide satisfiability with an oracle");
  decide->require_subcommand(1);
  auto* selector = decide->add_subcommand("selector", "Single-path descent guided by a P-selector");
  add_run_flags(selector, selector_flags, false);
  auto* tally = decide->add_subcommand("tally", "Level pruning from a reduction to a tally set");
  add_run_flags(tally, tally_flags, false);
  auto* sparse = decide->add_subcommand("sparse", "Level pruning from a co-reduction to a sparse set");
  add_run_flags(sparse, sparse_flags, true);

  auto* count = app.add_subcommand("count", "Count models with an oracle");
  count->require_subcommand(1);
  auto* enumerate = count->add_subcommand("enum", "Exact count from a 2-enumerator");
  add_run_flags(enumerate, enum_flags, false);

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* naive = demo->add_subcommand("naive-failure", "Why independent guess pairs cannot settle the count");

  InputFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Print random formulas, one per line");
  gen->add_option("--random", gen_flags.random, "vars=N count=N seed=N [budget=N]")
      ->expected(1, -1)
      ->required();
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*selector) return execute(selfred::Algorithm::Selector, selector_flags);
    if (*tally) return execute(selfred::Algorithm::Tally, tally_flags);
    if (*sparse) return execute(selfred::Algorithm::Sparse, sparse_flags);
    if (*enumerate) return execute(selfred::Algorithm::EnumCount, enum_flags);
    if (*naive) {
      std::cout << selfred::naive_failure_json() << '\n';
      return kOk;
    }
    if (*gen) {
      const selfred::RandomSource spec = selfred::parse_random_spec(gen_flags.random);
      const std::size_t budget = spec.node_budget ? spec.node_budget : 4 * spec.vars;
      std::ofstream file;
      if (!gen_out.empty()) {
        file.open(gen_out, std::ios::binary);
        if (!file) throw selfred::InvalidParams("cannot write " + gen_out);
      }
      std::ostream& out = gen_out.empty() ? std::cout : file;
      for (std::size_t i = 0; i < spec.count; ++i) {
        out << selfred::generate_random(spec.vars, budget, spec.seed + i).text() << '\n';
      }
      return kOk;
    }
  } catch (const selfred::SyntaxError& e) {
    std::cerr << "selfred: " << e.what() << '\n';
    return kBadInput;
  } catch (const selfred::InvalidParams& e) {
    std::cerr << "selfred: " << e.what() << '\n';
    return kBadInput;
  } catch (const selfred::Error& e) {
    std::cerr << "selfred: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
