#include "selfred/harness.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "selfred/enum_counter.hpp"
#include "selfred/errors.hpp"
#include "selfred/oracles.hpp"
#include "selfred/parser.hpp"
#include "selfred/random_formula.hpp"
#include "selfred/selector_decider.hpp"

namespace selfred {

using nlohmann::json;

namespace {

json big(const BigCount& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) {
    return n.convert_to<std::uint64_t>();
  }
  return n.str();
}

std::uint64_t parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw InvalidParams("bad number for " + key + ": '" + value + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParams("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Oracles {
  std::optional<SelectorOracle> selector;
  std::optional<TallyReductionOracle> tally;
  std::optional<SparseCoReductionOracle> sparse;
  std::optional<TwoEnumeratorOracle> enumerator;
};

Oracles make_oracles(Algorithm algorithm, const std::string& style, std::uint64_t seed,
                     std::size_t limit) {
  Oracles o;
  auto bad = [&]() {
    return InvalidParams("oracle style '" + style + "' does not apply to " +
                         std::string(to_string(algorithm)));
  };
  switch (algorithm) {
    case Algorithm::Selector:
      if (style == "honest") {
        o.selector.emplace(honest_selector(limit));
      } else if (style == "adversarial") {
        o.selector.emplace(adversarial_selector(seed, limit));
      } else {
        throw bad();
      }
      break;
    case Algorithm::Tally:
      if (style == "canonical") {
        o.tally.emplace(simulated_tally_reduction(TallyStyle::Canonical, limit));
      } else if (style == "collision_rich") {
        o.tally.emplace(simulated_tally_reduction(TallyStyle::CollisionRich, limit));
      } else if (style == "spread") {
        o.tally.emplace(simulated_tally_reduction(TallyStyle::Spread, limit));
      } else {
        throw bad();
      }
      break;
    case Algorithm::Sparse:
      if (style == "singleton") {
        o.sparse.emplace(simulated_sparse_coreduction(SparseStyle::Singleton, seed, limit));
      } else if (style == "scatter") {
        o.sparse.emplace(simulated_sparse_coreduction(SparseStyle::Scatter, seed, limit));
      } else {
        throw bad();
      }
      break;
    case Algorithm::EnumCount:
      if (style == "exact_plus_offset") {
        o.enumerator.emplace(honest_two_enumerator(EnumeratorStyle::ExactPlusOffset, seed, limit));
      } else if (style == "woeginger") {
        o.enumerator.emplace(honest_two_enumerator(EnumeratorStyle::Woeginger, seed, limit));
      } else {
        throw bad();
      }
      break;
  }
  return o;
}

json linkage_json(const Linkage& link) {
  return {{"side", to_string(link.side)},
          {"child", link.child.key()},
          {"depth", link.depth},
          {"mapping",
           json::array({json::array({big(link.mapping[0].first), big(link.mapping[0].second)}),
                        json::array({big(link.mapping[1].first), big(link.mapping[1].second)})})}};
}

void trace_levels(std::size_t id, const LevelStats& stats, std::vector<std::string>& lines) {
  for (const TreeLevel& level : stats.levels) {
    json images = json::array();
    for (const LevelNode& n : level.nodes) images.push_back(n.image);
    json events = json::array();
    for (const PruneEvent& e : level.prune_events) {
      json ev{{"kind", to_string(e.kind)}, {"discarded", e.discarded}};
      ev["surviving_image"] = e.surviving_image ? json(*e.surviving_image) : json(nullptr);
      events.push_back(std::move(ev));
    }
    json rec{{"type", "level"},
             {"formula_id", id},
             {"depth", level.depth},
             {"pre_prune_width", level.pre_prune_width},
             {"post_prune_width", level.post_prune_width},
             {"capped", level.capped},
             {"images", std::move(images)},
             {"prune_events", std::move(events)}};
    lines.push_back(rec.dump());
  }
}

// Runs one formula, filling the record and appending trace lines.
void run_one(const ExperimentConfig& config, const Oracles& oracles, std::size_t id,
             const Formula& formula, RunRecord& record, std::vector<std::string>& lines) {
  switch (config.algorithm) {
    case Algorithm::Selector: {
      const SelectorVerdict v = decide_via_selector(formula, *oracles.selector);
      std::size_t depth = 0;
      for (const PathStep& s : v.trace.steps) {
        lines.push_back(json{{"type", "path_step"},
                             {"formula_id", id},
                             {"depth", depth++},
                             {"split_var", s.split_var},
                             {"branch", s.chosen_branch},
                             {"chosen", s.chosen_formula}}
                            .dump());
      }
      record.result = v.satisfiable ? "true" : "false";
      record.oracle_calls = v.trace.oracle_calls;
      record.outcome = v.satisfiable ? "Sat" : "Unsat";
      if (config.verify) {
        const bool truth = brute_force_sat(formula, config.brute_limit);
        record.reference = truth ? "true" : "false";
        bool agree = truth == v.satisfiable;
        if (v.satisfiable) agree = agree && evaluate(formula, v.trace.assignment());
        record.agree = agree;
      }
      return;
    }
    case Algorithm::Tally:
    case Algorithm::Sparse: {
      const LevelVerdict v = config.algorithm == Algorithm::Tally
                                 ? decide_via_tally(formula, *oracles.tally)
                                 : decide_via_sparse(formula, *oracles.sparse, config.mode);
      trace_levels(id, v.stats, lines);
      record.result = v.satisfiable ? "true" : "false";
      record.oracle_calls = v.stats.oracle_calls;
      record.outcome = std::string(to_string(v.stats.outcome));
      for (const TreeLevel& l : v.stats.levels) record.widths.emplace_back(l.pre_prune_width, l.post_prune_width);
      record.max_width = v.stats.max_width();
      if (config.verify) {
        const bool truth = brute_force_sat(formula, config.brute_limit);
        record.reference = truth ? "true" : "false";
        record.agree = truth == v.satisfiable;
      }
      return;
    }
    case Algorithm::EnumCount: {
      const EnumCount c = count_via_enumerator(formula, *oracles.enumerator);
      for (const DescentStep& s : c.steps) {
        json guesses = json::array();
        for (const GuessRecord& g : s.guesses) {
          guesses.push_back({{"enumerated", big(g.enumerated)},
                             {"triple", json::array({big(g.triple.a), big(g.triple.b), big(g.triple.c)})},
                             {"in_range", g.in_range},
                             {"survives", g.survives}});
        }
        json rec{{"type", "descent_step"}, {"formula_id", id},       {"depth", s.depth},
                 {"formula", s.formula},   {"routing", to_string(s.routing)}, {"guesses", std::move(guesses)}};
        rec["linkage"] = s.linkage ? linkage_json(*s.linkage) : json(nullptr);
        rec["resolved"] = s.resolved ? big(*s.resolved) : json(nullptr);
        lines.push_back(rec.dump());
      }
      record.result = c.count.str();
      record.oracle_calls = c.oracle_calls;
      record.outcome = c.chain.empty() ? "direct" : "linked";
      if (config.verify) {
        const BigCount truth = brute_force_count(formula, config.brute_limit);
        record.reference = truth.str();
        record.agree = truth == c.count;
      }
      return;
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool RunReport::ok() const {
  for (const RunRecord& r : records) {
    if (r.error) return false;
    if (r.agree && !*r.agree) return false;
  }
  return true;
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Selector:
      return "selector";
    case Algorithm::Tally:
      return "tally";
    case Algorithm::Sparse:
      return "sparse";
    case Algorithm::EnumCount:
      return "enum_count";
  }
  return "?";
}

std::string_view default_style(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Selector:
      return "honest";
    case Algorithm::Tally:
      return "canonical";
    case Algorithm::Sparse:
      return "singleton";
    case Algorithm::EnumCount:
      return "exact_plus_offset";
  }
  return "";
}

RandomSource parse_random_spec(const std::vector<std::string>& tokens) {
  RandomSource spec;
  for (const std::string& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw InvalidParams("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::uint64_t value = parse_number(key, token.substr(eq + 1));
    if (key == "vars") {
      spec.vars = value;
    } else if (key == "count") {
      spec.count = value;
    } else if (key == "seed") {
      spec.seed = value;
    } else if (key == "budget") {
      spec.node_budget = value;
    } else {
      throw InvalidParams("unknown random key '" + key + "'");
    }
  }
  return spec;
}

std::vector<Formula> load_inputs(const ExperimentConfig& config) {
  std::vector<Formula> out;
  if (const auto* inl = std::get_if<InlineSource>(&config.input)) {
    out.push_back(parse(inl->text));
  } else if (const auto* file = std::get_if<FileSource>(&config.input)) {
    const std::string text = read_file(file->path);
    if (ends_with(file->path, ".cnf")) {
      out.push_back(parse_dimacs(text));
    } else {
      std::istringstream lines(text);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(lines, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
          out.push_back(parse(line));
        } catch (const SyntaxError& e) {
          throw SyntaxError(file->path + ":" + std::to_string(line_no) + ": " + e.what(), e.offset());
        }
      }
    }
  } else {
    const auto& spec = std::get<RandomSource>(config.input);
    const std::size_t budget = spec.node_budget ? spec.node_budget : 4 * spec.vars;
    for (std::size_t i = 0; i < spec.count; ++i) {
      out.push_back(generate_random(spec.vars, budget, spec.seed + i));
    }
  }
  return out;
}

RunReport run(const ExperimentConfig& config) {
  RunReport report;
  report.config = config;
  report.oracle_style =
      config.oracle_style.empty() ? std::string(default_style(config.algorithm)) : config.oracle_style;
  const std::vector<Formula> inputs = load_inputs(config);
  if (config.verify) {
    for (const Formula& f : inputs) {
      if (f.var_count() > config.brute_limit) {
        throw InvalidParams(std::to_string(f.var_count()) +
                            " variables exceed the verification limit of " +
                            std::to_string(config.brute_limit) + "; use --no-verify");
      }
    }
  }
  const Oracles oracles =
      make_oracles(config.algorithm, report.oracle_style, config.seed, config.brute_limit);

  for (std::size_t id = 0; id < inputs.size(); ++id) {
    const Formula& formula = inputs[id];
    RunRecord record;
    record.formula_id = id;
    record.formula = formula.text();
    record.vars = formula.var_count();
    const auto start = std::chrono::steady_clock::now();
    try {
      run_one(config, oracles, id, formula, record, report.trace_lines);
    } catch (const Error& e) {
      record.error = e.what();
    }
    record.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    json rec{{"type", "run"},
             {"formula_id", id},
             {"formula", record.formula},
             {"vars", record.vars},
             {"algorithm", to_string(config.algorithm)},
             {"oracle_style", report.oracle_style},
             {"seed", config.seed},
             {"result", record.result},
             {"oracle_calls", record.oracle_calls},
             {"outcome", record.outcome}};
    if (config.algorithm == Algorithm::Sparse) rec["mode"] = to_string(config.mode);
    rec["reference"] = record.reference ? json(*record.reference) : json(nullptr);
    rec["agree"] = record.agree ? json(*record.agree) : json(nullptr);
    if (record.max_width) {
      rec["widths"] = record.widths;
      rec["max_width"] = *record.max_width;
    }
    if (record.error) rec["error"] = *record.error;
    if (config.timing) rec["wall_ms"] = record.wall_ms;
    report.trace_lines.push_back(rec.dump());
    report.records.push_back(std::move(record));
  }
  return report;
}

void write_trace(const RunReport& report, std::ostream& out) {
  for (const std::string& line : report.trace_lines) out << line << '\n';
}

void write_summary_csv(const RunReport& report, std::ostream& out) {
  out << "formula_id,vars,algorithm,oracle_style,seed,result,reference,agree,oracle_calls,max_width\n";
  for (const RunRecord& r : report.records) {
    out << r.formula_id << ',' << r.vars << ',' << to_string(report.config.algorithm) << ','
        << csv_field(report.oracle_style) << ',' << report.config.seed << ','
        << csv_field(r.error ? "error" : r.result) << ',' << (r.reference ? *r.reference : "") << ','
        << (r.agree ? (*r.agree ? "true" : "false") : "") << ',' << r.oracle_calls << ','
        << (r.max_width ? std::to_string(*r.max_width) : "") << '\n';
  }
}

std::string naive_failure_json() {
  const NaiveFailureReport report = demonstrate_naive_failure();
  auto witness = [](const NaiveFailureWitness& w) {
    json sets = json::array();
    for (const auto& set : w.guess_sets) {
      json s = json::array();
      for (const BigCount& v : set) s.push_back(big(v));
      sets.push_back(std::move(s));
    }
    return json{{"root", w.root.key()},
                {"left", w.left.key()},
                {"right", w.right.key()},
                {"counts", json::array({big(w.counts[0]), big(w.counts[1]), big(w.counts[2])})},
                {"guess_sets", std::move(sets)}};
  };
  json doc{{"first", witness(report.first)},
           {"second", witness(report.second)},
           {"identical_guess_sets", report.identical_guess_sets},
           {"root_counts_differ", report.root_counts_differ}};
  return doc.dump(2);
}

}  // namespace selfred
