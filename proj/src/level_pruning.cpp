#include "selfred/level_pruning.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "selfred/errors.hpp"

namespace selfred {

namespace {

struct DescentRules {
  std::function<std::string(const Formula&)> image;
  bool drop_non_tally = false;
  /// Distinct-image budget W; a level with more than W survivors triggers it.
  std::optional<BigCount> threshold;
  SparseMode mode = SparseMode::EarlyAccept;
};

// Applies the pruning rules to one level's candidates, in order.
void prune(std::vector<LevelNode> candidates, bool drop_non_tally, TreeLevel& level) {
  std::unordered_set<std::string> seen;
  level.pre_prune_width = candidates.size();
  for (LevelNode& node : candidates) {
    const bool tally = is_tally(node.image);
    if (tally) {
      level.max_tally_image_length = std::max(level.max_tally_image_length, node.image.size());
    }
    if (drop_non_tally && !tally) {
      level.prune_events.push_back({PruneEvent::Kind::NonTally, node.formula.key(), std::nullopt});
      continue;
    }
    if (!seen.insert(node.image).second) {
      level.prune_events.push_back(
          {PruneEvent::Kind::DuplicateImage, node.formula.key(), node.image});
      continue;
    }
    level.nodes.push_back(std::move(node));
  }
  level.post_prune_width = level.nodes.size();
}

LevelVerdict descend(const Formula& input, const DescentRules& rules) {
  LevelVerdict result{false, {}};
  LevelStats& stats = result.stats;
  const Formula root = simplify(input);
  stats.root_length = root.encoding_length();
  stats.threshold = rules.threshold;

  if (!root.has_vars()) {
    TreeLevel level;
    level.nodes.push_back({root, ""});
    level.pre_prune_width = level.post_prune_width = 1;
    stats.levels.push_back(std::move(level));
    result.satisfiable = constant_value(root);
    stats.outcome = result.satisfiable ? LevelOutcome::Sat : LevelOutcome::Unsat;
    return result;
  }

  std::vector<LevelNode> candidates;
  candidates.push_back({root, rules.image(root)});
  ++stats.oracle_calls;

  for (std::size_t depth = 0;; ++depth) {
    TreeLevel level;
    level.depth = depth;
    if (!stats.levels.empty()) level.max_tally_image_length = stats.levels.back().max_tally_image_length;
    prune(std::move(candidates), rules.drop_non_tally, level);

    if (level.nodes.empty()) {
      // With the tally rule this is a proof of unsatisfiability; without it
      // the reduction broke its contract.
      stats.empty_frontier = !rules.drop_non_tally;
      stats.levels.push_back(std::move(level));
      stats.outcome = LevelOutcome::Unsat;
      return result;
    }

    if (rules.threshold && BigCount(level.nodes.size()) > *rules.threshold) {
      if (rules.mode == SparseMode::EarlyAccept) {
        stats.levels.push_back(std::move(level));
        stats.outcome = LevelOutcome::EarlySat;
        result.satisfiable = true;
        return result;
      }
      const auto keep = (*rules.threshold + 1).convert_to<std::size_t>();
      level.capped = level.nodes.size() - keep;
      level.nodes.erase(level.nodes.begin() + static_cast<std::ptrdiff_t>(keep), level.nodes.end());
    }

    const bool leaves = !level.nodes.front().formula.has_vars();
    if (leaves) {
      result.satisfiable = std::any_of(level.nodes.begin(), level.nodes.end(),
                                       [](const LevelNode& n) { return constant_value(n.formula); });
      stats.outcome = result.satisfiable ? LevelOutcome::Sat : LevelOutcome::Unsat;
      stats.levels.push_back(std::move(level));
      return result;
    }

    candidates.clear();
    candidates.reserve(2 * level.nodes.size());
    for (const LevelNode& parent : level.nodes) {
      SelfReduction split = self_reduce(parent.formula);
      for (Formula* child : {&split.if_true, &split.if_false}) {
        if (child->encoding_length() > stats.root_length) {
          throw EncodingInvariantBroken(child->key() + " is longer than the root " + root.text());
        }
        std::string image = rules.image(*child);
        ++stats.oracle_calls;
        candidates.push_back({std::move(*child), std::move(image)});
      }
    }
    stats.levels.push_back(std::move(level));
  }
}

}  // namespace

std::size_t LevelStats::max_width() const {
  std::size_t w = 0;
  for (const TreeLevel& level : levels) w = std::max(w, level.pre_prune_width);
  return w;
}

LevelVerdict decide_via_tally(const Formula& formula, const TallyReductionOracle& reduction) {
  DescentRules rules;
  rules.image = [&reduction](const Formula& f) { return reduction.map(f); };
  rules.drop_non_tally = true;
  return descend(formula, rules);
}

LevelVerdict decide_via_sparse(const Formula& formula, const SparseCoReductionOracle& reduction,
                               SparseMode mode) {
  const PolynomialBound& q = reduction.census_bound();
  const PolynomialBound& r = reduction.image_length_bound();
  if (!q.is_valid() || !r.is_valid()) {
    throw InvalidBound("census bound " + q.to_string() + " or length bound " + r.to_string() +
                       " has a negative coefficient");
  }
  DescentRules rules;
  rules.image = [&reduction](const Formula& f) { return reduction.map(f); };
  rules.threshold = q(r(BigCount(simplify(formula).encoding_length())));
  rules.mode = mode;
  return descend(formula, rules);
}

std::string_view to_string(LevelOutcome outcome) {
  switch (outcome) {
    case LevelOutcome::Sat:
      return "Sat";
    case LevelOutcome::Unsat:
      return "Unsat";
    case LevelOutcome::EarlySat:
      return "EarlySat";
  }
  return "?";
}

std::string_view to_string(SparseMode mode) {
  return mode == SparseMode::EarlyAccept ? "early_accept" : "capped_continue";
}

std::string_view to_string(PruneEvent::Kind kind) {
  return kind == PruneEvent::Kind::NonTally ? "NonTally" : "DuplicateImage";
}

}  // namespace selfred
