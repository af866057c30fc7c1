#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selfred/counting.hpp"
#include "selfred/formula.hpp"
#include "selfred/oracles.hpp"

namespace selfred {

struct PruneEvent {
  enum class Kind { NonTally, DuplicateImage };
  Kind kind;
  /// Key of the discarded node.
  std::string discarded;
  /// The shared image kept by an earlier node (DuplicateImage only).
  std::optional<std::string> surviving_image;
};

struct LevelNode {
  Formula formula;
  std::string image;
};

/// One level of the breadth-first descent, after pruning.
struct TreeLevel {
  std::size_t depth = 0;
  std::vector<LevelNode> nodes;
  std::vector<PruneEvent> prune_events;
  std::size_t pre_prune_width = 0;
  std::size_t post_prune_width = 0;
  /// Distinct-image nodes dropped by the capped-continue rule.
  std::size_t capped = 0;
  /// Longest tally image seen at this or any earlier level.
  std::size_t max_tally_image_length = 0;
};

enum class LevelOutcome { Sat, Unsat, EarlySat };

struct LevelStats {
  std::vector<TreeLevel> levels;
  std::uint64_t oracle_calls = 0;
  LevelOutcome outcome = LevelOutcome::Unsat;
  /// |F| of the simplified input.
  std::size_t root_length = 0;
  /// q(r(m)); sparse decider only.
  std::optional<BigCount> threshold;
  /// Set when a level pruned to nothing without the tally rule, which only a
  /// contract-violating reduction can cause.
  bool empty_frontier = false;

  std::size_t max_width() const;
};

struct LevelVerdict {
  bool satisfiable;
  LevelStats stats;
};

enum class SparseMode { EarlyAccept, CappedContinue };

/// Berman-style descent for a reduction g from SAT to a tally set: each level
/// splits every survivor on its least variable, drops children whose image
/// is not in {e, 0, 00, ...}, and keeps one child per distinct image (True
/// child before False child, parents in level order). A non-tally root image
/// rejects at once; an emptied level rejects; otherwise the answer is
/// whether some surviving variable-free leaf is True.
///
/// Throws EncodingInvariantBroken if a node is longer than the root.
LevelVerdict decide_via_tally(const Formula& formula, const TallyReductionOracle& reduction);

/// Fortune-style descent for a reduction g from co-SAT to a sparse set with
/// declared bounds q and r. Only duplicate-image pruning applies. With
/// W = q(r(m)), m = |F|, a level holding at least W + 1 distinct images
/// proves satisfiability: EarlyAccept stops there, CappedContinue keeps the
/// first W + 1 nodes and keeps descending to the leaves.
///
/// Throws InvalidBound if q or r has a negative coefficient.
LevelVerdict decide_via_sparse(const Formula& formula, const SparseCoReductionOracle& reduction,
                               SparseMode mode);

std::string_view to_string(LevelOutcome outcome);
std::string_view to_string(SparseMode mode);
std::string_view to_string(PruneEvent::Kind kind);

}  // namespace selfred
