#include <gtest/gtest.h>

#include "selfred/errors.hpp"
#include "selfred/level_pruning.hpp"
#include "selfred/parser.hpp"
#include "support/corpus.hpp"

using namespace selfred;

TEST(Tally, ContradictionCanonical) {
  const LevelVerdict v =
      decide_via_tally(parse("x1 & !x1"), simulated_tally_reduction(TallyStyle::Canonical));
  EXPECT_FALSE(v.satisfiable);
  EXPECT_EQ(v.stats.outcome, LevelOutcome::Unsat);
  // Root, then two identical children collapse to one.
  ASSERT_EQ(v.stats.levels.size(), 2u);
  EXPECT_EQ(v.stats.levels[1].pre_prune_width, 2u);
  EXPECT_EQ(v.stats.levels[1].post_prune_width, 1u);
  EXPECT_EQ(v.stats.oracle_calls, 3u);
}

TEST(Tally, NonTallyChildIsDropped) {
  const LevelVerdict v =
      decide_via_tally(parse("x1 & x2"), simulated_tally_reduction(TallyStyle::CollisionRich));
  EXPECT_TRUE(v.satisfiable);
  const TreeLevel& level = v.stats.levels.at(1);
  ASSERT_EQ(level.prune_events.size(), 1u);
  EXPECT_EQ(level.prune_events[0].kind, PruneEvent::Kind::NonTally);
  EXPECT_EQ(level.prune_events[0].discarded, "F @ x2");
  EXPECT_EQ(level.post_prune_width, 1u);
}

TEST(Tally, UnsatRootRejectsImmediately) {
  const LevelVerdict v =
      decide_via_tally(parse("x1 & !x1 & x2"), simulated_tally_reduction(TallyStyle::CollisionRich));
  EXPECT_FALSE(v.satisfiable);
  EXPECT_EQ(v.stats.levels.size(), 1u);
  EXPECT_EQ(v.stats.oracle_calls, 1u);
}

TEST(Tally, AgreesWithBruteForceAndWidthBound) {
  for (TallyStyle style : {TallyStyle::Canonical, TallyStyle::CollisionRich, TallyStyle::Spread}) {
    const TallyReductionOracle g = simulated_tally_reduction(style);
    for (const Formula& f : support::random_corpus(300)) {
      const LevelVerdict v = decide_via_tally(f, g);
      EXPECT_EQ(v.satisfiable, brute_force_sat(f)) << to_string(style) << " " << f.text();
      for (const TreeLevel& level : v.stats.levels) {
        EXPECT_LE(level.post_prune_width, 1 + level.max_tally_image_length);
      }
    }
  }
}

TEST(Sparse, SingletonContradictionStaysNarrow) {
  const LevelVerdict v = decide_via_sparse(
      parse("x1 & !x1"), simulated_sparse_coreduction(SparseStyle::Singleton), SparseMode::EarlyAccept);
  EXPECT_FALSE(v.satisfiable);
  for (const TreeLevel& level : v.stats.levels) EXPECT_EQ(level.post_prune_width, 1u);
  ASSERT_TRUE(v.stats.threshold);
  // m = 8, r(m) = 24, q = 25.
  EXPECT_EQ(*v.stats.threshold, 25);
}

TEST(Sparse, ScatterSatisfiable) {
  const auto g = simulated_sparse_coreduction(SparseStyle::Scatter);
  for (SparseMode mode : {SparseMode::EarlyAccept, SparseMode::CappedContinue}) {
    EXPECT_TRUE(decide_via_sparse(parse("(x1 | x2) & (x3 | x4)"), g, mode).satisfiable);
  }
}

TEST(Sparse, TinyThresholdTriggersEarlyAccept) {
  // q = 0: any level with one distinct image already exceeds the census.
  const SparseCoReductionOracle g(
      "tiny", [](const Formula& f) { return brute_force_sat(f) ? "1" + f.key() : std::string("0"); },
      {"0"}, PolynomialBound({0}), PolynomialBound({1}));
  const LevelVerdict early = decide_via_sparse(parse("x1 | x2"), g, SparseMode::EarlyAccept);
  EXPECT_TRUE(early.satisfiable);
  EXPECT_EQ(early.stats.outcome, LevelOutcome::EarlySat);
  const LevelVerdict capped = decide_via_sparse(parse("x1 | x2"), g, SparseMode::CappedContinue);
  EXPECT_TRUE(capped.satisfiable);
  EXPECT_EQ(capped.stats.outcome, LevelOutcome::Sat);
  for (const TreeLevel& level : capped.stats.levels) EXPECT_LE(level.nodes.size(), 1u);
}

TEST(Sparse, ModesAgreeWithBruteForce) {
  for (SparseStyle style : {SparseStyle::Singleton, SparseStyle::Scatter}) {
    const auto g = simulated_sparse_coreduction(style, 4);
    for (const Formula& f : support::random_corpus(300)) {
      const LevelVerdict early = decide_via_sparse(f, g, SparseMode::EarlyAccept);
      const LevelVerdict capped = decide_via_sparse(f, g, SparseMode::CappedContinue);
      const bool truth = brute_force_sat(f);
      EXPECT_EQ(early.satisfiable, truth) << f.text();
      EXPECT_EQ(capped.satisfiable, truth) << f.text();
      if (early.stats.outcome == LevelOutcome::EarlySat) EXPECT_TRUE(truth);
      for (const TreeLevel& level : capped.stats.levels) {
        EXPECT_LE(BigCount(level.nodes.size()), *capped.stats.threshold + 1);
      }
    }
  }
}

TEST(Sparse, RejectsNegativeBound) {
  const SparseCoReductionOracle g("bad", [](const Formula&) { return std::string("1"); }, {"1"},
                                  PolynomialBound({5, -1}), PolynomialBound({1}));
  EXPECT_THROW(decide_via_sparse(parse("x1"), g, SparseMode::EarlyAccept), InvalidBound);
}

TEST(Sparse, ConstantInputUsesNoCalls) {
  const auto g = simulated_sparse_coreduction(SparseStyle::Singleton);
  const LevelVerdict v = decide_via_sparse(parse("T & T"), g, SparseMode::EarlyAccept);
  EXPECT_TRUE(v.satisfiable);
  EXPECT_EQ(v.stats.oracle_calls, 0u);
  EXPECT_EQ(g.calls(), 0u);
}
