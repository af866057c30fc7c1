#include <gtest/gtest.h>

#include <set>

#include "selfred/errors.hpp"
#include "selfred/oracles.hpp"
#include "selfred/parser.hpp"
#include "support/corpus.hpp"

using namespace selfred;

TEST(Selector, HonestExamples) {
  const SelectorOracle f = honest_selector();
  const Formula x1 = parse("x1");
  const Formula contra = parse("x1 & !x1");
  EXPECT_EQ(f.choose(x1, contra), x1);
  EXPECT_EQ(f.choose(contra, x1), x1);
  EXPECT_EQ(f.choose(x1, x1), x1);
  EXPECT_EQ(f.choose(contra, parse("x2")), parse("x2"));
  EXPECT_EQ(f.calls(), 4u);
}

TEST(Selector, AdversarialKeepsContract) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const SelectorOracle f = adversarial_selector(seed);
    const auto corpus = support::random_corpus(60, 6);
    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
      const Formula& a = corpus[i];
      const Formula& b = corpus[i + 1];
      const Formula out = f.choose(a, b);
      ASSERT_TRUE(out == a || out == b);
      if (brute_force_sat(a) || brute_force_sat(b)) EXPECT_TRUE(brute_force_sat(out));
      EXPECT_EQ(f.choose(a, a), a);
    }
  }
}

TEST(Selector, AdversarialPicksVaryWithSeed) {
  // Two satisfiable arguments: the pick depends on the seed only.
  const Formula a = parse("x1 | x2");
  const Formula b = parse("x1");
  std::set<std::string> picks;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const Formula out = adversarial_selector(seed).choose(a, b);
    EXPECT_EQ(out, adversarial_selector(seed).choose(a, b));
    picks.insert(out.text());
  }
  EXPECT_EQ(picks.size(), 2u);
}

TEST(Tally, StyleImages) {
  const TallyReductionOracle canonical = simulated_tally_reduction(TallyStyle::Canonical);
  EXPECT_EQ(canonical.map(parse("x1")), "00");
  EXPECT_EQ(canonical.map(parse("x1 & !x1")), "0");
  EXPECT_TRUE(canonical.target_contains("00"));
  EXPECT_FALSE(canonical.target_contains("0"));

  const TallyReductionOracle rich = simulated_tally_reduction(TallyStyle::CollisionRich);
  EXPECT_EQ(rich.map(parse("x1 | x2")), "0");
  EXPECT_EQ(rich.map(parse("x1 & !x1")), kNonTallyToken);
  EXPECT_EQ(rich.calls(), 2u);
}

TEST(Tally, ReductionContractOnCorpus) {
  for (TallyStyle style : {TallyStyle::Canonical, TallyStyle::CollisionRich, TallyStyle::Spread}) {
    const TallyReductionOracle g = simulated_tally_reduction(style);
    for (const Formula& f : support::random_corpus(200)) {
      const std::string image = g.map(f);
      EXPECT_EQ(g.target_contains(image), brute_force_sat(f)) << to_string(style) << " " << f.text();
      if (g.target_contains(image)) EXPECT_TRUE(is_tally(image));
    }
  }
}

TEST(Tally, IsTally) {
  EXPECT_TRUE(is_tally(""));
  EXPECT_TRUE(is_tally("000"));
  EXPECT_FALSE(is_tally("010"));
  EXPECT_FALSE(is_tally(kNonTallyToken));
}

TEST(Sparse, SingletonImages) {
  const SparseCoReductionOracle g = simulated_sparse_coreduction(SparseStyle::Singleton);
  EXPECT_EQ(g.map(parse("x1 & !x1")), "1");
  const std::string sat = g.map(parse("x1"));
  EXPECT_EQ(sat.size(), 17u);
  EXPECT_FALSE(g.target_contains(sat));
  EXPECT_EQ(g.census_bound()(10), 11);
  EXPECT_EQ(g.image_length_bound()(10), 26);
}

TEST(Sparse, ContractOnCorpus) {
  for (SparseStyle style : {SparseStyle::Singleton, SparseStyle::Scatter}) {
    for (std::uint64_t seed : {0u, 5u}) {
      const SparseCoReductionOracle g = simulated_sparse_coreduction(style, seed);
      for (const std::string& s : g.target()) {
        EXPECT_LE(BigCount(g.target().size()), g.census_bound()(BigCount(s.size())));
      }
      std::set<std::string> unsat_images;
      for (const Formula& f : support::random_corpus(200)) {
        const std::string image = g.map(f);
        EXPECT_EQ(g.target_contains(image), !brute_force_sat(f)) << f.text();
        EXPECT_LE(BigCount(image.size()), g.image_length_bound()(BigCount(f.encoding_length())));
        if (!brute_force_sat(f)) unsat_images.insert(image);
      }
      EXPECT_LE(unsat_images.size(), g.target().size());
    }
  }
}

TEST(Sparse, ScatterSatisfiableImagesMostlyDistinct) {
  const SparseCoReductionOracle g = simulated_sparse_coreduction(SparseStyle::Scatter, 1);
  std::set<std::string> images;
  std::size_t sat = 0;
  for (const Formula& f : support::random_corpus(100, 8)) {
    if (!brute_force_sat(f)) continue;
    ++sat;
    images.insert(g.map(f));
  }
  EXPECT_GT(images.size(), sat * 9 / 10);
}

TEST(Enumerator, ExactPlusOffsetContainsCount) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TwoEnumeratorOracle h = honest_two_enumerator(EnumeratorStyle::ExactPlusOffset, seed);
    const auto guesses = h.enumerate(parse("x1 | x2"));
    ASSERT_EQ(guesses.size(), 2u);
    EXPECT_TRUE(guesses[0] == 3 || guesses[1] == 3);
    EXPECT_LT(guesses[0], guesses[1]);
  }
}

TEST(Enumerator, WoegingerSmallCounts) {
  const TwoEnumeratorOracle h = honest_two_enumerator(EnumeratorStyle::Woeginger);
  EXPECT_EQ(h.enumerate(parse("x1 & !x1")), (std::vector<BigCount>{0, 1}));
  EXPECT_EQ(h.enumerate(Formula::constant(true)), (std::vector<BigCount>{0, 1}));
  const auto big = h.enumerate(parse("x1 | x2 | x3"));
  EXPECT_TRUE(big[0] == 7 || big[1] == 7);
}

TEST(Enumerator, ContractOnCorpus) {
  for (EnumeratorStyle style : {EnumeratorStyle::ExactPlusOffset, EnumeratorStyle::Woeginger}) {
    const TwoEnumeratorOracle h = honest_two_enumerator(style, 3);
    for (const Formula& f : support::random_corpus(200)) {
      const auto guesses = h.enumerate(f);
      ASSERT_GE(guesses.size(), 1u);
      ASSERT_LE(guesses.size(), 2u);
      EXPECT_TRUE(std::is_sorted(guesses.begin(), guesses.end()));
      for (const BigCount& g : guesses) EXPECT_GE(g, 0);
      EXPECT_NE(std::find(guesses.begin(), guesses.end(), brute_force_count(f)), guesses.end());
    }
    EXPECT_EQ(h.calls(), 200u);
  }
}

TEST(Oracles, DeterministicAcrossInstances) {
  for (const Formula& f : support::random_corpus(50)) {
    EXPECT_EQ(simulated_sparse_coreduction(SparseStyle::Scatter, 9).map(f),
              simulated_sparse_coreduction(SparseStyle::Scatter, 9).map(f));
    EXPECT_EQ(honest_two_enumerator(EnumeratorStyle::ExactPlusOffset, 9).enumerate(f),
              honest_two_enumerator(EnumeratorStyle::ExactPlusOffset, 9).enumerate(f));
  }
}

TEST(Oracles, CallCounterResetAndCopy) {
  SelectorOracle f = honest_selector();
  f.choose(parse("x1"), parse("x2"));
  const SelectorOracle copy = f;
  EXPECT_EQ(copy.calls(), 1u);
  f.reset_calls();
  EXPECT_EQ(f.calls(), 0u);
  EXPECT_EQ(copy.calls(), 1u);
}

TEST(PolynomialBound, EvaluatesAndValidates) {
  const PolynomialBound p({3, 0, 2});
  EXPECT_EQ(p(5), 53);
  EXPECT_TRUE(p.is_valid());
  EXPECT_EQ(p.to_string(), "3 + 2n^2");
  EXPECT_FALSE(PolynomialBound({1, -1}).is_valid());
  EXPECT_EQ(PolynomialBound()(7), 0);
}
