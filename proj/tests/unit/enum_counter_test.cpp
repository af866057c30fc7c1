#include <gtest/gtest.h>

#include "selfred/enum_counter.hpp"
#include "selfred/errors.hpp"
#include "selfred/parser.hpp"
#include "support/corpus.hpp"

using namespace selfred;

TEST(Combine, WorkedCounts) {
  struct Case {
    const char* left;
    const char* right;
    int expected;
  };
  for (const Case& c : {Case{"x1", "x1 | x2", 11}, Case{"x1 & !x1", "x1", 1}, Case{"x1", "x1", 5}}) {
    const CombineRecipe r = combine(parse(c.left), parse(c.right));
    EXPECT_EQ(brute_force_count(r.combined), c.expected) << c.left << " / " << c.right;
    EXPECT_EQ(support::naive_count(r.combined), c.expected);
  }
}

TEST(Combine, FreshDisjointVariables) {
  const CombineRecipe r = combine(parse("x3 | x7"), parse("x7 & x2"));
  EXPECT_EQ(r.renamed_left.text(), "x1 | x2");
  EXPECT_EQ(r.renamed_right.text(), "x4 & x3");
  EXPECT_EQ(r.z, 5u);
  EXPECT_EQ(r.z_prime, 6u);
  EXPECT_EQ(r.combined.var_count(), 6u);
}

TEST(Combine, RejectsConstants) {
  EXPECT_THROW(combine(parse("T"), parse("x1")), ConstantOperand);
  EXPECT_THROW(combine(parse("x1"), parse("F")), ConstantOperand);
}

TEST(Decode, WorkedValues) {
  const CombineRecipe m2 = combine(parse("x1"), parse("x1 | x2"));
  const DecodedPair a = decode(m2, 11);
  EXPECT_EQ(a.left, 1);
  EXPECT_EQ(a.right, 3);
  EXPECT_TRUE(a.in_range);

  const CombineRecipe m1 = combine(parse("x1"), parse("x1"));
  const DecodedPair b = decode(m1, 0);
  EXPECT_EQ(b.left, 0);
  EXPECT_EQ(b.right, 0);
  const DecodedPair c = decode(m1, 5);
  EXPECT_EQ(c.left, 1);
  EXPECT_EQ(c.right, 1);
  // right = 3 > 2^m flags a bogus value.
  EXPECT_FALSE(decode(m1, 7).in_range);
  EXPECT_FALSE(decode(m1, 12).in_range);
}

TEST(Combine, IdentityOnRandomPairs) {
  const auto corpus = support::random_corpus(240, 6, 99);
  for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
    const Formula& f = corpus[i];
    const Formula& g = corpus[i + 1];
    const CombineRecipe r = combine(f, g);
    const BigCount cf = brute_force_count(f);
    const BigCount cg = brute_force_count(g);
    const BigCount h = brute_force_count(r.combined);
    EXPECT_EQ(h, cf * pow2(g.var_count() + 1) + cg);
    const DecodedPair back = decode(r, h);
    EXPECT_EQ(back.left, cf);
    EXPECT_EQ(back.right, cg);
    EXPECT_TRUE(back.in_range);
  }
}

TEST(Combine3, TwoClauseExample) {
  const Formula f = parse("(x1 | x2) & (!x1 | x3)");
  const SelfReduction s = self_reduce(f);
  const NestedRecipe r = combine3(f, s.if_true, s.if_false);
  const DecodedTriple t = decode3(r, decomposed_count(r.combined()));
  EXPECT_EQ(t.triple, (GuessTriple{4, 2, 2}));
  EXPECT_TRUE(t.in_range);
  EXPECT_TRUE(t.triple.consistent());
}

TEST(Combine3, TriplesAreConsistent) {
  for (const Formula& f : support::random_corpus(100, 6)) {
    const Formula g = simplify(f);
    if (g.is_constant()) continue;
    const SelfReduction s = self_reduce(g);
    if (s.if_true.is_constant() || s.if_false.is_constant()) continue;
    const NestedRecipe r = combine3(g, s.if_true, s.if_false);
    const DecodedTriple t = decode3(r, decomposed_count(r.combined()));
    EXPECT_EQ(t.triple.a, brute_force_count(g));
    EXPECT_EQ(t.triple.b, brute_force_count(s.if_true));
    EXPECT_EQ(t.triple.c, brute_force_count(s.if_false));
  }
}

TEST(Linkage, WorkedTableRow) {
  const std::vector<GuessTriple> survivors{{100, 83, 17}, {101, 85, 16}};
  const LinkDecision d = link_guesses(survivors);
  EXPECT_FALSE(d.resolved);
  EXPECT_EQ(d.side, ChildSide::Right);
  EXPECT_EQ(d.mapping[0], (std::pair<BigCount, BigCount>{17, 100}));
  EXPECT_EQ(d.mapping[1], (std::pair<BigCount, BigCount>{16, 101}));
}

TEST(Linkage, ResolvesAndFallsBackToLeft) {
  const std::vector<GuessTriple> agree{{5, 2, 3}, {5, 1, 4}};
  EXPECT_EQ(link_guesses(agree).resolved, BigCount(5));
  const std::vector<GuessTriple> left{{5, 2, 3}, {6, 3, 3}};
  const LinkDecision d = link_guesses(left);
  EXPECT_EQ(d.side, ChildSide::Left);
  EXPECT_EQ(d.mapping[0], (std::pair<BigCount, BigCount>{2, 5}));
  EXPECT_THROW(link_guesses({}), OracleContractViolation);
}

TEST(Linkage, Resolve) {
  const Linkage link{parse("x2"), ChildSide::Right, {{{17, 100}, {16, 101}}}, 0};
  EXPECT_EQ(link.resolve(16), BigCount(101));
  EXPECT_FALSE(link.resolve(15));
}

TEST(EnumCount, OrExample) {
  const EnumCount c =
      count_via_enumerator(parse("x1 | x2"), honest_two_enumerator(EnumeratorStyle::ExactPlusOffset, 7));
  EXPECT_EQ(c.count, 3);
  EXPECT_LE(c.oracle_calls, 3u);
}

TEST(EnumCount, ConstantsNeedNoOracle) {
  const auto h = honest_two_enumerator(EnumeratorStyle::Woeginger);
  EXPECT_EQ(count_via_enumerator(parse("T"), h).count, 1);
  EXPECT_EQ(count_via_enumerator(parse("x1 & F"), h).count, 0);
  // Scope survives simplification: x2 is free.
  EXPECT_EQ(count_via_enumerator(parse("(x2 | T) & x1"), h).count, 2);
  EXPECT_EQ(h.calls(), 0u);
}

TEST(EnumCount, AgreesWithBruteForce) {
  for (EnumeratorStyle style : {EnumeratorStyle::ExactPlusOffset, EnumeratorStyle::Woeginger}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto h = honest_two_enumerator(style, seed);
      for (const Formula& f : support::random_corpus(150)) {
        const EnumCount c = count_via_enumerator(f, h);
        EXPECT_EQ(c.count, brute_force_count(f)) << f.text();
        EXPECT_LE(c.oracle_calls, f.var_count() + 1);
        for (const Linkage& link : c.chain) {
          EXPECT_NE(link.mapping[0].first, link.mapping[1].first);
          EXPECT_NE(link.mapping[0].second, link.mapping[1].second);
          EXPECT_TRUE(link.resolve(brute_force_count(link.child)));
        }
      }
    }
  }
}

TEST(EnumCount, RejectsBrokenEnumerators) {
  const TwoEnumeratorOracle empty("empty", [](const Formula&) { return std::vector<BigCount>{}; });
  EXPECT_THROW(count_via_enumerator(parse("(x1 | x2) & x3"), empty), OracleContractViolation);
  const TwoEnumeratorOracle junk("junk", [](const Formula&) { return std::vector<BigCount>{1, 2}; });
  EXPECT_THROW(count_via_enumerator(parse("(x1 | x2) & x3"), junk), OracleContractViolation);
}

TEST(NaiveFailure, Witnesses) {
  const NaiveFailureReport r = demonstrate_naive_failure();
  EXPECT_TRUE(r.identical_guess_sets);
  EXPECT_TRUE(r.root_counts_differ);
  EXPECT_EQ(r.first.counts[0], 0);
  EXPECT_EQ(r.second.counts[0], 1);
  for (const auto* w : {&r.first, &r.second}) {
    for (const auto& set : w->guess_sets) EXPECT_EQ(set, (std::vector<BigCount>{0, 1}));
    EXPECT_EQ(w->counts[0], brute_force_count(w->root));
    EXPECT_EQ(w->counts[1], brute_force_count(w->left));
    EXPECT_EQ(w->counts[2], brute_force_count(w->right));
  }
}
