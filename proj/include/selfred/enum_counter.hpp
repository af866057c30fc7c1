#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "selfred/counting.hpp"
#include "selfred/formula.hpp"
#include "selfred/oracles.hpp"

namespace selfred {

/// H = (F' & z) | (!z & x1 & ... & xn & G' & z'), where F' and G' are F and
/// G renamed onto disjoint contiguous index ranges and x1..xn are all of F'
/// variables. Over its n + m + 2 variables, ||H|| = ||F|| 2^(m+1) + ||G||.
struct CombineRecipe {
  Formula renamed_left;
  Formula renamed_right;
  std::size_t left_var_count;   // n
  std::size_t right_var_count;  // m
  Formula combined;
  VarIndex z;
  VarIndex z_prime;
};

struct DecodedPair {
  BigCount left;
  BigCount right;
  /// left <= 2^n and right <= 2^m. A false flag marks a bogus guess.
  bool in_range;
};

/// Builds the combiner formula. F is renamed onto first_index..first_index+n-1,
/// G onto the next m indices, then z and z'.
/// Throws ConstantOperand if either operand's expression is constant.
CombineRecipe combine(const Formula& left, const Formula& right, VarIndex first_index = 1);

/// left = count / 2^(m+1), right = count mod 2^(m+1).
DecodedPair decode(const CombineRecipe& recipe, const BigCount& combined_count);

/// combine(F, combine(F_left, F_right)).
struct NestedRecipe {
  CombineRecipe outer;
  CombineRecipe inner;
  const Formula& combined() const noexcept { return outer.combined; }
};

/// Candidate counts (a, b, c) for (F, F_left, F_right).
struct GuessTriple {
  BigCount a;
  BigCount b;
  BigCount c;

  bool consistent() const { return a == b + c; }
  friend bool operator==(const GuessTriple&, const GuessTriple&) = default;
};

struct DecodedTriple {
  GuessTriple triple;
  bool in_range;
};

NestedRecipe combine3(const Formula& formula, const Formula& left, const Formula& right);

/// Outer split gives ||F|| and ||inner||, inner split gives ||F_left||, ||F_right||.
DecodedTriple decode3(const NestedRecipe& recipe, const BigCount& combined_count);

enum class ChildSide { Left, Right };

/// One step of the descent: the root count is tied to a child count.
struct Linkage {
  Formula child;
  ChildSide side;
  /// (child candidate, root candidate), in the order the guesses were listed.
  std::array<std::pair<BigCount, BigCount>, 2> mapping;
  std::size_t depth;

  /// Root count for a resolved child count, if it is one of the keys.
  std::optional<BigCount> resolve(const BigCount& child_count) const;
};

/// Outcome of comparing the surviving (consistent, in-range) guesses.
struct LinkDecision {
  /// Set when the survivors agree on ||F||.
  std::optional<BigCount> resolved;
  /// Otherwise which child to descend into and the mapping of its two
  /// candidate counts onto the two root candidates.
  ChildSide side = ChildSide::Right;
  std::array<std::pair<BigCount, BigCount>, 2> mapping{};
};

/// Given one or two surviving guesses: one guess, or two agreeing on a,
/// resolves. Two that disagree on a must differ on b or c; the right child
/// is preferred when both differ. Throws OracleContractViolation on zero
/// guesses or on two disagreeing guesses that agree on both children.
LinkDecision link_guesses(std::span<const GuessTriple> survivors);

enum class Routing {
  Constant,      // F itself is constant: no oracle call
  BothKnown,     // both children constant: sum, no oracle call
  LeftKnown,     // F_left constant: combine(F, F_right)
  RightKnown,    // F_right constant: combine(F, F_left)
  ThreeWay,      // combine(F, combine(F_left, F_right))
};

struct GuessRecord {
  BigCount enumerated;
  GuessTriple triple;
  bool in_range;
  bool survives;
};

/// Trace of one level of the descent.
struct DescentStep {
  std::size_t depth;
  std::string formula;
  Routing routing;
  std::vector<GuessRecord> guesses;
  std::optional<Linkage> linkage;
  std::optional<BigCount> resolved;
};

struct EnumCount {
  BigCount count;
  std::vector<Linkage> chain;
  std::vector<DescentStep> steps;
  std::uint64_t oracle_calls = 0;
};

/// Model count of a formula whose expression is constant: 2^k or 0.
BigCount constant_count(const Formula& formula);

/// Exact model count from a 2-enumerator. At each level the formula and its
/// two children are packed into one combiner formula, the enumerator's
/// guesses are decoded into triples, bogus ones (a != b + c or out of range)
/// are dropped, and either ||F|| is settled or it is linked one-to-one to a
/// child's count and the descent continues into that child. The count found
/// at the bottom is mapped back up through the chain of linkages.
///
/// Throws OracleContractViolation when no guess survives or a resolved child
/// count matches neither linkage key.
EnumCount count_via_enumerator(const Formula& formula, const TwoEnumeratorOracle& enumerator);

/// Two formulas whose root and children all get guess sets {0, 1} from the
/// Woeginger-style enumerator but whose root counts differ, so no function
/// of the three independent guess pairs can give ||F||.
struct NaiveFailureWitness {
  Formula root;
  Formula left;
  Formula right;
  std::array<BigCount, 3> counts;                   // root, left, right
  std::array<std::vector<BigCount>, 3> guess_sets;  // h(root), h(left), h(right)
};

struct NaiveFailureReport {
  NaiveFailureWitness first;
  NaiveFailureWitness second;
  bool identical_guess_sets;
  bool root_counts_differ;
};

NaiveFailureReport demonstrate_naive_failure();

std::string_view to_string(Routing routing);
std::string_view to_string(ChildSide side);

}  // namespace selfred
