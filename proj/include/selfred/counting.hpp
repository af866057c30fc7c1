#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

#include "selfred/formula.hpp"

namespace selfred {

/// Unbounded nonnegative model count.
using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultBruteLimit = 24;

/// 2^exponent, exactly.
BigCount pow2(std::size_t exponent);

/// Number of assignments to the scope of `formula` that satisfy it, found by
/// enumerating all 2^k assignments (64 at a time). Scope variables that do
/// not occur contribute a factor of 2 each.
/// Throws TooLarge when var_count() exceeds `limit`.
BigCount brute_force_count(const Formula& formula, std::size_t limit = kDefaultBruteLimit);

/// brute_force_count(F) > 0, stopping at the first satisfying block.
bool brute_force_sat(const Formula& formula, std::size_t limit = kDefaultBruteLimit);

/// Exact model count that splits the expression into variable-disjoint
/// And/Or components and Shannon-expands only when a component is still too
/// large to enumerate. Handles combiner formulas whose scope exceeds the
/// brute-force limit while each operand stays small.
/// Throws TooLarge if a component cannot be decomposed below `limit`
/// occurring variables after `limit` splits.
BigCount decomposed_count(const Formula& formula, std::size_t limit = kDefaultBruteLimit);

}  // namespace selfred
