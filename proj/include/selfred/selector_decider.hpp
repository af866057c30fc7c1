#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selfred/formula.hpp"
#include "selfred/oracles.hpp"

namespace selfred {

struct PathStep {
  VarIndex split_var;
  bool chosen_branch;
  /// Key of the child the selector returned.
  std::string chosen_formula;
};

/// The single root-to-leaf walk taken through the self-reducibility tree.
struct PathTrace {
  std::vector<PathStep> steps;
  bool final_value = false;
  std::uint64_t oracle_calls = 0;

  /// The branch choices as an assignment to the input's variables.
  Assignment assignment() const;
};

struct SelectorVerdict {
  bool satisfiable;
  PathTrace trace;
};

/// Decides satisfiability with one selector call per variable: split on the
/// least variable, ask f(F_true, F_false), follow whichever child it
/// returns, and evaluate the variable-free formula at the bottom.
///
/// The returned child is compared to F_true by key; if the two children are
/// identical the True branch is taken. Throws OracleContractViolation if the
/// selector returns neither argument.
SelectorVerdict decide_via_selector(const Formula& formula, const SelectorOracle& selector);

}  // namespace selfred
