#include "selfred/selector_decider.hpp"

#include "selfred/errors.hpp"

namespace selfred {

Assignment PathTrace::assignment() const {
  Assignment out;
  for (const PathStep& step : steps) out[step.split_var] = step.chosen_branch;
  return out;
}

SelectorVerdict decide_via_selector(const Formula& formula, const SelectorOracle& selector) {
  SelectorVerdict result{false, {}};
  PathTrace& trace = result.trace;
  Formula current = simplify(formula);

  while (current.has_vars()) {
    SelfReduction split = self_reduce(current);
    Formula chosen = selector.choose(split.if_true, split.if_false);
    ++trace.oracle_calls;

    bool branch;
    if (chosen == split.if_true) {
      branch = true;
    } else if (chosen == split.if_false) {
      branch = false;
    } else {
      throw OracleContractViolation("selector '" + selector.name() + "' returned " + chosen.key() +
                                    ", which is neither argument");
    }
    trace.steps.push_back({split.split_var, branch, chosen.key()});
    current = branch ? std::move(split.if_true) : std::move(split.if_false);
  }

  trace.final_value = constant_value(current);
  result.satisfiable = trace.final_value;
  return result;
}

}  // namespace selfred
