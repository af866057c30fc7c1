#include "selfred/enum_counter.hpp"

#include <algorithm>
#include <unordered_map>

#include "selfred/errors.hpp"

namespace selfred {

namespace {

NodePtr rename(const NodePtr& node, const std::unordered_map<VarIndex, VarIndex>& to) {
  switch (node->kind()) {
    case NodeKind::Const:
      return node;
    case NodeKind::Var:
      return make_var(to.at(node->var()));
    case NodeKind::Not:
      return make_not(rename(node->children().front(), to));
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<NodePtr> kids;
      kids.reserve(node->children().size());
      for (const auto& c : node->children()) kids.push_back(rename(c, to));
      return node->kind() == NodeKind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
    }
  }
  return node;
}

// Renames the scope of `f`, in order, onto first, first+1, ...
Formula rename_onto(const Formula& f, VarIndex first) {
  std::unordered_map<VarIndex, VarIndex> to;
  std::vector<VarIndex> scope;
  for (VarIndex v : f.vars()) {
    to.emplace(v, first + static_cast<VarIndex>(scope.size()));
    scope.push_back(to.at(v));
  }
  return Formula(rename(f.root_ptr(), to), std::move(scope));
}

DecodedPair split_count(const BigCount& count, std::size_t n, std::size_t m) {
  const BigCount modulus = pow2(m + 1);
  DecodedPair out{count / modulus, count % modulus, false};
  out.in_range = count >= 0 && out.right <= pow2(m) && out.left <= pow2(n);
  return out;
}

}  // namespace

CombineRecipe combine(const Formula& left, const Formula& right, VarIndex first_index) {
  if (left.is_constant() || right.is_constant()) {
    throw ConstantOperand("combiner operands must be non-constant, got " + left.key() + " and " +
                          right.key());
  }
  const std::size_t n = left.var_count();
  const std::size_t m = right.var_count();
  Formula f = rename_onto(left, first_index);
  Formula g = rename_onto(right, first_index + static_cast<VarIndex>(n));
  const auto z = static_cast<VarIndex>(first_index + n + m);
  const VarIndex z_prime = z + 1;

  std::vector<NodePtr> second{make_not(make_var(z))};
  for (VarIndex v : f.vars()) second.push_back(make_var(v));
  second.push_back(g.root_ptr());
  second.push_back(make_var(z_prime));
  NodePtr h = make_or({make_and({f.root_ptr(), make_var(z)}), make_and(std::move(second))});

  std::vector<VarIndex> scope;
  for (VarIndex v = first_index; v <= z_prime; ++v) scope.push_back(v);
  Formula combined(std::move(h), std::move(scope));
  return {std::move(f), std::move(g), n, m, std::move(combined), z, z_prime};
}

DecodedPair decode(const CombineRecipe& recipe, const BigCount& combined_count) {
  return split_count(combined_count, recipe.left_var_count, recipe.right_var_count);
}

NestedRecipe combine3(const Formula& formula, const Formula& left, const Formula& right) {
  CombineRecipe inner = combine(left, right);
  CombineRecipe outer = combine(formula, inner.combined);
  return {std::move(outer), std::move(inner)};
}

DecodedTriple decode3(const NestedRecipe& recipe, const BigCount& combined_count) {
  const DecodedPair outer = decode(recipe.outer, combined_count);
  const DecodedPair inner = decode(recipe.inner, outer.right);
  return {{outer.left, inner.left, inner.right}, outer.in_range && inner.in_range};
}

std::optional<BigCount> Linkage::resolve(const BigCount& child_count) const {
  for (const auto& [key, root] : mapping) {
    if (key == child_count) return root;
  }
  return std::nullopt;
}

LinkDecision link_guesses(std::span<const GuessTriple> survivors) {
  if (survivors.empty()) throw OracleContractViolation("no consistent guess survived");
  LinkDecision out;
  if (survivors.size() == 1 ||
      std::all_of(survivors.begin(), survivors.end(),
                  [&](const GuessTriple& t) { return t.a == survivors.front().a; })) {
    out.resolved = survivors.front().a;
    return out;
  }
  if (survivors.size() != 2) throw OracleContractViolation("more than two guesses");
  const GuessTriple& first = survivors[0];
  const GuessTriple& second = survivors[1];
  if (first.c != second.c) {
    out.side = ChildSide::Right;
    out.mapping = {{{first.c, first.a}, {second.c, second.a}}};
  } else if (first.b != second.b) {
    out.side = ChildSide::Left;
    out.mapping = {{{first.b, first.a}, {second.b, second.a}}};
  } else {
    // a = b + c on both sides makes this unreachable for consistent guesses.
    throw OracleContractViolation("guesses disagree on the root but agree on both children");
  }
  return out;
}

BigCount constant_count(const Formula& formula) {
  return constant_value(formula) ? pow2(formula.var_count()) : BigCount(0);
}

EnumCount count_via_enumerator(const Formula& formula, const TwoEnumeratorOracle& enumerator) {
  EnumCount result;
  Formula current = simplify(formula);
  BigCount resolved;

  for (std::size_t depth = 0;; ++depth) {
    DescentStep step{depth, current.key(), Routing::Constant, {}, std::nullopt, std::nullopt};
    if (current.is_constant()) {
      resolved = constant_count(current);
      step.resolved = resolved;
      result.steps.push_back(std::move(step));
      break;
    }

    SelfReduction split = self_reduce(current);
    const bool left_known = split.if_true.is_constant();
    const bool right_known = split.if_false.is_constant();
    if (left_known && right_known) {
      step.routing = Routing::BothKnown;
      resolved = constant_count(split.if_true) + constant_count(split.if_false);
      step.resolved = resolved;
      result.steps.push_back(std::move(step));
      break;
    }

    // Decode every enumerated value of the packed formula into a triple.
    std::vector<BigCount> values;
    std::vector<DecodedTriple> decoded;
    if (!left_known && !right_known) {
      step.routing = Routing::ThreeWay;
      const NestedRecipe recipe = combine3(current, split.if_true, split.if_false);
      values = enumerator.enumerate(recipe.combined());
      for (const BigCount& v : values) decoded.push_back(decode3(recipe, v));
    } else {
      step.routing = left_known ? Routing::LeftKnown : Routing::RightKnown;
      const Formula& unknown = left_known ? split.if_false : split.if_true;
      const BigCount known = constant_count(left_known ? split.if_true : split.if_false);
      const CombineRecipe recipe = combine(current, unknown);
      values = enumerator.enumerate(recipe.combined);
      for (const BigCount& v : values) {
        const DecodedPair pair = decode(recipe, v);
        GuessTriple t = left_known ? GuessTriple{pair.left, known, pair.right}
                                   : GuessTriple{pair.left, pair.right, known};
        decoded.push_back({std::move(t), pair.in_range});
      }
    }
    ++result.oracle_calls;
    if (values.empty() || values.size() > 2) {
      throw OracleContractViolation("enumerator '" + enumerator.name() + "' returned " +
                                    std::to_string(values.size()) + " values");
    }

    std::vector<GuessTriple> survivors;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const bool ok = decoded[i].in_range && decoded[i].triple.consistent();
      step.guesses.push_back({values[i], decoded[i].triple, decoded[i].in_range, ok});
      if (ok) survivors.push_back(decoded[i].triple);
    }
    if (survivors.empty()) {
      throw OracleContractViolation("every guess of enumerator '" + enumerator.name() +
                                    "' is inconsistent for " + current.key());
    }

    LinkDecision decision = link_guesses(survivors);
    if (decision.resolved) {
      resolved = *decision.resolved;
      step.resolved = resolved;
      result.steps.push_back(std::move(step));
      break;
    }
    Formula& child = decision.side == ChildSide::Left ? split.if_true : split.if_false;
    Linkage link{child, decision.side, decision.mapping, depth};
    step.linkage = link;
    result.steps.push_back(std::move(step));
    result.chain.push_back(std::move(link));
    current = std::move(child);
  }

  // Ripple the settled count back up to the input formula.
  for (auto it = result.chain.rbegin(); it != result.chain.rend(); ++it) {
    std::optional<BigCount> up = it->resolve(resolved);
    if (!up) {
      throw OracleContractViolation("child count " + resolved.str() + " of " + it->child.key() +
                                    " matches neither linked candidate");
    }
    resolved = *up;
  }
  result.count = resolved;
  return result;
}

NaiveFailureReport demonstrate_naive_failure() {
  const TwoEnumeratorOracle h = honest_two_enumerator(EnumeratorStyle::Woeginger);
  auto witness = [&h](Formula root) {
    SelfReduction split = self_reduce(root);
    NaiveFailureWitness w{root,
                          split.if_true,
                          split.if_false,
                          {brute_force_count(root), brute_force_count(split.if_true),
                           brute_force_count(split.if_false)},
                          {h.enumerate(root), h.enumerate(split.if_true), h.enumerate(split.if_false)}};
    return w;
  };
  // x1 & !x1 & x2 has no models; !x1 & x2 has exactly one.
  NodePtr x1 = make_var(1);
  NodePtr x2 = make_var(2);
  NaiveFailureReport report{witness(Formula(make_and({x1, make_not(x1), x2}))),
                            witness(Formula(make_and({make_not(x1), x2}))), false, false};
  report.identical_guess_sets = report.first.guess_sets == report.second.guess_sets;
  report.root_counts_differ = report.first.counts[0] != report.second.counts[0];
  return report;
}

std::string_view to_string(Routing routing) {
  switch (routing) {
    case Routing::Constant:
      return "constant";
    case Routing::BothKnown:
      return "both_known";
    case Routing::LeftKnown:
      return "left_known";
    case Routing::RightKnown:
      return "right_known";
    case Routing::ThreeWay:
      return "three_way";
  }
  return "?";
}

std::string_view to_string(ChildSide side) { return side == ChildSide::Left ? "left" : "right"; }

}  // namespace selfred
