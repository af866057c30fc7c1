#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace selfred {

using VarIndex = std::uint32_t;

enum class NodeKind : std::uint8_t { Const, Var, Not, And, Or };

class Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression node. Build through the `make_*` functions, which
/// keep And/Or chains flat so the canonical text is unique per tree.
class Node {
 public:
  NodeKind kind() const noexcept { return kind_; }
  bool value() const noexcept { return value_; }
  VarIndex var() const noexcept { return var_; }
  const std::vector<NodePtr>& children() const noexcept { return children_; }
  const Node& child(std::size_t i) const { return *children_.at(i); }

  bool is_const() const noexcept { return kind_ == NodeKind::Const; }
  bool is_connective() const noexcept {
    return kind_ == NodeKind::And || kind_ == NodeKind::Or;
  }

  /// Number of AST nodes in this subtree.
  std::size_t size() const noexcept;

  friend struct NodeBuilder;

 private:
  Node(NodeKind kind, bool value, VarIndex var, std::vector<NodePtr> children)
      : kind_(kind), value_(value), var_(var), children_(std::move(children)) {}

  NodeKind kind_;
  bool value_;
  VarIndex var_;
  std::vector<NodePtr> children_;
};

NodePtr make_const(bool value);
/// Throws InvalidParams for index 0.
NodePtr make_var(VarIndex index);
NodePtr make_not(NodePtr child);
/// Same-operator children are spliced in. One child returns that child;
/// no children returns the identity constant.
NodePtr make_and(std::vector<NodePtr> children);
NodePtr make_or(std::vector<NodePtr> children);

/// Canonical text: minimal parentheses, single spaces around `&` and `|`.
std::string serialize(const Node& node);

/// Sorted, duplicate-free indices occurring in the subtree.
std::vector<VarIndex> occurring_vars(const Node& node);

/// A propositional formula over an explicit variable scope.
///
/// The scope is the set of variables the formula is a function of. It
/// starts as the occurring variables and shrinks by exactly one index per
/// substitution, even when simplification removes further occurrences, so
/// model counts over the scope obey count(F) = count(F|v=T) + count(F|v=F).
class Formula {
 public:
  /// Scope is the set of occurring variables.
  explicit Formula(NodePtr root);
  /// Throws InvalidParams unless every occurring variable is in `scope`.
  Formula(NodePtr root, std::vector<VarIndex> scope);

  static Formula constant(bool value) { return Formula(make_const(value)); }

  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  /// The scope, ascending.
  std::span<const VarIndex> vars() const noexcept { return scope_; }
  std::size_t var_count() const noexcept { return scope_.size(); }
  bool has_vars() const noexcept { return !scope_.empty(); }
  bool contains_var(VarIndex v) const noexcept;

  /// True when the expression is a single constant (scope may be nonempty).
  bool is_constant() const noexcept { return root_->is_const(); }

  /// Canonical serialization of the expression; its byte length is the
  /// encoding length |F|.
  const std::string& text() const noexcept { return text_; }
  std::size_t encoding_length() const noexcept { return text_.size(); }

  /// Variables in scope that no longer occur in the expression.
  std::vector<VarIndex> free_vars() const;

  /// Text plus, when some scope variable does not occur, a " @ x2,x5"
  /// suffix listing the whole scope. Two formulas are structurally equal
  /// iff their keys are equal.
  std::string key() const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.text_ == b.text_ && a.scope_ == b.scope_;
  }

 private:
  NodePtr root_;
  std::vector<VarIndex> scope_;
  std::string text_;
};

/// Map from variable index to truth value.
using Assignment = std::map<VarIndex, bool>;

/// Constant propagation to a fixed point: the four rules
/// T&y=y, T|y=T, !T=F, !F=T and their duals F&y=F, F|y=y. Scope is kept.
Formula simplify(const Formula& formula);
NodePtr simplify(const NodePtr& node);

/// simplify(F[x_v := b]) over scope vars(F) \ {v}.
/// Throws UnknownVariable if v is not in scope.
Formula substitute(const Formula& formula, VarIndex v, bool value);

struct SelfReduction {
  Formula if_true;
  Formula if_false;
  VarIndex split_var;
};

/// Splits on the least variable in scope. Throws NoVariables on an empty scope.
SelfReduction self_reduce(const Formula& formula);

/// Throws IncompleteAssignment if some scope variable is unassigned.
/// Entries outside the scope are ignored.
bool evaluate(const Formula& formula, const Assignment& assignment);

/// Value of a formula whose expression is constant.
bool constant_value(const Formula& formula);

}  // namespace selfred
