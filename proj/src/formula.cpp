#include "selfred/formula.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "selfred/errors.hpp"

namespace selfred {

struct NodeBuilder {
  static NodePtr create(NodeKind kind, bool value, VarIndex var, std::vector<NodePtr> children) {
    return NodePtr(new Node(kind, value, var, std::move(children)));
  }
};

std::size_t Node::size() const noexcept {
  std::size_t total = 1;
  for (const auto& c : children_) total += c->size();
  return total;
}

NodePtr make_const(bool value) {
  static const NodePtr kTrue{NodeBuilder::create(NodeKind::Const, true, 0, {})};
  static const NodePtr kFalse{NodeBuilder::create(NodeKind::Const, false, 0, {})};
  return value ? kTrue : kFalse;
}

NodePtr make_var(VarIndex index) {
  if (index == 0) throw InvalidParams("variable indices start at 1");
  return NodeBuilder::create(NodeKind::Var, false, index, {});
}

NodePtr make_not(NodePtr child) {
  return NodeBuilder::create(NodeKind::Not, false, 0, {std::move(child)});
}

namespace {

NodePtr make_connective(NodeKind kind, std::vector<NodePtr> children) {
  std::vector<NodePtr> flat;
  flat.reserve(children.size());
  for (auto& c : children) {
    if (c->kind() == kind) {
      flat.insert(flat.end(), c->children().begin(), c->children().end());
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return make_const(kind == NodeKind::And);
  if (flat.size() == 1) return flat.front();
  return NodeBuilder::create(kind, false, 0, std::move(flat));
}

void write(const Node& node, std::string& out) {
  switch (node.kind()) {
    case NodeKind::Const:
      out += node.value() ? 'T' : 'F';
      return;
    case NodeKind::Var:
      out += 'x';
      out += std::to_string(node.var());
      return;
    case NodeKind::Not: {
      out += '!';
      const Node& c = node.child(0);
      if (c.is_connective()) {
        out += '(';
        write(c, out);
        out += ')';
      } else {
        write(c, out);
      }
      return;
    }
    case NodeKind::And:
    case NodeKind::Or: {
      const bool is_and = node.kind() == NodeKind::And;
      bool first = true;
      for (const auto& c : node.children()) {
        if (!first) out += is_and ? " & " : " | ";
        first = false;
        // Only an Or under an And needs grouping; same-kind chains are flat.
        const bool group = c->is_connective() && c->kind() != node.kind() && is_and;
        if (group) out += '(';
        write(*c, out);
        if (group) out += ')';
      }
      return;
    }
  }
}

void collect(const Node& node, std::vector<VarIndex>& out) {
  if (node.kind() == NodeKind::Var) {
    out.push_back(node.var());
    return;
  }
  for (const auto& c : node.children()) collect(*c, out);
}

using Binding = std::optional<std::pair<VarIndex, bool>>;

// Bottom-up rewrite: optional variable binding, then constant propagation.
// Returns the input pointer when nothing changed.
NodePtr rewrite(const NodePtr& node, const Binding& binding) {
  switch (node->kind()) {
    case NodeKind::Const:
      return node;
    case NodeKind::Var:
      if (binding && binding->first == node->var()) return make_const(binding->second);
      return node;
    case NodeKind::Not: {
      NodePtr c = rewrite(node->children().front(), binding);
      if (c->is_const()) return make_const(!c->value());
      if (c == node->children().front()) return node;
      return make_not(std::move(c));
    }
    case NodeKind::And:
    case NodeKind::Or: {
      const bool is_and = node->kind() == NodeKind::And;
      // And: F annihilates, T is the identity. Or: the reverse.
      const bool annihilator = !is_and;
      std::vector<NodePtr> kept;
      kept.reserve(node->children().size());
      bool changed = false;
      for (const auto& child : node->children()) {
        NodePtr c = rewrite(child, binding);
        if (c != child) changed = true;
        if (c->is_const()) {
          if (c->value() == annihilator) return make_const(annihilator);
          changed = true;
          continue;
        }
        kept.push_back(std::move(c));
      }
      if (!changed) return node;
      return is_and ? make_and(std::move(kept)) : make_or(std::move(kept));
    }
  }
  return node;
}

bool eval(const Node& node, const Assignment& a) {
  switch (node.kind()) {
    case NodeKind::Const:
      return node.value();
    case NodeKind::Var: {
      auto it = a.find(node.var());
      if (it == a.end()) {
        throw IncompleteAssignment("no value for x" + std::to_string(node.var()));
      }
      return it->second;
    }
    case NodeKind::Not:
      return !eval(node.child(0), a);
    case NodeKind::And:
      for (const auto& c : node.children())
        if (!eval(*c, a)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& c : node.children())
        if (eval(*c, a)) return true;
      return false;
  }
  return false;
}

}  // namespace

NodePtr make_and(std::vector<NodePtr> children) {
  return make_connective(NodeKind::And, std::move(children));
}

NodePtr make_or(std::vector<NodePtr> children) {
  return make_connective(NodeKind::Or, std::move(children));
}

std::string serialize(const Node& node) {
  std::string out;
  write(node, out);
  return out;
}

std::vector<VarIndex> occurring_vars(const Node& node) {
  std::vector<VarIndex> out;
  collect(node, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Formula::Formula(NodePtr root)
    : root_(std::move(root)), scope_(occurring_vars(*root_)), text_(serialize(*root_)) {}

Formula::Formula(NodePtr root, std::vector<VarIndex> scope)
    : root_(std::move(root)), scope_(std::move(scope)), text_(serialize(*root_)) {
  std::sort(scope_.begin(), scope_.end());
  scope_.erase(std::unique(scope_.begin(), scope_.end()), scope_.end());
  for (VarIndex v : occurring_vars(*root_)) {
    if (!contains_var(v)) {
      throw InvalidParams("x" + std::to_string(v) + " occurs but is not in scope");
    }
  }
}

bool Formula::contains_var(VarIndex v) const noexcept {
  return std::binary_search(scope_.begin(), scope_.end(), v);
}

std::vector<VarIndex> Formula::free_vars() const {
  std::vector<VarIndex> occ = occurring_vars(*root_);
  std::vector<VarIndex> out;
  std::set_difference(scope_.begin(), scope_.end(), occ.begin(), occ.end(),
                      std::back_inserter(out));
  return out;
}

std::string Formula::key() const {
  if (free_vars().empty()) return text_;
  std::string out = text_ + " @ ";
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (i) out += ',';
    out += 'x' + std::to_string(scope_[i]);
  }
  return out;
}

NodePtr simplify(const NodePtr& node) { return rewrite(node, std::nullopt); }

Formula simplify(const Formula& formula) {
  NodePtr out = simplify(formula.root_ptr());
  if (out == formula.root_ptr()) return formula;
  return Formula(std::move(out), {formula.vars().begin(), formula.vars().end()});
}

Formula substitute(const Formula& formula, VarIndex v, bool value) {
  if (!formula.contains_var(v)) {
    throw UnknownVariable("x" + std::to_string(v) + " is not a variable of " +
                          formula.text());
  }
  std::vector<VarIndex> scope;
  scope.reserve(formula.var_count() - 1);
  for (VarIndex u : formula.vars())
    if (u != v) scope.push_back(u);
  return Formula(rewrite(formula.root_ptr(), std::make_pair(v, value)), std::move(scope));
}

SelfReduction self_reduce(const Formula& formula) {
  if (!formula.has_vars()) {
    throw NoVariables("cannot self-reduce the constant formula " + formula.text());
  }
  const VarIndex v = formula.vars().front();
  return {substitute(formula, v, true), substitute(formula, v, false), v};
}

bool evaluate(const Formula& formula, const Assignment& assignment) {
  for (VarIndex v : formula.vars()) {
    if (!assignment.contains(v)) {
      throw IncompleteAssignment("no value for x" + std::to_string(v));
    }
  }
  return eval(formula.root(), assignment);
}

bool constant_value(const Formula& formula) {
  const NodePtr s = simplify(formula.root_ptr());
  if (!s->is_const()) {
    throw InvalidParams(formula.text() + " is not constant");
  }
  return s->value();
}

}  // namespace selfred
