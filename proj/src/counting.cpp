#include "selfred/counting.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "selfred/errors.hpp"

namespace selfred {

namespace {

// Truth pattern of the six low variables across 64 consecutive assignments.
constexpr std::array<std::uint64_t, 6> kLowPatterns = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

// Postfix program evaluated 64 assignments per step.
class BlockEvaluator {
 public:
  BlockEvaluator(const Node& root, std::span<const VarIndex> vars) : vars_(vars) {
    compile(root);
  }

  // Stops after the first nonzero block when `stop_at_first` is set.
  std::uint64_t count(bool stop_at_first) {
    const std::size_t n = vars_.size();
    const std::uint64_t blocks = n <= 6 ? 1 : (std::uint64_t{1} << (n - 6));
    const std::uint64_t valid = n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n)) - 1);
    std::uint64_t total = 0;
    for (std::uint64_t block = 0; block < blocks; ++block) {
      const std::uint64_t bits = run(block) & valid;
      total += static_cast<std::uint64_t>(std::popcount(bits));
      if (stop_at_first && total) break;
    }
    return total;
  }

 private:
  enum class Code : std::uint8_t { Var, Const, Not, And, Or };
  struct Op {
    Code code;
    std::uint32_t arg;
  };

  void compile(const Node& node) {
    switch (node.kind()) {
      case NodeKind::Const:
        program_.push_back({Code::Const, node.value() ? 1u : 0u});
        return;
      case NodeKind::Var: {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), node.var());
        program_.push_back({Code::Var, static_cast<std::uint32_t>(it - vars_.begin())});
        return;
      }
      case NodeKind::Not:
        compile(node.child(0));
        program_.push_back({Code::Not, 1});
        return;
      case NodeKind::And:
      case NodeKind::Or:
        for (const auto& c : node.children()) compile(*c);
        program_.push_back({node.kind() == NodeKind::And ? Code::And : Code::Or,
                            static_cast<std::uint32_t>(node.children().size())});
        return;
    }
  }

  std::uint64_t run(std::uint64_t block) {
    stack_.clear();
    for (const Op& op : program_) {
      switch (op.code) {
        case Code::Const:
          stack_.push_back(op.arg ? ~std::uint64_t{0} : 0);
          break;
        case Code::Var:
          if (op.arg < 6) {
            stack_.push_back(kLowPatterns[op.arg]);
          } else {
            stack_.push_back(((block >> (op.arg - 6)) & 1) ? ~std::uint64_t{0} : 0);
          }
          break;
        case Code::Not:
          stack_.back() = ~stack_.back();
          break;
        case Code::And:
        case Code::Or: {
          const std::size_t first = stack_.size() - op.arg;
          std::uint64_t acc = stack_[first];
          for (std::size_t i = first + 1; i < stack_.size(); ++i) {
            acc = op.code == Code::And ? (acc & stack_[i]) : (acc | stack_[i]);
          }
          stack_.resize(first);
          stack_.push_back(acc);
          break;
        }
      }
    }
    return stack_.back();
  }

  std::span<const VarIndex> vars_;
  std::vector<Op> program_;
  std::vector<std::uint64_t> stack_;
};

void check_limit(const Formula& formula, std::size_t limit) {
  if (formula.var_count() > limit) {
    throw TooLarge(std::to_string(formula.var_count()) + " variables exceed the brute-force limit of " +
                   std::to_string(limit));
  }
}

constexpr std::size_t kEnumerateBelow = 16;

class Decomposer {
 public:
  explicit Decomposer(std::size_t limit) : limit_(limit) {}

  // Count over the variables occurring in `node`.
  BigCount count(const NodePtr& node, std::size_t splits) {
    const std::vector<VarIndex> occ = occurring_vars(*node);
    if (occ.size() <= kEnumerateBelow) return enumerate(*node, occ, splits);

    if (node->kind() == NodeKind::Not) {
      return pow2(occ.size()) - count(node->children().front(), splits);
    }
    if (node->is_connective()) {
      auto groups = components(*node);
      if (groups.size() > 1) {
        const bool is_and = node->kind() == NodeKind::And;
        BigCount acc = 1;
        for (auto& group : groups) {
          NodePtr part = is_and ? make_and(std::move(group)) : make_or(std::move(group));
          const std::size_t width = occurring_vars(*part).size();
          const BigCount c = count(part, splits);
          acc *= is_and ? c : pow2(width) - c;
        }
        return is_and ? acc : pow2(occ.size()) - acc;
      }
    }

    const VarIndex v = pick_split(*node);
    BigCount total = 0;
    for (bool value : {true, false}) {
      const Formula reduced = substitute(Formula(node, occ), v, value);
      const std::size_t dropped = reduced.var_count() - occurring_vars(reduced.root()).size();
      total += count(reduced.root_ptr(), splits + 1) << dropped;
    }
    return total;
  }

 private:
  BigCount enumerate(const Node& node, const std::vector<VarIndex>& occ, std::size_t splits) {
    if (occ.size() + splits > limit_) {
      throw TooLarge("model count needs more than " + std::to_string(limit_) +
                     " enumerated variables");
    }
    return BlockEvaluator(node, occ).count(false);
  }

  // Partition children into groups connected through shared variables.
  static std::vector<std::vector<NodePtr>> components(const Node& node) {
    const auto& kids = node.children();
    std::vector<std::size_t> parent(kids.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    std::unordered_map<VarIndex, std::size_t> owner;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (VarIndex v : occurring_vars(*kids[i])) {
        auto [it, inserted] = owner.emplace(v, i);
        if (!inserted) parent[find(i)] = find(it->second);
      }
    }
    std::vector<std::vector<NodePtr>> groups;
    std::unordered_map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      auto [it, inserted] = slot.emplace(find(i), groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(kids[i]);
    }
    return groups;
  }

  // The variable shared by the most children; ties go to the largest index.
  static VarIndex pick_split(const Node& node) {
    std::unordered_map<VarIndex, std::size_t> spread;
    if (node.is_connective()) {
      for (const auto& c : node.children())
        for (VarIndex v : occurring_vars(*c)) ++spread[v];
    } else {
      for (VarIndex v : occurring_vars(node)) spread[v] = 1;
    }
    VarIndex best = 0;
    std::size_t best_spread = 0;
    for (auto [v, s] : spread) {
      if (s > best_spread || (s == best_spread && v > best)) {
        best = v;
        best_spread = s;
      }
    }
    return best;
  }

  std::size_t limit_;
};

}  // namespace

BigCount pow2(std::size_t exponent) { return BigCount(1) << exponent; }

BigCount brute_force_count(const Formula& formula, std::size_t limit) {
  check_limit(formula, limit);
  const std::vector<VarIndex> occ = occurring_vars(formula.root());
  const std::uint64_t models = BlockEvaluator(formula.root(), occ).count(false);
  return BigCount(models) << (formula.var_count() - occ.size());
}

bool brute_force_sat(const Formula& formula, std::size_t limit) {
  check_limit(formula, limit);
  const std::vector<VarIndex> occ = occurring_vars(formula.root());
  return BlockEvaluator(formula.root(), occ).count(true) > 0;
}

BigCount decomposed_count(const Formula& formula, std::size_t limit) {
  const std::size_t occ = occurring_vars(formula.root()).size();
  return Decomposer(limit).count(formula.root_ptr(), 0) << (formula.var_count() - occ);
}

}  // namespace selfred
