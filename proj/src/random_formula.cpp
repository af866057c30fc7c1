#include "selfred/random_formula.hpp"

#include <random>
#include <string>
#include <vector>

#include "selfred/errors.hpp"

namespace selfred {

namespace {

// Bounded draws without std::uniform_int_distribution, whose output is
// implementation-defined.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

Formula generate_random(std::size_t vars, std::size_t node_budget, std::uint64_t seed) {
  if (vars == 0) throw InvalidParams("need at least one variable");
  const std::size_t minimum = vars == 1 ? 1 : vars + 1;
  if (node_budget < minimum) {
    throw InvalidParams("node budget " + std::to_string(node_budget) + " cannot hold " +
                        std::to_string(vars) + " variables (minimum " + std::to_string(minimum) + ")");
  }
  Draw draw(seed);

  if (vars > 1 && node_budget < 2 * vars - 1) {
    // Too tight for binary connectives: one flat connective over all variables.
    std::vector<NodePtr> leaves;
    for (std::size_t v = 1; v <= vars; ++v) leaves.push_back(make_var(static_cast<VarIndex>(v)));
    return Formula(draw.coin(50) ? make_and(std::move(leaves)) : make_or(std::move(leaves)));
  }

  // Leaves: every variable once plus extra repeats, leaving room for the
  // binary connectives (leaves - 1) and some negations.
  const std::size_t max_leaves = (node_budget + 1) / 2;
  const std::size_t leaf_count = vars + draw.below(max_leaves - vars + 1);
  std::vector<VarIndex> labels;
  for (std::size_t v = 1; v <= vars; ++v) labels.push_back(static_cast<VarIndex>(v));
  while (labels.size() < leaf_count) labels.push_back(static_cast<VarIndex>(1 + draw.below(vars)));
  for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[draw.below(i)]);

  std::size_t spare = node_budget - (2 * leaf_count - 1);
  std::vector<NodePtr> pool;
  for (VarIndex v : labels) {
    NodePtr leaf = make_var(v);
    if (spare > 0 && draw.coin(30)) {
      leaf = make_not(std::move(leaf));
      --spare;
    }
    pool.push_back(std::move(leaf));
  }
  while (pool.size() > 1) {
    const std::size_t i = draw.below(pool.size());
    NodePtr a = std::move(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    const std::size_t j = draw.below(pool.size());
    NodePtr b = std::move(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    NodePtr joined = draw.coin(50) ? make_and({std::move(a), std::move(b)})
                                   : make_or({std::move(a), std::move(b)});
    if (spare > 0 && draw.coin(15)) {
      joined = make_not(std::move(joined));
      --spare;
    }
    pool.push_back(std::move(joined));
  }
  return Formula(std::move(pool.front()));
}

}  // namespace selfred
