#pragma once

#include <cstddef>
#include <cstdint>

#include "selfred/formula.hpp"

namespace selfred {

/// Seeded random formula in which every variable x1..x_vars occurs at least
/// once and the AST has at most `node_budget` nodes. The same arguments
/// always give the same formula.
///
/// Throws InvalidParams if vars == 0 or the budget is below the smallest
/// such formula (1 node for one variable, vars + 1 otherwise).
Formula generate_random(std::size_t vars, std::size_t node_budget, std::uint64_t seed);

}  // namespace selfred
