#pragma once

#include <vector>

#include "mvd/rational.hpp"

namespace mvd {

// Maximum total weight of a (not necessarily perfect) matching between rows
// and columns of a rectangular weight matrix; pairs with negative weight are
// never forced, so the result is >= 0. Exact O(k^3) Hungarian reduction.
Rat maxWeightMatching(const std::vector<std::vector<Rat>>& weights);

}  // namespace mvd
