#pragma once

#include <vector>

#include "mvd/rational.hpp"

namespace mvd {

// Maximizes c.x subject to A x <= b, x >= 0, over exact rationals, with
// every b_i >= 0 (the origin is feasible). Dense tableau simplex with
// Bland's rule, so termination is guaranteed. Throws Error if unbounded.
Rat simplexMax(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
               const std::vector<Rat>& c);

}  // namespace mvd
