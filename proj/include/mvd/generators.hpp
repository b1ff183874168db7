#pragma once

#include <cstdint>

#include "mvd/mechanisms.hpp"

namespace mvd {

// Finite instance streams for ratio sweeps. All streams are deterministic;
// exhaustive ones enumerate in lexicographic order.

// Every n-tuple of single-minded valuations with 1 <= |T_i| <= maxSize.
InstanceSource singleMindedGrid(int m, int n, int maxSize);

// Every placement of min(m,n) pairwise distinct singleton demands on an
// injectively chosen bidder set; remaining bidders bid zero.
InstanceSource disjointSingletonGrid(int m, int n);

// Every n-tuple of 0/1-additive valuations.
InstanceSource zeroOneAdditiveGrid(int m, int n);

// Seeded random subadditive instances (a mix of XOS clause lists and
// capped-additive valuations).
InstanceSource randomSubadditive(int m, int n, int count, std::uint64_t seed);

}  // namespace mvd
