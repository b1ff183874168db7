#pragma once

#include <cstdint>
#include <vector>

#include "mvd/allocations.hpp"

namespace mvd {

// The n constant allocations (all items to one bidder).
AllocationBank trivialBank(int m, int n);

// All |A|^|S| allocations assigning every item of S to a bidder of A, items
// outside S unassigned. Planted-witness construction: shatters (S, A) by
// construction. Member order is lexicographic in the per-item choice.
AllocationBank fullPairBank(int m, int n, const std::vector<int>& items,
                            const std::vector<int>& bidders);

// Constants plus all allocations giving each bidder at most one item.
// Implicit; the exact maximizer is max(best constant, max-weight matching).
// Canonical order: constants by bidder index, then one-item-per-bidder
// allocations by assignment vector (bidder 0 < ... < n-1 < unassigned).
AllocationBank sqrtBank(int m, int n);

// Per item x, a partition of the bidders into l labeled nonempty parts.
struct HYTable {
    int items = 0;
    int bidders = 0;
    std::vector<std::vector<Mask>> parts;  // parts[x][i]: bidder mask of part i
};

// Uniformly random per-item partitions into l parts of size n/l; rejects
// l that does not divide n. Deterministic in the seed.
HYTable randomHY(int m, int n, int l, std::uint64_t seed);

// All total assignments f with some index i such that f(x) avoids part i of
// every item's partition. Implicit; welfare maximization is enumeration-only.
AllocationBank hYBank(const HYTable& table);

// A collection of t partitions of a universe into k labeled (possibly empty)
// parts, as used by the approximate-disjointness construction.
struct PartitionFamily {
    int universeSize = 0;
    int parts = 0;  // k
    std::vector<std::vector<Mask>> partitions;  // partitions[s][i]: element mask
};

// k-wise intersection property: over all index tuples (s_1..s_k),
// part_1(s_1) & ... & part_k(s_k) is empty iff some index repeats (at k = 2
// this is "iff s_1 = s_2"; repeats always force emptiness, so this is the
// strongest satisfiable form).
bool verifyKWise(const PartitionFamily& family);

// Samples t uniform k-part partitions until verifyKWise passes; throws
// ConstructionError (with the attempt count) when retries run out.
PartitionFamily intersectionFamily(int sizeX, int k, int t, std::uint64_t seed, int maxRetries);

}  // namespace mvd
