#pragma once

#include <cstdint>
#include <vector>

#include "mvd/allocations.hpp"
#include "mvd/banks.hpp"
#include "mvd/mechanisms.hpp"

namespace mvd {

// r sets over a universe, a target count C, and the covering multiplicity k
// that separates the promise cases.
struct PackingInstance {
    int universeSize = 0;
    std::vector<Mask> sets;
    int threshold = 1;     // C
    int multiplicity = 2;  // k
};

void validatePacking(const PackingInstance& p);

// k-uniform hypergraph.
struct Hypergraph {
    int vertices = 0;
    std::vector<std::vector<int>> edges;
};

// r players, each holding a subset of {0..indexCount-1}.
struct DisjointnessInstance {
    int indexCount = 0;  // t
    std::vector<Mask> playerSets;
};

// Constructions never verify the promise themselves; the flag records that.
struct ReductionOutcome {
    AuctionInstance instance;
    Rat welfare;
    bool decision = false;
    bool promiseChecked = false;
};

// Embeds the packing instance into a pair shattered by the bank: bidders of
// the pair bid single-minded on their mapped sets, everyone else zero, with
// k-1 duplicates. decision = (MIR welfare >= C).
ReductionOutcome packingToAuction(const PackingInstance& p, const AllocationBank& bank,
                                  const PairWitness& pair,
                                  std::uint64_t budget = kDefaultBudget);

// Universe = hyperedges, S_v = edges containing v, C = ceil(|V| / 2k),
// multiplicity = edge size.
PackingInstance hypergraphToPacking(const Hypergraph& g);

// Embeds approximate disjointness through a k-wise intersection family of
// partitions of the pair's items into |pair.bidders| = d+1 parts. decision =
// (MIR welfare == d+1).
ReductionOutcome disjointnessToAuction(const DisjointnessInstance& di,
                                       const PartitionFamily& family, const AllocationBank& bank,
                                       const PairWitness& pair,
                                       std::uint64_t budget = kDefaultBudget);

}  // namespace mvd
