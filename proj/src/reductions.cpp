#include "mvd/reductions.hpp"

#include <algorithm>
#include <string>

#include "mvd/errors.hpp"

namespace mvd {

void validatePacking(const PackingInstance& p) {
    if (p.universeSize < 1 || p.universeSize > 62)
        throw InputError("packing needs 1 <= |U| <= 62");
    if (p.threshold < 1) throw InputError("packing needs C >= 1");
    if (p.multiplicity < 2) throw InputError("packing needs k >= 2");
    if (p.sets.empty()) throw InputError("packing needs at least one set");
    for (Mask s : p.sets)
        if (!isSubset(s, fullMask(p.universeSize)))
            throw InputError("packing set has out-of-range element");
}

ReductionOutcome packingToAuction(const PackingInstance& p, const AllocationBank& bank,
                                  const PairWitness& pair, std::uint64_t budget) {
    validatePacking(p);
    const auto& g = bank.ground();
    const int r = static_cast<int>(p.sets.size());
    if (static_cast<int>(pair.bidders.size()) < r)
        throw InputError("pair has fewer bidders than packing sets");
    if (static_cast<int>(pair.items.size()) < p.universeSize)
        throw InputError("pair has fewer items than the packing universe");
    if (!isPairShattered(bank, pair.items, pair.bidders, budget))
        throw ContractError("packingToAuction: the supplied pair is not shattered by the bank");

    AuctionInstance instance;
    instance.items = g.items;
    instance.bidders = g.bidders;
    instance.dupLimit = p.multiplicity - 1;
    instance.valuations.assign(g.bidders, Valuation::zero(g.items));
    for (int j = 0; j < r; ++j) {
        Mask mapped = 0;
        for (Mask s = p.sets[j]; s;) {
            const int e = std::countr_zero(s);
            s &= s - 1;
            mapped |= Mask{1} << pair.items[e];
        }
        instance.valuations[pair.bidders[j]] = Valuation(g.items, SingleMinded{mapped});
    }

    ReductionOutcome out;
    out.welfare = welfareOf(instance, mirAllocate(bank, instance, budget));
    out.decision = out.welfare >= p.threshold;
    out.instance = std::move(instance);
    return out;
}

PackingInstance hypergraphToPacking(const Hypergraph& g) {
    if (g.vertices < 1) throw InputError("hypergraph needs at least one vertex");
    if (g.edges.empty()) throw InputError("hypergraph has no edges, so no uniform edge size");
    const int k = static_cast<int>(g.edges[0].size());
    if (k < 2) throw InputError("hypergraph edges need at least 2 vertices");
    for (const auto& e : g.edges) {
        if (static_cast<int>(e.size()) != k)
            throw InputError("hypergraph is not uniform: edge of size " +
                             std::to_string(e.size()) + " vs " + std::to_string(k));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= g.vertices)
                throw InputError("hypergraph edge vertex out of range");
            if (i > 0 && e[i] <= e[i - 1])
                throw InputError("hypergraph edges must be strictly increasing vertex lists");
        }
    }
    if (g.edges.size() > 62) throw InputError("hypergraph with more than 62 edges");

    PackingInstance p;
    p.universeSize = static_cast<int>(g.edges.size());
    p.sets.assign(g.vertices, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        for (int v : g.edges[e]) p.sets[v] |= Mask{1} << e;
    p.threshold = (g.vertices + 2 * k - 1) / (2 * k);  // ceil(|V| / 2k)
    p.multiplicity = k;
    return p;
}

ReductionOutcome disjointnessToAuction(const DisjointnessInstance& di,
                                       const PartitionFamily& family, const AllocationBank& bank,
                                       const PairWitness& pair, std::uint64_t budget) {
    if (di.indexCount < 1) throw InputError("disjointness needs t >= 1");
    if (di.playerSets.size() < 2) throw InputError("disjointness needs r >= 2 players");
    for (Mask a : di.playerSets)
        if (!isSubset(a, fullMask(di.indexCount)))
            throw InputError("player set has out-of-range index");

    const auto& g = bank.ground();
    const int r = static_cast<int>(di.playerSets.size());
    if (static_cast<int>(pair.bidders.size()) != r)
        throw InputError("pair must have exactly one bidder per player");
    if (family.parts != r)
        throw ContractError("disjointnessToAuction: family must have |pair.bidders| parts");
    if (family.universeSize != static_cast<int>(pair.items.size()))
        throw ContractError("disjointnessToAuction: family universe must be the pair's items");
    if (static_cast<int>(family.partitions.size()) < di.indexCount)
        throw ContractError("disjointnessToAuction: family smaller than the index range");
    if (!verifyKWise(family))
        throw ContractError("disjointnessToAuction: family fails the k-wise check");
    if (!isPairShattered(bank, pair.items, pair.bidders, budget))
        throw ContractError("disjointnessToAuction: the supplied pair is not shattered");

    const int d = r - 1;
    if ((std::uint64_t{1} << g.items) > budget)
        throw ResourceError("disjointnessToAuction: 2^" + std::to_string(g.items) +
                            " bundles exceed the budget of " + std::to_string(budget));

    AuctionInstance instance;
    instance.items = g.items;
    instance.bidders = g.bidders;
    instance.dupLimit = d;
    instance.valuations.assign(g.bidders, Valuation::zero(g.items));
    for (int j = 0; j < r; ++j) {
        // minimal demanded bundles: the mapped parts D_j^s for s in A_j
        std::vector<Mask> minimal;
        for (Mask a = di.playerSets[j]; a;) {
            const int s = std::countr_zero(a);
            a &= a - 1;
            Mask mapped = 0;
            for (Mask part = family.partitions[s][j]; part;) {
                const int e = std::countr_zero(part);
                part &= part - 1;
                mapped |= Mask{1} << pair.items[e];
            }
            minimal.push_back(mapped);
        }
        std::vector<Mask> accepted;
        for (Mask t = 0; t <= fullMask(g.items); ++t) {
            for (Mask need : minimal) {
                if (isSubset(need, t)) {
                    accepted.push_back(t);
                    break;
                }
            }
        }
        instance.valuations[pair.bidders[j]] = Valuation(g.items, MultiMinded{accepted});
    }

    ReductionOutcome out;
    out.welfare = welfareOf(instance, mirAllocate(bank, instance, budget));
    out.decision = out.welfare == r;
    out.instance = std::move(instance);
    return out;
}

}  // namespace mvd
