#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvd/rational.hpp"
#include "mvd/sets.hpp"
#include "mvd/shattering.hpp"
#include "mvd/valuations.hpp"

namespace mvd {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// m items allocated to n bidders, each item in at most dupLimit bundles.
struct BankGround {
    int items = 0;     // m
    int bidders = 0;   // n
    int dupLimit = 1;  // d
};

// One d-duplicate allocation: a bundle mask per bidder.
struct DupAllocation {
    std::vector<Mask> bundles;

    bool operator==(const DupAllocation&) const = default;
    bool operator<(const DupAllocation& o) const { return bundles < o.bundles; }
};

void validateAllocation(const BankGround& g, const DupAllocation& a);

// True iff bundles are pairwise disjoint and cover all items (a partition,
// i.e. a total assignment).
bool isPartition(const BankGround& g, const DupAllocation& a);

// Assignment-vector view for 1-duplicate allocations: per item the bidder
// index, or kUnassigned.
inline constexpr int kUnassigned = -1;
DupAllocation fromAssignment(const BankGround& g, const std::vector<int>& assignment);
std::optional<std::vector<int>> toAssignment(const BankGround& g, const DupAllocation& a);

// A structured allocation family too large to store explicitly. Concrete
// families live in banks.hpp; each one fixes a canonical member order and
// must return the first welfare maximizer in that order.
class ImplicitFamily {
public:
    virtual ~ImplicitFamily() = default;
    virtual std::string familyName() const = 0;
    virtual BankGround ground() const = 0;
    virtual bool contains(const DupAllocation& a) const = 0;
    virtual DupAllocation maxWelfareMember(const std::vector<Valuation>& valuations) const = 0;
    // Enumerates members in canonical order; throws ResourceError past budget.
    virtual void forEachMember(const std::function<void(const DupAllocation&)>& fn,
                               std::uint64_t budget) const = 0;
};

// The bank of an MIR mechanism: an explicit deduplicated allocation list
// (kept in first-occurrence order, which is the tie-breaking order) or an
// implicit family handle.
class AllocationBank {
public:
    static AllocationBank explicitBank(BankGround ground, std::vector<DupAllocation> members);
    static AllocationBank implicitBank(std::shared_ptr<const ImplicitFamily> family);

    const BankGround& ground() const { return ground_; }
    bool isExplicit() const { return family_ == nullptr; }
    const std::vector<DupAllocation>& members() const;
    const ImplicitFamily& family() const;

    bool contains(const DupAllocation& a) const;
    void forEachMember(const std::function<void(const DupAllocation&)>& fn,
                       std::uint64_t budget = kDefaultBudget) const;

private:
    AllocationBank() = default;
    BankGround ground_;
    std::vector<DupAllocation> members_;
    std::shared_ptr<const ImplicitFamily> family_;
};

// An (items, bidders) pair, both nonempty and sorted.
struct PairWitness {
    std::vector<int> items;
    std::vector<int> bidders;
};

// The function class H|_{S,A}: all f : S -> A such that some bank member
// has f^{-1}(y) = S_y & S for every y in A. Members whose traces overlap
// inside S or fail to cover S induce nothing.
FunctionClass restrictPair(const AllocationBank& bank, const std::vector<int>& items,
                           const std::vector<int>& bidders,
                           std::uint64_t budget = kDefaultBudget);

// True iff restrictPair is the full class A^S.
bool isPairShattered(const AllocationBank& bank, const std::vector<int>& items,
                     const std::vector<int>& bidders, std::uint64_t budget = kDefaultBudget);

// Single-index shattering: every subset of S occurs as bidder a's trace in
// H|_{S,Y}.
bool isIndexShattered(const AllocationBank& bank, const std::vector<int>& items, int bidder,
                      std::uint64_t budget = kDefaultBudget);

// First shattered pair in lexicographic (item-subset, bidder-subset) order.
std::optional<PairWitness> findShatteredPair(const AllocationBank& bank, int sizeS, int sizeA,
                                             std::uint64_t budget = kDefaultBudget);

// Least alpha for which the containment/intersection property holds over
// all enumerated (partition or sub-allocation) adversaries; finite=false
// when some adversary is not covered/met at all.
struct AlphaResult {
    bool finite = false;
    Rat alpha;  // meaningful only when finite
};

bool hasContainment(const AllocationBank& bank, const Rat& alpha, bool subAllocations = false,
                    std::uint64_t budget = kDefaultBudget);
AlphaResult minContainmentAlpha(const AllocationBank& bank, bool subAllocations = false,
                                std::uint64_t budget = kDefaultBudget);
bool hasIntersection(const AllocationBank& bank, const Rat& alpha, bool subAllocations = false,
                     std::uint64_t budget = kDefaultBudget);
AlphaResult minIntersectionAlpha(const AllocationBank& bank, bool subAllocations = false,
                                 std::uint64_t budget = kDefaultBudget);

// A size-ceil(m/n) item subset maximizing |restrictPair(bank, S, Y)|, with
// the count; first maximizer in lexicographic order.
struct RestrictionCount {
    std::vector<int> items;
    std::uint64_t count = 0;
};
RestrictionCount largeRestrictionSubset(const AllocationBank& bank,
                                        std::uint64_t budget = kDefaultBudget);

}  // namespace mvd
