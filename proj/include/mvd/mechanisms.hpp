#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "mvd/allocations.hpp"
#include "mvd/valuations.hpp"

namespace mvd {

// A combinatorial auction with d identical copies of each item.
struct AuctionInstance {
    int items = 0;
    int bidders = 0;
    int dupLimit = 1;
    std::vector<Valuation> valuations;
};

void validateInstance(const AuctionInstance& instance);

BankGround instanceGround(const AuctionInstance& instance);

Rat welfareOf(const AuctionInstance& instance, const DupAllocation& allocation);

struct Outcome {
    DupAllocation allocation;
    std::vector<Rat> payments;
    Rat welfare;
};

// The welfare-maximizing bank member under the reported valuations; ties go
// to the bank's canonical order (explicit: list order; implicit: the
// family's order).
DupAllocation mirAllocate(const AllocationBank& bank, const AuctionInstance& instance,
                          std::uint64_t budget = kDefaultBudget);

// Clarke pivot over the same bank:
//   p_i = max_{S in bank} sum_{j != i} v_j(S_j) - sum_{j != i} v_j(chosen_j).
std::vector<Rat> vcgPayments(const AllocationBank& bank, const AuctionInstance& instance,
                             const DupAllocation& chosen, std::uint64_t budget = kDefaultBudget);

// ClarkePivot is the real rule. PivotOnly drops the realized-welfare offset
// and is kept as the negative control: it is not truthful.
enum class PaymentRule { ClarkePivot, PivotOnly };

std::vector<Rat> paymentsUnder(PaymentRule rule, const AllocationBank& bank,
                               const AuctionInstance& instance, const DupAllocation& chosen,
                               std::uint64_t budget = kDefaultBudget);

Outcome runMir(const AllocationBank& bank, const AuctionInstance& instance,
               std::uint64_t budget = kDefaultBudget);

// Greedy allocation for k-local valuations: repeatedly give the remaining
// bidder with the largest v_i(U) a size-<=k bundle found by pruning. All
// valuation access goes through value queries; the count lands in *queries*
// when provided. Throws ContractError if a non-monotone valuation is noticed.
DupAllocation greedyKLocal(const AuctionInstance& instance, int k, QueryLog* queries = nullptr);

// Drops elements from U (keeping v as high as possible) until k remain;
// uses at most |U|^2 value queries, none when |U| <= k.
Mask pruneToK(const MeteredValuation& v, Mask bundle, int k);

// Exact maximum welfare over all d-duplicate allocations, by exhaustive
// per-item enumeration of receiving bidder subsets. The oracle behind every
// ratio claim.
Rat optWelfare(const AuctionInstance& instance, std::uint64_t budget = kDefaultBudget);

// Worst-case OPT/achieved over a finite instance stream.
struct RatioReport {
    std::uint64_t examined = 0;
    std::uint64_t skipped = 0;  // OPT = achieved = 0
    bool infinite = false;      // some instance had achieved = 0 < OPT
    bool hasWorst = false;
    Rat worst;
    std::optional<AuctionInstance> witness;
};

using AllocatorFn = std::function<DupAllocation(const AuctionInstance&)>;
using InstanceSource = std::function<std::optional<AuctionInstance>()>;

AllocatorFn mirAllocator(const AllocationBank& bank, std::uint64_t budget = kDefaultBudget);
AllocatorFn greedyAllocator(int k);

// onInstance, when set, sees (index, opt, achieved) for every instance.
using RatioRowFn = std::function<void(std::uint64_t, const Rat&, const Rat&)>;
RatioReport measureRatio(const AllocatorFn& allocate, const InstanceSource& nextInstance,
                         std::uint64_t budget = kDefaultBudget,
                         const RatioRowFn& onInstance = {});

// The bundles bidder i can win from the bank by bidding almost-single-minded
// valuations, sweeping all 2^m target bundles; `others` lists the remaining
// bidders' valuations in bidder order.
std::set<Mask> mirMenu(const AllocationBank& bank, const std::vector<Valuation>& others, int i,
                       std::uint64_t budget = kDefaultBudget);

// True iff truthful reporting maximizes bidder i's exact utility against
// every deviation in the set.
bool truthfulnessProbe(const AllocationBank& bank, const AuctionInstance& instance, int i,
                       const std::vector<Valuation>& deviations,
                       PaymentRule rule = PaymentRule::ClarkePivot,
                       std::uint64_t budget = kDefaultBudget);

}  // namespace mvd
