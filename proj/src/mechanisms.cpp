#include "mvd/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mvd/errors.hpp"

namespace mvd {

void validateInstance(const AuctionInstance& instance) {
    if (instance.items < 1 || instance.items > 62)
        throw InputError("instance needs 1 <= m <= 62");
    if (instance.bidders < 1) throw InputError("instance needs n >= 1");
    if (instance.dupLimit < 1) throw InputError("instance needs d >= 1");
    if (static_cast<int>(instance.valuations.size()) != instance.bidders)
        throw InputError("instance has " + std::to_string(instance.valuations.size()) +
                         " valuations for n=" + std::to_string(instance.bidders));
    for (const auto& v : instance.valuations)
        if (v.items() != instance.items)
            throw InputError("valuation over m=" + std::to_string(v.items()) +
                             " in an instance with m=" + std::to_string(instance.items));
}

BankGround instanceGround(const AuctionInstance& instance) {
    return BankGround{instance.items, instance.bidders, instance.dupLimit};
}

Rat welfareOf(const AuctionInstance& instance, const DupAllocation& allocation) {
    validateAllocation(instanceGround(instance), allocation);
    Rat w = 0;
    for (int i = 0; i < instance.bidders; ++i)
        w += instance.valuations[i].value(allocation.bundles[i]);
    return w;
}

namespace {

void checkBankInstance(const AllocationBank& bank, const AuctionInstance& instance) {
    validateInstance(instance);
    const auto& g = bank.ground();
    if (g.items != instance.items || g.bidders != instance.bidders)
        throw InputError("bank ground does not match the instance");
    if (g.dupLimit > instance.dupLimit)
        throw InputError("bank allows more duplicates than the instance");
}

}  // namespace

DupAllocation mirAllocate(const AllocationBank& bank, const AuctionInstance& instance,
                          std::uint64_t budget) {
    checkBankInstance(bank, instance);
    if (bank.isExplicit()) {
        const auto& members = bank.members();
        if (members.empty()) throw InputError("mirAllocate on an empty bank");
        const DupAllocation* best = nullptr;
        Rat bestW;
        for (const auto& member : members) {
            Rat w = 0;
            for (int i = 0; i < instance.bidders; ++i)
                w += instance.valuations[i].value(member.bundles[i]);
            if (!best || w > bestW) {
                best = &member;
                bestW = w;
            }
        }
        return *best;
    }
    (void)budget;
    return bank.family().maxWelfareMember(instance.valuations);
}

std::vector<Rat> vcgPayments(const AllocationBank& bank, const AuctionInstance& instance,
                             const DupAllocation& chosen, std::uint64_t budget) {
    return paymentsUnder(PaymentRule::ClarkePivot, bank, instance, chosen, budget);
}

std::vector<Rat> paymentsUnder(PaymentRule rule, const AllocationBank& bank,
                               const AuctionInstance& instance, const DupAllocation& chosen,
                               std::uint64_t budget) {
    checkBankInstance(bank, instance);
    validateAllocation(instanceGround(instance), chosen);
    std::vector<Rat> payments(instance.bidders);
    for (int i = 0; i < instance.bidders; ++i) {
        AuctionInstance without = instance;
        without.valuations[i] = Valuation::zero(instance.items);
        const DupAllocation pivotAlloc = mirAllocate(bank, without, budget);
        Rat pivot = 0;
        Rat othersAtChosen = 0;
        for (int j = 0; j < instance.bidders; ++j) {
            if (j == i) continue;
            pivot += instance.valuations[j].value(pivotAlloc.bundles[j]);
            othersAtChosen += instance.valuations[j].value(chosen.bundles[j]);
        }
        payments[i] = (rule == PaymentRule::ClarkePivot) ? pivot - othersAtChosen : pivot;
    }
    return payments;
}

Outcome runMir(const AllocationBank& bank, const AuctionInstance& instance,
               std::uint64_t budget) {
    Outcome out;
    out.allocation = mirAllocate(bank, instance, budget);
    out.payments = vcgPayments(bank, instance, out.allocation, budget);
    out.welfare = welfareOf(instance, out.allocation);
    return out;
}

Mask pruneToK(const MeteredValuation& v, Mask bundle, int k) {
    if (k < 0) throw InputError("pruneToK needs k >= 0");
    Mask u = bundle;
    while (popcount(u) > k) {
        const Rat whole = v.value(u);
        int dropped = -1;
        Rat bestVal;
        for (Mask rest = u; rest;) {
            const int x = std::countr_zero(rest);
            rest &= rest - 1;
            const Rat val = v.value(u & ~(Mask{1} << x));
            if (val > whole)
                throw ContractError("pruneToK: valuation increased when an item was removed");
            if (dropped < 0 || val > bestVal) {
                dropped = x;
                bestVal = val;
            }
        }
        u &= ~(Mask{1} << dropped);
    }
    return u;
}

DupAllocation greedyKLocal(const AuctionInstance& instance, int k, QueryLog* queries) {
    validateInstance(instance);
    if (k < 1) throw InputError("greedyKLocal needs k >= 1");
    QueryLog local;
    QueryLog& log = queries ? *queries : local;
    std::vector<MeteredValuation> metered;
    metered.reserve(instance.bidders);
    for (const auto& v : instance.valuations) metered.emplace_back(v, log);

    DupAllocation result{std::vector<Mask>(instance.bidders, 0)};
    Mask u = fullMask(instance.items);
    std::vector<bool> remaining(instance.bidders, true);
    int left = instance.bidders;
    while (u && left > 0) {
        int pick = -1;
        Rat pickVal;
        for (int i = 0; i < instance.bidders; ++i) {
            if (!remaining[i]) continue;
            const Rat val = metered[i].value(u);
            if (pick < 0 || val > pickVal) {
                pick = i;
                pickVal = val;
            }
        }
        const Mask awarded =
            (popcount(u) <= k) ? u : pruneToK(metered[pick], u, k);
        result.bundles[pick] = awarded;
        remaining[pick] = false;
        --left;
        u &= ~awarded;
    }
    return result;
}

namespace {

// Scaled integer welfare enumeration over per-item receiver subsets. Int is
// std::int64_t when the scaled values fit, BigInt otherwise.
template <typename Int>
Int enumerateOpt(const std::vector<std::vector<Int>>& scaled, const std::vector<Mask>& choices,
                 int items, int bidders) {
    std::vector<Mask> bundles(bidders, 0);
    Int best = 0;
    bool haveBest = false;
    auto rec = [&](auto&& self, int x) -> void {
        if (x == items) {
            Int w = 0;
            for (int i = 0; i < bidders; ++i) w += scaled[i][bundles[i]];
            if (!haveBest || w > best) {
                best = w;
                haveBest = true;
            }
            return;
        }
        const Mask bit = Mask{1} << x;
        for (Mask receivers : choices) {
            for (Mask r = receivers; r;) {
                const int i = std::countr_zero(r);
                r &= r - 1;
                bundles[i] |= bit;
            }
            self(self, x + 1);
            for (Mask r = receivers; r;) {
                const int i = std::countr_zero(r);
                r &= r - 1;
                bundles[i] &= ~bit;
            }
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace

Rat optWelfare(const AuctionInstance& instance, std::uint64_t budget) {
    validateInstance(instance);
    const int m = instance.items, n = instance.bidders;
    const int d = std::min(instance.dupLimit, n);

    std::vector<Mask> choices;
    for (Mask r = 0; r < (Mask{1} << n); ++r)
        if (popcount(r) <= d) choices.push_back(r);

    const double states = m * std::log2(static_cast<double>(choices.size()));
    if (states > 63 || std::pow(2.0, states) > static_cast<double>(budget))
        throw ResourceError("optWelfare: enumeration of " + std::to_string(choices.size()) +
                            "^" + std::to_string(m) + " allocations exceeds the budget of " +
                            std::to_string(budget));

    // Common-denominator scaling so the enumeration runs on integers.
    std::vector<std::vector<Rat>> tables(n);
    BigInt lcmDen = 1;
    for (int i = 0; i < n; ++i) {
        tables[i] = instance.valuations[i].table();
        for (const auto& v : tables[i]) lcmDen = boost::multiprecision::lcm(lcmDen, denominator(v));
    }
    std::vector<std::vector<BigInt>> scaled(n, std::vector<BigInt>(std::size_t{1} << m));
    BigInt maxAbs = 0;
    for (int i = 0; i < n; ++i)
        for (std::size_t s = 0; s < tables[i].size(); ++s) {
            scaled[i][s] = numerator(tables[i][s]) * (lcmDen / denominator(tables[i][s]));
            BigInt a = abs(scaled[i][s]);
            if (a > maxAbs) maxAbs = a;
        }

    const BigInt intLimit = std::numeric_limits<std::int64_t>::max() / (n + 1);
    if (maxAbs <= intLimit) {
        std::vector<std::vector<std::int64_t>> small(n,
                                                     std::vector<std::int64_t>(std::size_t{1} << m));
        for (int i = 0; i < n; ++i)
            for (std::size_t s = 0; s < scaled[i].size(); ++s)
                small[i][s] = static_cast<std::int64_t>(scaled[i][s]);
        return Rat(BigInt(enumerateOpt(small, choices, m, n)), lcmDen);
    }
    return Rat(enumerateOpt(scaled, choices, m, n), lcmDen);
}

AllocatorFn mirAllocator(const AllocationBank& bank, std::uint64_t budget) {
    return [&bank, budget](const AuctionInstance& instance) {
        return mirAllocate(bank, instance, budget);
    };
}

AllocatorFn greedyAllocator(int k) {
    return [k](const AuctionInstance& instance) { return greedyKLocal(instance, k); };
}

RatioReport measureRatio(const AllocatorFn& allocate, const InstanceSource& nextInstance,
                         std::uint64_t budget, const RatioRowFn& onInstance) {
    RatioReport report;
    while (auto instance = nextInstance()) {
        ++report.examined;
        const Rat opt = optWelfare(*instance, budget);
        const Rat achieved = welfareOf(*instance, allocate(*instance));
        if (onInstance) onInstance(report.examined - 1, opt, achieved);
        if (opt == 0 && achieved == 0) {
            ++report.skipped;
            continue;
        }
        if (achieved == 0) {
            if (!report.infinite) {
                report.infinite = true;
                report.witness = *instance;
            }
            continue;
        }
        const Rat ratio = opt / achieved;
        if (!report.hasWorst || ratio > report.worst) {
            report.hasWorst = true;
            report.worst = ratio;
            if (!report.infinite) report.witness = *instance;
        }
    }
    return report;
}

std::set<Mask> mirMenu(const AllocationBank& bank, const std::vector<Valuation>& others, int i,
                       std::uint64_t budget) {
    const auto& g = bank.ground();
    if (i < 0 || i >= g.bidders) throw InputError("menu bidder out of range");
    if (static_cast<int>(others.size()) != g.bidders - 1)
        throw InputError("mirMenu needs exactly n-1 other valuations");
    if (static_cast<std::uint64_t>(g.items) >= 63 ||
        (std::uint64_t{1} << g.items) > budget)
        throw ResourceError("mirMenu: 2^" + std::to_string(g.items) +
                            " bids exceed the budget of " + std::to_string(budget));

    AuctionInstance instance;
    instance.items = g.items;
    instance.bidders = g.bidders;
    instance.dupLimit = g.dupLimit;
    for (int j = 0, o = 0; j < g.bidders; ++j) {
        if (j == i)
            instance.valuations.push_back(Valuation(g.items, AlmostSingleMinded{0}));
        else
            instance.valuations.push_back(others[o++]);
    }

    std::set<Mask> menu;
    for (Mask target = 0; target <= fullMask(g.items); ++target) {
        instance.valuations[i] = Valuation(g.items, AlmostSingleMinded{target});
        menu.insert(mirAllocate(bank, instance, budget).bundles[i]);
    }
    return menu;
}

bool truthfulnessProbe(const AllocationBank& bank, const AuctionInstance& instance, int i,
                       const std::vector<Valuation>& deviations, PaymentRule rule,
                       std::uint64_t budget) {
    checkBankInstance(bank, instance);
    if (i < 0 || i >= instance.bidders) throw InputError("probe bidder out of range");
    const Valuation& truth = instance.valuations[i];

    const DupAllocation honest = mirAllocate(bank, instance, budget);
    const auto honestPay = paymentsUnder(rule, bank, instance, honest, budget);
    const Rat honestUtility = truth.value(honest.bundles[i]) - honestPay[i];

    for (const auto& lie : deviations) {
        AuctionInstance reported = instance;
        reported.valuations[i] = lie;
        const DupAllocation got = mirAllocate(bank, reported, budget);
        const auto pay = paymentsUnder(rule, bank, reported, got, budget);
        const Rat utility = truth.value(got.bundles[i]) - pay[i];
        if (utility > honestUtility) return false;
    }
    return true;
}

}  // namespace mvd
