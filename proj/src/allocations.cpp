#include "mvd/allocations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mvd/errors.hpp"

namespace mvd {

namespace {

void checkGround(const BankGround& g) {
    if (g.items < 1 || g.items > 62) throw InputError("bank needs 1 <= m <= 62");
    if (g.bidders < 1) throw InputError("bank needs n >= 1");
    if (g.dupLimit < 1) throw InputError("bank needs d >= 1");
}

void checkSortedRange(const std::vector<int>& idx, int bound, const char* what) {
    if (idx.empty()) throw InputError(std::string(what) + " must be nonempty");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= bound)
            throw InputError(std::string(what) + " index out of range: " +
                             std::to_string(idx[i]));
        if (i > 0 && idx[i] <= idx[i - 1])
            throw InputError(std::string(what) + " must be strictly increasing");
    }
}

// n^m (or (n+1)^m) with a budget cut-off; exact while small.
void guardEnumeration(double baseCount, int exponent, std::uint64_t budget, const char* op) {
    const double logCount = exponent * std::log2(baseCount);
    if (logCount > 63 || std::pow(2.0, logCount) > static_cast<double>(budget))
        throw ResourceError(std::string(op) + ": enumeration of " +
                            std::to_string(static_cast<long long>(baseCount)) + "^" +
                            std::to_string(exponent) + " adversaries exceeds the budget of " +
                            std::to_string(budget) + " (use the override to force)");
}

}  // namespace

void validateAllocation(const BankGround& g, const DupAllocation& a) {
    if (static_cast<int>(a.bundles.size()) != g.bidders)
        throw InputError("allocation has " + std::to_string(a.bundles.size()) +
                         " bundles for n=" + std::to_string(g.bidders));
    const Mask full = fullMask(g.items);
    for (Mask b : a.bundles)
        if (!isSubset(b, full)) throw InputError("allocation bundle has out-of-range item");
    for (int x = 0; x < g.items; ++x) {
        int count = 0;
        for (Mask b : a.bundles)
            if (contains(b, x)) ++count;
        if (count > g.dupLimit)
            throw InputError("item " + std::to_string(x) + " appears in " +
                             std::to_string(count) + " bundles, dupLimit is " +
                             std::to_string(g.dupLimit));
    }
}

bool isPartition(const BankGround& g, const DupAllocation& a) {
    Mask seen = 0;
    for (Mask b : a.bundles) {
        if (b & seen) return false;
        seen |= b;
    }
    return seen == fullMask(g.items);
}

DupAllocation fromAssignment(const BankGround& g, const std::vector<int>& assignment) {
    if (static_cast<int>(assignment.size()) != g.items)
        throw InputError("assignment length does not match m");
    DupAllocation a{std::vector<Mask>(g.bidders, 0)};
    for (int x = 0; x < g.items; ++x) {
        const int y = assignment[x];
        if (y == kUnassigned) continue;
        if (y < 0 || y >= g.bidders)
            throw InputError("assignment bidder out of range: " + std::to_string(y));
        a.bundles[y] |= Mask{1} << x;
    }
    return a;
}

std::optional<std::vector<int>> toAssignment(const BankGround& g, const DupAllocation& a) {
    std::vector<int> out(g.items, kUnassigned);
    for (int y = 0; y < g.bidders; ++y) {
        for (Mask b = a.bundles[y]; b;) {
            const int x = std::countr_zero(b);
            b &= b - 1;
            if (out[x] != kUnassigned) return std::nullopt;  // duplicated item
            out[x] = y;
        }
    }
    return out;
}

AllocationBank AllocationBank::explicitBank(BankGround ground,
                                            std::vector<DupAllocation> members) {
    checkGround(ground);
    AllocationBank bank;
    bank.ground_ = ground;
    std::set<DupAllocation> seen;
    for (auto& a : members) {
        validateAllocation(ground, a);
        if (seen.insert(a).second) bank.members_.push_back(std::move(a));
    }
    return bank;
}

AllocationBank AllocationBank::implicitBank(std::shared_ptr<const ImplicitFamily> family) {
    if (!family) throw InputError("implicit bank needs a family");
    AllocationBank bank;
    bank.ground_ = family->ground();
    checkGround(bank.ground_);
    bank.family_ = std::move(family);
    return bank;
}

const std::vector<DupAllocation>& AllocationBank::members() const {
    if (!isExplicit()) throw InputError("members() called on an implicit bank");
    return members_;
}

const ImplicitFamily& AllocationBank::family() const {
    if (isExplicit()) throw InputError("family() called on an explicit bank");
    return *family_;
}

bool AllocationBank::contains(const DupAllocation& a) const {
    validateAllocation(ground_, a);
    if (isExplicit()) return std::find(members_.begin(), members_.end(), a) != members_.end();
    return family_->contains(a);
}

void AllocationBank::forEachMember(const std::function<void(const DupAllocation&)>& fn,
                                   std::uint64_t budget) const {
    if (isExplicit()) {
        if (members_.size() > budget)
            throw ResourceError("explicit bank of " + std::to_string(members_.size()) +
                                " members exceeds the budget of " + std::to_string(budget));
        for (const auto& a : members_) fn(a);
        return;
    }
    family_->forEachMember(fn, budget);
}

namespace {

// Trace of one member on (S, A): the induced f : S -> A, if any.
std::optional<std::vector<int>> inducedFunction(const DupAllocation& member, Mask maskS,
                                                const std::vector<int>& itemsS,
                                                const std::vector<int>& bidders) {
    Mask seen = 0;
    for (int y : bidders) {
        const Mask part = member.bundles[y] & maskS;
        if (part & seen) return std::nullopt;  // overlap inside S
        seen |= part;
    }
    if (seen != maskS) return std::nullopt;  // S not covered by A's traces
    std::vector<int> f(itemsS.size());
    for (std::size_t i = 0; i < itemsS.size(); ++i) {
        for (std::size_t j = 0; j < bidders.size(); ++j) {
            if (contains(member.bundles[bidders[j]], itemsS[i])) {
                f[i] = static_cast<int>(j);
                break;
            }
        }
    }
    return f;
}

std::vector<int> allBidders(int n) {
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    return out;
}

}  // namespace

FunctionClass restrictPair(const AllocationBank& bank, const std::vector<int>& items,
                           const std::vector<int>& bidders, std::uint64_t budget) {
    const auto& g = bank.ground();
    checkSortedRange(items, g.items, "item subset");
    checkSortedRange(bidders, g.bidders, "bidder subset");
    const Mask maskS = indicesToMask(items);
    std::set<std::vector<int>> rows;
    bank.forEachMember(
        [&](const DupAllocation& member) {
            if (auto f = inducedFunction(member, maskS, items, bidders)) rows.insert(*f);
        },
        budget);
    std::vector<LabeledFunction> fs(rows.begin(), rows.end());
    return FunctionClass(GroundPair{static_cast<int>(items.size()),
                                    static_cast<int>(bidders.size())},
                         std::move(fs));
}

bool isPairShattered(const AllocationBank& bank, const std::vector<int>& items,
                     const std::vector<int>& bidders, std::uint64_t budget) {
    const FunctionClass cls = restrictPair(bank, items, bidders, budget);
    return BigInt(cls.size()) == ipow(static_cast<int>(bidders.size()),
                                      static_cast<int>(items.size()));
}

bool isIndexShattered(const AllocationBank& bank, const std::vector<int>& items, int bidder,
                      std::uint64_t budget) {
    const auto& g = bank.ground();
    checkSortedRange(items, g.items, "item subset");
    if (bidder < 0 || bidder >= g.bidders)
        throw InputError("bidder index out of range: " + std::to_string(bidder));
    const Mask maskS = indicesToMask(items);
    const auto everyone = allBidders(g.bidders);
    std::set<Mask> traces;
    bank.forEachMember(
        [&](const DupAllocation& member) {
            if (inducedFunction(member, maskS, items, everyone))
                traces.insert(member.bundles[bidder] & maskS);
        },
        budget);
    return traces.size() == (std::size_t{1} << items.size());
}

std::optional<PairWitness> findShatteredPair(const AllocationBank& bank, int sizeS, int sizeA,
                                             std::uint64_t budget) {
    const auto& g = bank.ground();
    if (sizeS < 1 || sizeS > g.items)
        throw InputError("sizeS out of range: " + std::to_string(sizeS));
    if (sizeA < 1 || sizeA > g.bidders)
        throw InputError("sizeA out of range: " + std::to_string(sizeA));
    for (const auto& s : combinations(g.items, sizeS))
        for (const auto& a : combinations(g.bidders, sizeA))
            if (isPairShattered(bank, s, a, budget)) return PairWitness{s, a};
    return std::nullopt;
}

namespace {

// Enumerates adversary allocations {T_y}: partitions (total assignments) or,
// with subAllocations, all assignments including unassigned items. Calls
// fn(perBidderMask).
template <typename F>
void forEachAdversary(const BankGround& g, bool subAllocations, std::uint64_t budget,
                      const char* op, F&& fn) {
    const int choices = g.bidders + (subAllocations ? 1 : 0);
    guardEnumeration(static_cast<double>(choices), g.items, budget, op);
    std::vector<int> pick(g.items, 0);
    std::vector<Mask> parts(g.bidders, 0);
    while (true) {
        std::fill(parts.begin(), parts.end(), Mask{0});
        for (int x = 0; x < g.items; ++x)
            if (pick[x] < g.bidders) parts[pick[x]] |= Mask{1} << x;
        fn(parts);
        int i = g.items;
        while (i > 0 && ++pick[i - 1] == choices) {
            pick[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
}

std::vector<DupAllocation> materialize(const AllocationBank& bank, std::uint64_t budget) {
    std::vector<DupAllocation> out;
    bank.forEachMember([&](const DupAllocation& a) { out.push_back(a); }, budget);
    return out;
}

}  // namespace

bool hasContainment(const AllocationBank& bank, const Rat& alpha, bool subAllocations,
                    std::uint64_t budget) {
    if (alpha < 1) throw InputError("alpha must be >= 1");
    const auto& g = bank.ground();
    const auto members = materialize(bank, budget);
    bool ok = true;
    forEachAdversary(g, subAllocations, budget, "hasContainment", [&](const std::vector<Mask>& t) {
        if (!ok) return;
        int needed = 0;
        for (Mask ty : t)
            if (ty) ++needed;
        if (needed == 0) return;
        int best = 0;
        for (const auto& member : members) {
            int covered = 0;
            for (int y = 0; y < g.bidders; ++y)
                if (t[y] && isSubset(t[y], member.bundles[y])) ++covered;
            best = std::max(best, covered);
        }
        // covered >= needed / alpha
        if (Rat(best) * alpha < needed) ok = false;
    });
    return ok;
}

AlphaResult minContainmentAlpha(const AllocationBank& bank, bool subAllocations,
                                std::uint64_t budget) {
    const auto& g = bank.ground();
    const auto members = materialize(bank, budget);
    AlphaResult result{true, Rat(1)};
    forEachAdversary(g, subAllocations, budget, "minContainmentAlpha",
                     [&](const std::vector<Mask>& t) {
                         if (!result.finite) return;
                         int needed = 0;
                         for (Mask ty : t)
                             if (ty) ++needed;
                         if (needed == 0) return;
                         int best = 0;
                         for (const auto& member : members) {
                             int covered = 0;
                             for (int y = 0; y < g.bidders; ++y)
                                 if (t[y] && isSubset(t[y], member.bundles[y])) ++covered;
                             best = std::max(best, covered);
                         }
                         if (best == 0) {
                             result.finite = false;
                             return;
                         }
                         const Rat ratio(needed, best);
                         if (ratio > result.alpha) result.alpha = ratio;
                     });
    return result;
}

bool hasIntersection(const AllocationBank& bank, const Rat& alpha, bool subAllocations,
                     std::uint64_t budget) {
    if (alpha < 1) throw InputError("alpha must be >= 1");
    const auto& g = bank.ground();
    const auto members = materialize(bank, budget);
    bool ok = true;
    forEachAdversary(g, subAllocations, budget, "hasIntersection",
                     [&](const std::vector<Mask>& t) {
                         if (!ok) return;
                         int total = 0;
                         for (Mask ty : t) total += popcount(ty);
                         if (total == 0) return;
                         int best = 0;
                         for (const auto& member : members) {
                             int agree = 0;
                             for (int y = 0; y < g.bidders; ++y)
                                 agree += popcount(t[y] & member.bundles[y]);
                             best = std::max(best, agree);
                         }
                         if (Rat(best) * alpha < total) ok = false;
                     });
    return ok;
}

AlphaResult minIntersectionAlpha(const AllocationBank& bank, bool subAllocations,
                                 std::uint64_t budget) {
    const auto& g = bank.ground();
    const auto members = materialize(bank, budget);
    AlphaResult result{true, Rat(1)};
    forEachAdversary(g, subAllocations, budget, "minIntersectionAlpha",
                     [&](const std::vector<Mask>& t) {
                         if (!result.finite) return;
                         int total = 0;
                         for (Mask ty : t) total += popcount(ty);
                         if (total == 0) return;
                         int best = 0;
                         for (const auto& member : members) {
                             int agree = 0;
                             for (int y = 0; y < g.bidders; ++y)
                                 agree += popcount(t[y] & member.bundles[y]);
                             best = std::max(best, agree);
                         }
                         if (best == 0) {
                             result.finite = false;
                             return;
                         }
                         const Rat ratio(total, best);
                         if (ratio > result.alpha) result.alpha = ratio;
                     });
    return result;
}

RestrictionCount largeRestrictionSubset(const AllocationBank& bank, std::uint64_t budget) {
    const auto& g = bank.ground();
    const int size = (g.items + g.bidders - 1) / g.bidders;  // ceil(m/n)
    const auto everyone = allBidders(g.bidders);
    RestrictionCount best;
    for (const auto& s : combinations(g.items, size)) {
        const auto cls = restrictPair(bank, s, everyone, budget);
        if (best.items.empty() || cls.size() > best.count) {
            best.items = s;
            best.count = cls.size();
        }
    }
    return best;
}

}  // namespace mvd
