#include "mvd/banks.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "mvd/errors.hpp"
#include "mvd/matching.hpp"
#include "mvd/rng.hpp"

namespace mvd {

AllocationBank trivialBank(int m, int n) {
    std::vector<DupAllocation> members;
    for (int i = 0; i < n; ++i) {
        DupAllocation a{std::vector<Mask>(n, 0)};
        a.bundles[i] = fullMask(m);
        members.push_back(std::move(a));
    }
    return AllocationBank::explicitBank(BankGround{m, n, 1}, std::move(members));
}

AllocationBank fullPairBank(int m, int n, const std::vector<int>& items,
                            const std::vector<int>& bidders) {
    if (items.empty() || bidders.empty())
        throw InputError("fullPairBank needs nonempty item and bidder sets");
    for (int x : items)
        if (x < 0 || x >= m) throw InputError("fullPairBank item out of range");
    for (int y : bidders)
        if (y < 0 || y >= n) throw InputError("fullPairBank bidder out of range");

    std::vector<DupAllocation> members;
    std::vector<std::size_t> pick(items.size(), 0);
    while (true) {
        DupAllocation a{std::vector<Mask>(n, 0)};
        for (std::size_t i = 0; i < items.size(); ++i)
            a.bundles[bidders[pick[i]]] |= Mask{1} << items[i];
        members.push_back(std::move(a));
        std::size_t i = items.size();
        while (i > 0 && ++pick[i - 1] == bidders.size()) {
            pick[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return AllocationBank::explicitBank(BankGround{m, n, 1}, std::move(members));
}

namespace {

class SqrtFamily : public ImplicitFamily {
public:
    SqrtFamily(int m, int n) : g_{m, n, 1} {}

    std::string familyName() const override { return "sqrt"; }
    BankGround ground() const override { return g_; }

    bool contains(const DupAllocation& a) const override {
        const Mask full = fullMask(g_.items);
        for (int i = 0; i < g_.bidders; ++i) {
            if (a.bundles[i] == full) {
                bool othersEmpty = true;
                for (int j = 0; j < g_.bidders; ++j)
                    if (j != i && a.bundles[j]) othersEmpty = false;
                if (othersEmpty) return true;
            }
        }
        Mask seen = 0;
        for (Mask b : a.bundles) {
            if (popcount(b) > 1) return false;
            if (b & seen) return false;
            seen |= b;
        }
        return true;
    }

    DupAllocation maxWelfareMember(const std::vector<Valuation>& vals) const override {
        const int m = g_.items, n = g_.bidders;
        const Mask full = fullMask(m);
        Rat emptySum = 0;
        std::vector<Rat> empty(n);
        for (int i = 0; i < n; ++i) {
            empty[i] = vals[i].value(0);
            emptySum += empty[i];
        }

        int bestConst = 0;
        Rat bestConstVal;
        for (int i = 0; i < n; ++i) {
            const Rat v = emptySum - empty[i] + vals[i].value(full);
            if (i == 0 || v > bestConstVal) {
                bestConstVal = v;
                bestConst = i;
            }
        }

        // gain of giving item x to bidder i, clamped so skipping is free
        std::vector<std::vector<Rat>> gain(n, std::vector<Rat>(m, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int x = 0; x < m; ++x) {
                const Rat gpair = vals[i].value(Mask{1} << x) - empty[i];
                if (gpair > 0) gain[i][x] = gpair;
            }
        const Rat matchVal = emptySum + maxWeightMatching(gain);

        if (bestConstVal >= matchVal) {
            DupAllocation a{std::vector<Mask>(n, 0)};
            a.bundles[bestConst] = full;
            return a;
        }

        // lex-least assignment vector achieving matchVal
        std::vector<int> assignment(m, kUnassigned);
        std::vector<bool> usedBidder(n, false);
        Rat fixedTrue = 0;
        for (int x = 0; x < m; ++x) {
            for (int choice = 0; choice <= n; ++choice) {
                const bool unassigned = (choice == n);
                if (!unassigned && usedBidder[choice]) continue;
                const Rat delta =
                    unassigned ? Rat(0) : vals[choice].value(Mask{1} << x) - empty[choice];
                // best completion on remaining items x+1..m-1 and free bidders
                std::vector<std::vector<Rat>> rest;
                for (int i = 0; i < n; ++i) {
                    if (usedBidder[i] || (!unassigned && i == choice)) continue;
                    std::vector<Rat> row;
                    for (int z = x + 1; z < m; ++z) row.push_back(gain[i][z]);
                    rest.push_back(std::move(row));
                }
                const Rat completion = rest.empty() ? Rat(0) : maxWeightMatching(rest);
                if (emptySum + fixedTrue + delta + completion == matchVal) {
                    assignment[x] = unassigned ? kUnassigned : choice;
                    if (!unassigned) {
                        usedBidder[choice] = true;
                        fixedTrue += delta;
                    }
                    break;
                }
            }
        }
        return fromAssignment(g_, assignment);
    }

    void forEachMember(const std::function<void(const DupAllocation&)>& fn,
                       std::uint64_t budget) const override {
        const int m = g_.items, n = g_.bidders;
        std::uint64_t emitted = 0;
        auto emit = [&](const DupAllocation& a) {
            if (++emitted > budget)
                throw ResourceError("sqrt family enumeration exceeds the budget of " +
                                    std::to_string(budget));
            fn(a);
        };
        for (int i = 0; i < n; ++i) {
            DupAllocation a{std::vector<Mask>(n, 0)};
            a.bundles[i] = fullMask(m);
            emit(a);
        }
        // one-item-per-bidder allocations in assignment lex order; with a
        // single item the constants were already emitted above
        std::vector<int> pick(m, 0);  // 0..n-1 bidder, n = unassigned
        while (true) {
            bool valid = true;
            std::vector<bool> used(n, false);
            for (int x = 0; x < m && valid; ++x) {
                if (pick[x] == n) continue;
                if (used[pick[x]]) valid = false;
                used[pick[x]] = true;
            }
            if (valid && m == 1 && pick[0] < n) valid = false;  // duplicate of a constant
            if (valid) {
                DupAllocation a{std::vector<Mask>(n, 0)};
                for (int x = 0; x < m; ++x)
                    if (pick[x] < n) a.bundles[pick[x]] |= Mask{1} << x;
                emit(a);
            }
            int i = m;
            while (i > 0 && ++pick[i - 1] == n + 1) {
                pick[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
    }

private:
    BankGround g_;
};

class HYFamily : public ImplicitFamily {
public:
    explicit HYFamily(HYTable table) : table_(std::move(table)) {
        g_ = BankGround{table_.items, table_.bidders, 1};
        if (table_.items < 1 || table_.bidders < 1) throw InputError("hY table needs m, n >= 1");
        if (static_cast<int>(table_.parts.size()) != table_.items)
            throw InputError("hY table needs one partition per item");
        const Mask everyone = fullMask(table_.bidders);
        l_ = table_.parts.empty() ? 0 : static_cast<int>(table_.parts[0].size());
        if (l_ < 2) throw InputError("hY table needs l >= 2 parts");
        for (const auto& per : table_.parts) {
            if (static_cast<int>(per.size()) != l_)
                throw InputError("hY table parts must all have the same l");
            Mask seen = 0;
            for (Mask part : per) {
                if (!part) throw InputError("hY table parts must be nonempty");
                if (part & seen) throw InputError("hY table parts must be disjoint");
                seen |= part;
            }
            if (seen != everyone) throw InputError("hY table parts must cover all bidders");
        }
    }

    std::string familyName() const override { return "hy"; }
    BankGround ground() const override { return g_; }
    const HYTable& table() const { return table_; }

    bool contains(const DupAllocation& a) const override {
        if (!isPartition(g_, a)) return false;
        const auto assignment = toAssignment(g_, a);
        for (int i = 0; i < l_; ++i) {
            bool avoids = true;
            for (int x = 0; x < g_.items && avoids; ++x)
                if (mvd::contains(table_.parts[x][i], (*assignment)[x])) avoids = false;
            if (avoids) return true;
        }
        return false;
    }

    DupAllocation maxWelfareMember(const std::vector<Valuation>& vals) const override {
        bool haveBest = false;
        Rat bestVal;
        DupAllocation best;
        forEachMember(
            [&](const DupAllocation& a) {
                Rat w = 0;
                for (int i = 0; i < g_.bidders; ++i) w += vals[i].value(a.bundles[i]);
                if (!haveBest || w > bestVal) {
                    haveBest = true;
                    bestVal = w;
                    best = a;
                }
            },
            kDefaultBudget);
        if (!haveBest) throw Error("hY family is empty");  // cannot happen: l >= 2
        return best;
    }

    void forEachMember(const std::function<void(const DupAllocation&)>& fn,
                       std::uint64_t budget) const override {
        std::uint64_t visited = 0;
        std::vector<int> assignment(g_.items, 0);
        while (true) {
            if (++visited > budget)
                throw ResourceError("hY family enumeration exceeds the budget of " +
                                    std::to_string(budget));
            bool member = false;
            for (int i = 0; i < l_ && !member; ++i) {
                bool avoids = true;
                for (int x = 0; x < g_.items && avoids; ++x)
                    if (mvd::contains(table_.parts[x][i], assignment[x])) avoids = false;
                member = avoids;
            }
            if (member) fn(fromAssignment(g_, assignment));
            int i = g_.items;
            while (i > 0 && ++assignment[i - 1] == g_.bidders) {
                assignment[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
    }

private:
    HYTable table_;
    BankGround g_;
    int l_ = 0;
};

}  // namespace

AllocationBank sqrtBank(int m, int n) {
    return AllocationBank::implicitBank(std::make_shared<SqrtFamily>(m, n));
}

HYTable randomHY(int m, int n, int l, std::uint64_t seed) {
    if (l < 2) throw InputError("randomHY needs l >= 2");
    if (n % l != 0)
        throw InputError("randomHY needs l to divide n, got n=" + std::to_string(n) +
                         ", l=" + std::to_string(l));
    Rng rng(seed);
    HYTable table;
    table.items = m;
    table.bidders = n;
    table.parts.resize(m);
    const int per = n / l;
    std::vector<int> order(n);
    for (int x = 0; x < m; ++x) {
        for (int i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(order);
        table.parts[x].assign(l, 0);
        for (int i = 0; i < n; ++i) table.parts[x][i / per] |= Mask{1} << order[i];
    }
    return table;
}

AllocationBank hYBank(const HYTable& table) {
    return AllocationBank::implicitBank(std::make_shared<HYFamily>(table));
}

bool verifyKWise(const PartitionFamily& family) {
    const int t = static_cast<int>(family.partitions.size());
    const int k = family.parts;
    if (k < 2) throw InputError("partition family needs k >= 2");
    for (const auto& p : family.partitions) {
        if (static_cast<int>(p.size()) != k)
            throw InputError("every partition must have exactly k parts");
        Mask seen = 0;
        for (Mask part : p) {
            if (part & seen) throw InputError("partition parts must be disjoint");
            seen |= part;
        }
        if (seen != fullMask(family.universeSize))
            throw InputError("partition parts must cover the universe");
    }
    if (t == 0) return true;
    // A repeated index at two coordinates meets two disjoint parts of the
    // same partition, so only pairwise-distinct tuples can intersect; the
    // property demands that they all do. At k = 2 "pairwise distinct" and
    // "not all equal" coincide.
    std::vector<int> s(k, 0);
    while (true) {
        Mask inter = family.partitions[s[0]][0];
        bool distinct = true;
        for (int i = 1; i < k; ++i) {
            inter &= family.partitions[s[i]][i];
            for (int j = 0; j < i; ++j)
                if (s[i] == s[j]) distinct = false;
        }
        if ((inter != 0) != distinct) return false;
        int i = k;
        while (i > 0 && ++s[i - 1] == t) {
            s[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return true;
}

PartitionFamily intersectionFamily(int sizeX, int k, int t, std::uint64_t seed, int maxRetries) {
    if (sizeX < 1 || sizeX > 62) throw InputError("intersectionFamily needs 1 <= |X| <= 62");
    if (k < 2) throw InputError("intersectionFamily needs k >= 2");
    if (t < 1) throw InputError("intersectionFamily needs t >= 1");
    if (maxRetries < 1) throw InputError("intersectionFamily needs maxRetries >= 1");
    Rng rng(seed);
    for (int attempt = 1; attempt <= maxRetries; ++attempt) {
        PartitionFamily family;
        family.universeSize = sizeX;
        family.parts = k;
        family.partitions.assign(t, std::vector<Mask>(k, 0));
        for (int s = 0; s < t; ++s)
            for (int e = 0; e < sizeX; ++e)
                family.partitions[s][rng.below(k)] |= Mask{1} << e;
        if (verifyKWise(family)) return family;
    }
    throw ConstructionError("intersectionFamily: no k-wise family found within " +
                                std::to_string(maxRetries) + " attempts",
                            maxRetries);
}

}  // namespace mvd
