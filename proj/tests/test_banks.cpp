#include <doctest.h>

#include "mvd/banks.hpp"
#include "mvd/errors.hpp"
#include "mvd/mechanisms.hpp"
#include "mvd/rng.hpp"
#include "oracles.hpp"

using namespace mvd;

namespace {

Rat bankWelfare(const std::vector<Valuation>& vals, const DupAllocation& a) {
    Rat w = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) w += vals[i].value(a.bundles[i]);
    return w;
}

std::vector<Valuation> randomValuations(Rng& rng, int m, int n) {
    std::vector<Valuation> vals;
    for (int i = 0; i < n; ++i) {
        switch (rng.below(4)) {
            case 0: {
                std::vector<Rat> w(m);
                for (int j = 0; j < m; ++j) w[j] = Rat(rng.below(5), 1 + rng.below(2));
                vals.emplace_back(m, Additive{std::move(w)});
                break;
            }
            case 1:
                vals.emplace_back(m, SingleMinded{1 + rng.below(fullMask(m))});
                break;
            case 2: {
                std::vector<Rat> w(m);
                for (int j = 0; j < m; ++j) w[j] = Rat(rng.below(4));
                vals.emplace_back(m, CappedAdditive{std::move(w), Rat(1 + rng.below(5))});
                break;
            }
            default: {
                Xos x;
                for (int c = 0; c < 2; ++c) {
                    std::vector<Rat> w(m);
                    for (int j = 0; j < m; ++j) w[j] = Rat(rng.below(4));
                    x.clauses.push_back(std::move(w));
                }
                vals.emplace_back(m, std::move(x));
                break;
            }
        }
    }
    return vals;
}

}  // namespace

TEST_CASE("trivialBank structure") {
    const auto bank = trivialBank(3, 2);
    CHECK(bank.members().size() == 2);
    CHECK(bank.members()[0].bundles == std::vector<Mask>{0b111, 0});
    CHECK(bank.members()[1].bundles == std::vector<Mask>{0, 0b111});
    // restrictions over two or more items have k-dimension <= 1... in fact
    // no pair with |S| >= 2 is even 2-shattered
    for (const auto& s : combinations(3, 2))
        for (const auto& a : combinations(2, 2)) {
            const auto cls = restrictPair(bank, s, a);
            CHECK(dimK(cls, 2) <= 1);
        }
}

TEST_CASE("fullPairBank") {
    const auto bank = fullPairBank(5, 4, {1, 2, 4}, {0, 3});
    CHECK(bank.members().size() == 8);
    CHECK(isPairShattered(bank, {1, 2, 4}, {0, 3}));
    // alone on its own ground, containment is perfect
    const auto own = fullPairBank(2, 2, {0, 1}, {0, 1});
    const auto r = minContainmentAlpha(own);
    REQUIRE(r.finite);
    CHECK(r.alpha == 1);
    CHECK_THROWS_AS(fullPairBank(3, 2, {0, 5}, {0}), InputError);
}

TEST_CASE("sqrt bank membership") {
    const auto bank = sqrtBank(3, 2);
    CHECK(bank.contains(DupAllocation{{0b111, 0}}));          // constant
    CHECK(bank.contains(DupAllocation{{0b001, 0b010}}));      // matching
    CHECK(bank.contains(DupAllocation{{0, 0}}));              // nothing assigned
    CHECK_FALSE(bank.contains(DupAllocation{{0b011, 0b100}}));
}

TEST_CASE("sqrt bank member enumeration matches its membership test") {
    const auto bank = sqrtBank(3, 2);
    std::set<DupAllocation> seen;
    bank.forEachMember([&](const DupAllocation& a) {
        CHECK(bank.contains(a));
        CHECK(seen.insert(a).second);  // no duplicates
    });
    // every member of the ground that satisfies the shape is enumerated
    std::size_t expected = 0;
    for (const auto& a : oracles::allAllocations(3, 2))
        if (bank.contains(a)) ++expected;
    CHECK(seen.size() == expected);
}

TEST_CASE("sqrt bank maximizer equals explicit enumeration") {
    Rng rng(77);
    for (int rep = 0; rep < 60; ++rep) {
        const int m = 2 + static_cast<int>(rng.below(3));  // 2..4
        const int n = 1 + static_cast<int>(rng.below(4));  // 1..4
        const auto bank = sqrtBank(m, n);
        const auto vals = randomValuations(rng, m, n);
        const auto best = bank.family().maxWelfareMember(vals);
        CHECK(bank.contains(best));
        Rat bestEnum;
        bool first = true;
        bank.forEachMember([&](const DupAllocation& a) {
            const Rat w = bankWelfare(vals, a);
            if (first || w > bestEnum) {
                bestEnum = w;
                first = false;
            }
        });
        CHECK(bankWelfare(vals, best) == bestEnum);
    }
}

TEST_CASE("sqrt bank maximizer is canonical under ties") {
    // all-zero valuations: everything ties; the first constant must win
    const auto bank = sqrtBank(3, 2);
    std::vector<Valuation> zeros{Valuation::zero(3), Valuation::zero(3)};
    const auto best = bank.family().maxWelfareMember(zeros);
    CHECK(best.bundles == std::vector<Mask>{0b111, 0});
}

TEST_CASE("randomHY") {
    const auto table = randomHY(4, 6, 3, 99);
    CHECK(table.parts.size() == 4);
    for (const auto& per : table.parts) {
        REQUIRE(per.size() == 3);
        Mask seen = 0;
        for (Mask part : per) {
            CHECK(popcount(part) == 2);  // n/l
            CHECK((part & seen) == 0);
            seen |= part;
        }
        CHECK(seen == fullMask(6));
    }
    CHECK(randomHY(4, 6, 3, 99).parts == table.parts);       // deterministic
    CHECK(randomHY(4, 6, 3, 100).parts != table.parts);      // seed-sensitive
    CHECK_THROWS_AS(randomHY(3, 5, 2, 1), InputError);       // l does not divide n
    CHECK_THROWS_AS(randomHY(3, 4, 1, 1), InputError);
}

TEST_CASE("hY bank membership and enumeration") {
    const auto table = randomHY(3, 4, 2, 5);
    const auto bank = hYBank(table);
    std::size_t members = 0;
    bank.forEachMember(
        [&](const DupAllocation& a) {
            ++members;
            CHECK(bank.contains(a));
            CHECK(isPartition(bank.ground(), a));
        },
        100000);
    // cross-check membership against the definition on all partitions
    std::size_t expected = 0;
    for (const auto& a : oracles::allPartitions(3, 4)) {
        const auto assignment = toAssignment(bank.ground(), a);
        bool isMember = false;
        for (int i = 0; i < 2 && !isMember; ++i) {
            bool avoids = true;
            for (int x = 0; x < 3 && avoids; ++x)
                if (contains(table.parts[x][i], (*assignment)[x])) avoids = false;
            isMember = avoids;
        }
        if (isMember) ++expected;
        CHECK(bank.contains(a) == isMember);
    }
    CHECK(members == expected);
    // functions avoiding part 0 everywhere are members by definition
    std::vector<int> assignment(3);
    for (int x = 0; x < 3; ++x) {
        const Mask allowed = fullMask(4) & ~table.parts[x][0];
        assignment[x] = maskToIndices(allowed)[0];
    }
    CHECK(bank.contains(fromAssignment(bank.ground(), assignment)));
}

TEST_CASE("hY pruned allocations are dominated by members") {
    Rng rng(13);
    for (int seed = 0; seed < 10; ++seed) {
        const int m = 3, n = 4, l = 2;
        const auto table = randomHY(m, n, l, seed);
        const auto bank = hYBank(table);
        // a few random partitions {S_y}
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<Mask> sy(n, 0);
            for (int x = 0; x < m; ++x) sy[rng.below(n)] |= Mask{1} << x;
            for (int i = 0; i < l; ++i) {
                std::vector<Mask> pruned(n, 0);
                for (int y = 0; y < n; ++y) {
                    pruned[y] = sy[y];
                    for (int x = 0; x < m; ++x)
                        if (contains(sy[y], x) && contains(table.parts[x][i], y))
                            pruned[y] &= ~(Mask{1} << x);
                }
                bool dominated = false;
                bank.forEachMember(
                    [&](const DupAllocation& member) {
                        if (dominated) return;
                        bool ok = true;
                        for (int y = 0; y < n; ++y)
                            if (!isSubset(pruned[y], member.bundles[y])) ok = false;
                        dominated = ok;
                    },
                    100000);
                CHECK(dominated);
            }
        }
    }
}

TEST_CASE("hY bad points kill shattering") {
    Rng rng(29);
    // 40 seeded tables here; the acceptance suite runs 200
    for (int seed = 0; seed < 40; ++seed) {
        const int m = 3, n = 4, l = 2;
        const auto table = randomHY(m, n, l, seed);
        const auto bank = hYBank(table);
        for (const auto& s : combinations(m, 2))
            for (const auto& a : combinations(n, 2)) {
                const Mask amask = indicesToMask(a);
                int badPoints = 0;
                for (int x : s) {
                    bool bad = true;
                    for (int i = 0; i < l; ++i)
                        if ((table.parts[x][i] & amask) == 0) bad = false;
                    if (bad) ++badPoints;
                }
                if (badPoints >= l) CHECK_FALSE(isPairShattered(bank, s, a, 100000));
            }
    }
}

TEST_CASE("verifyKWise") {
    PartitionFamily good;
    good.universeSize = 4;
    good.parts = 2;
    good.partitions = {{0b0011, 0b1100}, {0b0101, 0b1010}};
    CHECK(verifyKWise(good));
    CHECK(oracles::kWiseOracle(good));

    PartitionFamily single;
    single.universeSize = 4;
    single.parts = 2;
    single.partitions = {{0b0011, 0b1100}};
    CHECK(verifyKWise(single));

    // two identical partitions: cross tuples have empty intersections
    PartitionFamily dup;
    dup.universeSize = 4;
    dup.parts = 2;
    dup.partitions = {{0b0011, 0b1100}, {0b0011, 0b1100}};
    CHECK_FALSE(verifyKWise(dup));
    CHECK_FALSE(oracles::kWiseOracle(dup));

    PartitionFamily malformed;
    malformed.universeSize = 4;
    malformed.parts = 2;
    malformed.partitions = {{0b0011, 0b0110}};
    CHECK_THROWS_AS(verifyKWise(malformed), InputError);
}

TEST_CASE("verifyKWise agrees with the tuple oracle on random families") {
    Rng rng(55);
    for (int rep = 0; rep < 200; ++rep) {
        const int sizeX = 3 + static_cast<int>(rng.below(6));
        const int k = 2 + static_cast<int>(rng.below(2));
        const int t = 1 + static_cast<int>(rng.below(5));
        PartitionFamily fam;
        fam.universeSize = sizeX;
        fam.parts = k;
        fam.partitions.assign(t, std::vector<Mask>(k, 0));
        for (int s = 0; s < t; ++s)
            for (int e = 0; e < sizeX; ++e)
                fam.partitions[s][rng.below(k)] |= Mask{1} << e;
        CHECK(verifyKWise(fam) == oracles::kWiseOracle(fam));
    }
}

TEST_CASE("intersectionFamily construction") {
    const auto fam = intersectionFamily(16, 2, 6, 1, 200);
    CHECK(fam.partitions.size() == 6);
    CHECK(verifyKWise(fam));
    // reproducible
    const auto fam2 = intersectionFamily(16, 2, 6, 1, 200);
    CHECK(fam.partitions == fam2.partitions);
    // an impossible target exhausts its retries
    CHECK_THROWS_AS(intersectionFamily(2, 2, 40, 3, 5), ConstructionError);
    try {
        intersectionFamily(2, 2, 40, 3, 5);
    } catch (const ConstructionError& e) {
        CHECK(e.attempts == 5);
    }
}
