#include <doctest.h>

#include "mvd/errors.hpp"
#include "mvd/rng.hpp"
#include "mvd/valuations.hpp"

using namespace mvd;

namespace {

// coverage function: v(S) = weight of ground elements hit by any chosen set;
// always normalized, monotone, and submodular
Valuation coverageValuation(Rng& rng, int m, int groundSize) {
    std::vector<Mask> covers(m);
    std::vector<Rat> weight(groundSize);
    for (int i = 0; i < m; ++i) covers[i] = rng.below(Mask{1} << groundSize);
    for (int e = 0; e < groundSize; ++e) weight[e] = Rat(1 + rng.below(4));
    std::vector<Rat> table(std::size_t{1} << m, Rat(0));
    for (Mask s = 1; s < table.size(); ++s) {
        Mask hit = 0;
        for (int i = 0; i < m; ++i)
            if (contains(s, i)) hit |= covers[i];
        for (int e = 0; e < groundSize; ++e)
            if (contains(hit, e)) table[s] += weight[e];
    }
    return Valuation(m, ExplicitTable{std::move(table), true});
}

}  // namespace

TEST_CASE("value evaluation per kind") {
    CHECK(Valuation(3, SingleMinded{0b011}).value(0b111) == 1);
    CHECK(Valuation(3, SingleMinded{0b011}).value(0b101) == 0);
    CHECK(Valuation(3, CappedAdditive{{Rat(1), Rat(1), Rat(1)}, Rat(2)}).value(0b111) == 2);
    CHECK(Valuation(2, AlmostSingleMinded{0b01}).value(0b11) == Rat(5, 4));
    CHECK(Valuation(3, ZeroOneAdditive{0b101}).value(0b111) == 2);
    CHECK(Valuation(2, MultiMinded{{0b01, 0b11}}).value(0b01) == 1);
    CHECK(Valuation(2, MultiMinded{{0b01, 0b11}}).value(0b10) == 0);
    CHECK(Valuation(2, Xos{}).value(0b11) == 0);
    CHECK_THROWS_AS(Valuation(2, SingleMinded{0b01}).value(0b100), InputError);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(Valuation(2, Additive{{Rat(-1), Rat(0)}}), InputError);
    CHECK_THROWS_AS(Valuation(2, Additive{{Rat(1)}}), InputError);
    CHECK_THROWS_AS(Valuation(2, SingleMinded{0b100}), InputError);
    CHECK_THROWS_AS(Valuation(2, ExplicitTable{{Rat(1), Rat(0), Rat(0), Rat(0)}, false}),
                    InputError);
    CHECK_THROWS_AS(Valuation(2, ExplicitTable{{Rat(0), Rat(1), Rat(1), Rat(0)}, true}),
                    InputError);
    CHECK_NOTHROW(Valuation(2, ExplicitTable{{Rat(0), Rat(1), Rat(1), Rat(0)}, false}));
}

TEST_CASE("query metering") {
    QueryLog log;
    Valuation v(3, Additive{{Rat(1), Rat(2), Rat(3)}});
    MeteredValuation mv(v, log);
    mv.value(0b101);
    mv.value(0b010);
    CHECK(log.count == 2);
}

TEST_CASE("basic predicates") {
    Valuation add(3, Additive{{Rat(1), Rat(2), Rat(3)}});
    CHECK(isMonotone(add));
    CHECK(isNormalized(add));
    CHECK(isSubmodular(add));
    CHECK(isSubadditive(add));

    Valuation sm(3, SingleMinded{0b011});
    CHECK(isMonotone(sm));
    CHECK(isNormalized(sm));
    CHECK_FALSE(isSubmodular(sm));  // v(T) = 1 > v({t1}) + v({t2})
    CHECK_FALSE(isSubadditive(sm));

    Valuation table(2, ExplicitTable{{Rat(0), Rat(2), Rat(2), Rat(1)}, false});
    CHECK_FALSE(isMonotone(table));
}

TEST_CASE("isKLocal") {
    Valuation sm(4, SingleMinded{0b0011});
    CHECK(isKLocal(sm, 2));  // v(S & T) = v(S) exactly
    Valuation ones(4, Additive{{Rat(1), Rat(1), Rat(1), Rat(1)}});
    CHECK_FALSE(isKLocal(ones, 2));
    CHECK(isKLocal(ones, 4));  // T = [m] always works
    // additive with support of size k is k-local with zero slack
    Valuation supp(4, Additive{{Rat(2), Rat(0), Rat(3), Rat(0)}});
    CHECK(isKLocal(supp, 2));
}

TEST_CASE("isXos") {
    SUBCASE("constructive witness") {
        Valuation x(3, Xos{{{Rat(3), Rat(0), Rat(0)}, {Rat(0), Rat(2), Rat(2)}}});
        Valuation asTable(3, ExplicitTable{x.table(), false});
        CHECK(isXos(asTable));
    }
    SUBCASE("submodular tables are XOS") {
        Rng rng(7);
        for (int rep = 0; rep < 20; ++rep) {
            const auto v = coverageValuation(rng, 3, 4);
            REQUIRE(isSubmodular(v));
            CHECK(isXos(v));
        }
    }
    SUBCASE("non-subadditive table is not XOS") {
        Valuation bad(2, ExplicitTable{{Rat(0), Rat(1), Rat(1), Rat(3)}, false});
        CHECK_FALSE(isXos(bad));
    }
    SUBCASE("resource guard") {
        CHECK_THROWS_AS(isXos(Valuation(9, SingleMinded{1})), ResourceError);
    }
}

TEST_CASE("hierarchy containments with strictness fixtures") {
    Rng rng(23);

    // 0/1-additive is submodular (and additive is, generally)
    for (int rep = 0; rep < 10; ++rep) {
        Valuation v(4, ZeroOneAdditive{static_cast<Mask>(rng.below(16))});
        CHECK(isSubmodular(v));
    }
    // additive \ 0/1-additive
    CHECK(isSubmodular(Valuation(2, Additive{{Rat(1, 2), Rat(3)}})));

    // submodular \ additive: unit demand
    Valuation unit(3, ExplicitTable{{Rat(0), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1),
                                     Rat(1)},
                                    true});
    CHECK(isSubmodular(unit));
    CHECK(isXos(unit));

    // XOS \ submodular
    Valuation xns(3, Xos{{{Rat(3), Rat(0), Rat(0)}, {Rat(0), Rat(2), Rat(2)}}});
    CHECK_FALSE(isSubmodular(xns));
    CHECK(isXos(Valuation(3, ExplicitTable{xns.table(), false})));
    CHECK(isSubadditive(xns));

    // every XOS-true table is subadditive
    for (int rep = 0; rep < 15; ++rep) {
        const auto v = coverageValuation(rng, 3, 3);
        if (isXos(v)) CHECK(isSubadditive(v));
    }

    // subadditive \ XOS: flat on sizes 1..2, then 2 on the full bundle
    std::vector<Rat> t(8, Rat(1));
    t[0] = 0;
    t[7] = 2;
    Valuation nx(3, ExplicitTable{std::move(t), true});
    CHECK(isSubadditive(nx));
    CHECK_FALSE(isXos(nx));

    // single-minded and multi-minded fixtures are monotone and normalized
    CHECK(isMonotone(Valuation(3, SingleMinded{0b101})));
    CHECK(isNormalized(Valuation(3, SingleMinded{0b101})));
    Valuation mm(3, MultiMinded{{0b011, 0b111, 0b101}});
    CHECK(isMonotone(mm));
    CHECK(isNormalized(mm));
    // single-minded \ multi-minded direction is witnessed by any two
    // incomparable accepted bundles
    Valuation twoMinded(3, MultiMinded{{0b011, 0b101, 0b111}});
    CHECK(isMonotone(twoMinded));
}

TEST_CASE("resource guards on the predicates") {
    CHECK_THROWS_AS(isSubmodular(Valuation(17, SingleMinded{1})), ResourceError);
    CHECK_THROWS_AS(isKLocal(Valuation(17, SingleMinded{1}), 2), ResourceError);
}
