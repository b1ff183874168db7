#include "mvd/generators.hpp"

#include <memory>

#include "mvd/errors.hpp"
#include "mvd/rng.hpp"

namespace mvd {

namespace {

AuctionInstance baseInstance(int m, int n) {
    AuctionInstance instance;
    instance.items = m;
    instance.bidders = n;
    instance.dupLimit = 1;
    return instance;
}

}  // namespace

InstanceSource singleMindedGrid(int m, int n, int maxSize) {
    if (maxSize < 1 || maxSize > m) throw InputError("singleMindedGrid needs 1 <= maxSize <= m");
    auto bundles = std::make_shared<std::vector<Mask>>();
    for (Mask s = 1; s <= fullMask(m); ++s)
        if (popcount(s) <= maxSize) bundles->push_back(s);
    auto odo = std::make_shared<std::vector<std::size_t>>(n, 0);
    auto done = std::make_shared<bool>(false);
    return [m, n, bundles, odo, done]() -> std::optional<AuctionInstance> {
        if (*done) return std::nullopt;
        AuctionInstance instance = baseInstance(m, n);
        for (int i = 0; i < n; ++i)
            instance.valuations.push_back(Valuation(m, SingleMinded{(*bundles)[(*odo)[i]]}));
        int i = n;
        while (i > 0 && ++(*odo)[i - 1] == bundles->size()) {
            (*odo)[i - 1] = 0;
            --i;
        }
        if (i == 0) *done = true;
        return instance;
    };
}

InstanceSource disjointSingletonGrid(int m, int n) {
    const int w = std::min(m, n);
    auto bidderSets = std::make_shared<std::vector<std::vector<int>>>(combinations(n, w));
    auto items = std::make_shared<std::vector<int>>(w, 0);
    auto setIdx = std::make_shared<std::size_t>(0);
    auto advance = [m, w](std::vector<int>& pick) {
        int i = w;
        while (i > 0 && ++pick[i - 1] == m) {
            pick[i - 1] = 0;
            --i;
        }
        return i != 0;
    };
    auto injective = [w](const std::vector<int>& pick) {
        Mask seen = 0;
        for (int i = 0; i < w; ++i) {
            if (contains(seen, pick[i])) return false;
            seen |= Mask{1} << pick[i];
        }
        return true;
    };
    auto done = std::make_shared<bool>(false);
    return [=]() -> std::optional<AuctionInstance> {
        if (*done) return std::nullopt;
        while (!injective(*items)) {
            if (!advance(*items)) {
                std::fill(items->begin(), items->end(), 0);
                if (++*setIdx == bidderSets->size()) {
                    *done = true;
                    return std::nullopt;
                }
            }
        }
        AuctionInstance instance = baseInstance(m, n);
        instance.valuations.assign(n, Valuation::zero(m));
        const auto& bidders = (*bidderSets)[*setIdx];
        for (int i = 0; i < w; ++i)
            instance.valuations[bidders[i]] =
                Valuation(m, SingleMinded{Mask{1} << (*items)[i]});
        if (!advance(*items)) {
            std::fill(items->begin(), items->end(), 0);
            if (++*setIdx == bidderSets->size()) *done = true;
        }
        return instance;
    };
}

InstanceSource zeroOneAdditiveGrid(int m, int n) {
    auto odo = std::make_shared<std::vector<Mask>>(n, 0);
    auto done = std::make_shared<bool>(false);
    const Mask top = fullMask(m);
    return [m, n, odo, done, top]() -> std::optional<AuctionInstance> {
        if (*done) return std::nullopt;
        AuctionInstance instance = baseInstance(m, n);
        for (int i = 0; i < n; ++i)
            instance.valuations.push_back(Valuation(m, ZeroOneAdditive{(*odo)[i]}));
        int i = n;
        while (i > 0 && (*odo)[i - 1]++ == top) {
            (*odo)[i - 1] = 0;
            --i;
        }
        if (i == 0) *done = true;
        return instance;
    };
}

InstanceSource randomSubadditive(int m, int n, int count, std::uint64_t seed) {
    if (count < 0) throw InputError("randomSubadditive needs count >= 0");
    auto rng = std::make_shared<Rng>(seed);
    auto left = std::make_shared<int>(count);
    return [m, n, rng, left]() -> std::optional<AuctionInstance> {
        if (*left == 0) return std::nullopt;
        --*left;
        AuctionInstance instance = baseInstance(m, n);
        for (int i = 0; i < n; ++i) {
            if (rng->below(2) == 0) {
                const int clauses = 1 + static_cast<int>(rng->below(3));
                Xos x;
                for (int c = 0; c < clauses; ++c) {
                    std::vector<Rat> w(m);
                    for (int j = 0; j < m; ++j) w[j] = Rat(rng->below(5));
                    x.clauses.push_back(std::move(w));
                }
                instance.valuations.push_back(Valuation(m, std::move(x)));
            } else {
                std::vector<Rat> w(m);
                for (int j = 0; j < m; ++j) w[j] = Rat(rng->below(5));
                instance.valuations.push_back(
                    Valuation(m, CappedAdditive{std::move(w), Rat(1 + rng->below(6))}));
            }
        }
        return instance;
    };
}

}  // namespace mvd
