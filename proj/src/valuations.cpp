#include "mvd/valuations.hpp"

#include <algorithm>

#include "mvd/errors.hpp"
#include "mvd/exact_lp.hpp"

namespace mvd {

namespace {

void checkWeights(int m, const std::vector<Rat>& w) {
    if (static_cast<int>(w.size()) != m)
        throw InputError("weight vector length " + std::to_string(w.size()) +
                         " does not match m=" + std::to_string(m));
    for (const auto& x : w)
        if (x < 0) throw InputError("negative weight " + formatRational(x));
}

void checkBundle(int m, Mask s, const char* what) {
    if (!isSubset(s, fullMask(m)))
        throw InputError(std::string(what) + " contains an out-of-range item");
}

Rat dot(const std::vector<Rat>& w, Mask s) {
    Rat sum = 0;
    for (int i = 0; s; ++i, s >>= 1)
        if (s & 1) sum += w[i];
    return sum;
}

void guardExhaustive(int m, int cap, const char* op) {
    if (m > cap)
        throw ResourceError(std::string(op) + " is exhaustive and capped at m <= " +
                            std::to_string(cap) + ", got m=" + std::to_string(m));
}

}  // namespace

Valuation::Valuation(int m, Data data) : m_(m), data_(std::move(data)) {
    if (m_ < 1 || m_ > 62) throw InputError("valuation needs 1 <= m <= 62");
    std::visit(
        [&](auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SingleMinded>) {
                checkBundle(m_, v.bundle, "single-minded bundle");
            } else if constexpr (std::is_same_v<T, MultiMinded>) {
                for (Mask s : v.accepted) checkBundle(m_, s, "accepted bundle");
                std::sort(v.accepted.begin(), v.accepted.end());
                v.accepted.erase(std::unique(v.accepted.begin(), v.accepted.end()),
                                 v.accepted.end());
            } else if constexpr (std::is_same_v<T, Additive>) {
                checkWeights(m_, v.weights);
            } else if constexpr (std::is_same_v<T, ZeroOneAdditive>) {
                checkBundle(m_, v.support, "0/1-additive support");
            } else if constexpr (std::is_same_v<T, CappedAdditive>) {
                checkWeights(m_, v.weights);
                if (v.cap < 0) throw InputError("capped-additive cap must be nonnegative");
            } else if constexpr (std::is_same_v<T, Xos>) {
                for (const auto& w : v.clauses) checkWeights(m_, w);
            } else if constexpr (std::is_same_v<T, AlmostSingleMinded>) {
                checkBundle(m_, v.bundle, "almost-single-minded bundle");
            } else if constexpr (std::is_same_v<T, ExplicitTable>) {
                if (v.values.size() != (std::size_t{1} << m_))
                    throw InputError("explicit table needs 2^m = " +
                                     std::to_string(std::size_t{1} << m_) + " values, got " +
                                     std::to_string(v.values.size()));
                if (v.values[0] != 0) throw InputError("explicit table must have v(empty) = 0");
                if (v.monotoneDeclared) {
                    for (Mask s = 0; s < v.values.size(); ++s)
                        for (int i = 0; i < m_; ++i)
                            if (!contains(s, i) && v.values[s | (Mask{1} << i)] < v.values[s])
                                throw InputError("table declared monotone but decreases");
                }
            }
        },
        data_);
}

std::string Valuation::kindName() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SingleMinded>) return "single_minded";
            if constexpr (std::is_same_v<T, MultiMinded>) return "multi_minded";
            if constexpr (std::is_same_v<T, Additive>) return "additive";
            if constexpr (std::is_same_v<T, ZeroOneAdditive>) return "zero_one_additive";
            if constexpr (std::is_same_v<T, CappedAdditive>) return "capped_additive";
            if constexpr (std::is_same_v<T, Xos>) return "xos";
            if constexpr (std::is_same_v<T, AlmostSingleMinded>) return "almost_single_minded";
            if constexpr (std::is_same_v<T, ExplicitTable>) return "table";
        },
        data_);
}

Rat Valuation::value(Mask bundle) const {
    checkBundle(m_, bundle, "queried bundle");
    return std::visit(
        [&](const auto& v) -> Rat {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SingleMinded>) {
                return isSubset(v.bundle, bundle) ? 1 : 0;
            } else if constexpr (std::is_same_v<T, MultiMinded>) {
                return std::binary_search(v.accepted.begin(), v.accepted.end(), bundle) ? 1 : 0;
            } else if constexpr (std::is_same_v<T, Additive>) {
                return dot(v.weights, bundle);
            } else if constexpr (std::is_same_v<T, ZeroOneAdditive>) {
                return popcount(bundle & v.support);
            } else if constexpr (std::is_same_v<T, CappedAdditive>) {
                Rat s = dot(v.weights, bundle);
                return s < v.cap ? s : v.cap;
            } else if constexpr (std::is_same_v<T, Xos>) {
                Rat best = 0;
                for (const auto& w : v.clauses) {
                    Rat s = dot(w, bundle);
                    if (s > best) best = s;
                }
                return best;
            } else if constexpr (std::is_same_v<T, AlmostSingleMinded>) {
                Rat tail(popcount(bundle), static_cast<long>(m_) * m_ * m_);
                return (isSubset(v.bundle, bundle) ? Rat(1) : Rat(0)) + tail;
            } else {
                return v.values[bundle];
            }
        },
        data_);
}

std::vector<Rat> Valuation::table() const {
    std::vector<Rat> t(std::size_t{1} << m_);
    for (Mask s = 0; s < t.size(); ++s) t[s] = value(s);
    return t;
}

bool isNormalized(const Valuation& v) { return v.value(0) == 0; }

bool isMonotone(const Valuation& v) {
    guardExhaustive(v.items(), 16, "isMonotone");
    const auto t = v.table();
    const int m = v.items();
    for (Mask s = 0; s < t.size(); ++s)
        for (int i = 0; i < m; ++i)
            if (!contains(s, i) && t[s | (Mask{1} << i)] < t[s]) return false;
    return true;
}

bool isSubmodular(const Valuation& v) {
    guardExhaustive(v.items(), 16, "isSubmodular");
    const auto t = v.table();
    for (Mask s = 0; s < t.size(); ++s)
        for (Mask u = s; u < t.size(); ++u)
            if (t[s | u] + t[s & u] > t[s] + t[u]) return false;
    return true;
}

bool isSubadditive(const Valuation& v) {
    guardExhaustive(v.items(), 16, "isSubadditive");
    const auto t = v.table();
    const Mask full = fullMask(v.items());
    for (Mask s = 0; s <= full; ++s) {
        bool bad = false;
        forEachSubset(full & ~s, [&](Mask u) {
            if (t[s | u] > t[s] + t[u]) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

bool isKLocal(const Valuation& v, int k) {
    guardExhaustive(v.items(), 16, "isKLocal");
    const int m = v.items();
    if (k < 0 || k > m) throw InputError("isKLocal needs 0 <= k <= m");
    const auto t = v.table();
    const Rat slack = t[fullMask(m)] / Rat(2 * static_cast<long>(m) * m);
    for (const auto& pick : combinations(m, k)) {
        const Mask tm = indicesToMask(pick);
        bool ok = true;
        for (Mask s = 0; s < t.size() && ok; ++s)
            if (t[s & tm] < t[s] - slack) ok = false;
        if (ok) return true;
    }
    return false;
}

bool isXos(const Valuation& v) {
    guardExhaustive(v.items(), 8, "isXos");
    const auto t = v.table();
    for (const auto& x : t)
        if (x < 0) return false;  // XOS values are maxima of nonnegative sums

    const int m = v.items();
    for (Mask s = 1; s < t.size(); ++s) {
        if (t[s] == 0) continue;  // w = 0 witnesses the bundle
        // WLOG the witness w is supported on s. Constraints collapse to one
        // per U subset of s with rhs min over T with T & s == U of v(T).
        const auto items = maskToIndices(s);
        const int vars = static_cast<int>(items.size());
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> b;
        forEachSubset(s, [&](Mask u) {
            Rat best;
            bool first = true;
            forEachSubset(fullMask(m) & ~s, [&](Mask rest) {
                const Rat& cand = t[u | rest];
                if (first || cand < best) {
                    best = cand;
                    first = false;
                }
            });
            std::vector<Rat> row(vars, Rat(0));
            for (int j = 0; j < vars; ++j)
                if (contains(u, items[j])) row[j] = 1;
            A.push_back(std::move(row));
            b.push_back(best);
        });
        // feasible iff max of w(s) under the constraints reaches v(s)
        std::vector<Rat> c(vars, Rat(1));
        if (simplexMax(A, b, c) < t[s]) return false;
    }
    return true;
}

}  // namespace mvd
