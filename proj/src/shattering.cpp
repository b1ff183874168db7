#include "mvd/shattering.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mvd/errors.hpp"
#include "mvd/sets.hpp"

namespace mvd {

namespace {

void checkGround(const GroundPair& g) {
    if (g.points < 1) throw InputError("function class needs at least one point");
    if (g.labels < 1) throw InputError("function class needs at least one label");
}

void checkK(const GroundPair& g, int k) {
    if (k < 2 || k > g.labels)
        throw InputError("k must satisfy 2 <= k <= nLabels, got k=" + std::to_string(k) +
                         " with nLabels=" + std::to_string(g.labels));
}

void checkPoints(const GroundPair& g, const std::vector<int>& points) {
    if (points.empty()) throw InputError("point set must be nonempty");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 0 || points[i] >= g.points)
            throw InputError("point index out of range: " + std::to_string(points[i]));
        if (i > 0 && points[i] <= points[i - 1])
            throw InputError("point set must be strictly increasing");
    }
}

// Distinct restrictions of the class to the given points.
std::set<std::vector<int>> restrictionSet(const FunctionClass& cls,
                                          const std::vector<int>& points) {
    std::set<std::vector<int>> restr;
    std::vector<int> row(points.size());
    for (const auto& h : cls.functions()) {
        for (std::size_t i = 0; i < points.size(); ++i) row[i] = h[points[i]];
        restr.insert(row);
    }
    return restr;
}

// k^s, saturating at a value larger than any class size we can hold.
std::uint64_t satPow(int k, std::size_t s) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < s; ++i) {
        if (r > (~std::uint64_t{0}) / static_cast<std::uint64_t>(k))
            return ~std::uint64_t{0};
        r *= static_cast<std::uint64_t>(k);
    }
    return r;
}

bool shatteredAgainst(const std::set<std::vector<int>>& restr,
                      const std::vector<std::vector<int>>& labelSets) {
    const std::size_t s = labelSets.size();
    // every required mapping is a distinct element of restr
    std::uint64_t required = 1;
    for (const auto& ls : labelSets) {
        required *= ls.size();
        if (required > restr.size()) return false;
    }
    std::vector<std::size_t> odo(s, 0);
    std::vector<int> f(s);
    while (true) {
        for (std::size_t i = 0; i < s; ++i) f[i] = labelSets[i][odo[i]];
        if (!restr.count(f)) return false;
        std::size_t i = s;
        while (i > 0 && ++odo[i - 1] == labelSets[i - 1].size()) {
            odo[i - 1] = 0;
            --i;
        }
        if (i == 0) return true;
    }
}

}  // namespace

FunctionClass::FunctionClass(GroundPair ground, std::vector<LabeledFunction> functions)
    : ground_(ground), functions_(std::move(functions)) {
    checkGround(ground_);
    for (const auto& h : functions_) {
        if (static_cast<int>(h.size()) != ground_.points)
            throw InputError("function length " + std::to_string(h.size()) +
                             " does not match m=" + std::to_string(ground_.points));
        for (int v : h)
            if (v < 0 || v >= ground_.labels)
                throw InputError("label value out of range: " + std::to_string(v));
    }
    std::sort(functions_.begin(), functions_.end());
    auto dup = std::adjacent_find(functions_.begin(), functions_.end());
    if (dup != functions_.end()) throw InputError("duplicate function in class");
}

bool isKShattered(const FunctionClass& cls, const ShatterWitness& witness) {
    const auto& g = cls.ground();
    checkPoints(g, witness.points);
    if (witness.labelSets.size() != witness.points.size())
        throw InputError("witness has " + std::to_string(witness.labelSets.size()) +
                         " label sets for " + std::to_string(witness.points.size()) + " points");
    std::size_t k = witness.labelSets.empty() ? 0 : witness.labelSets.front().size();
    for (const auto& ls : witness.labelSets) {
        if (ls.size() != k || ls.empty())
            throw InputError("witness label sets must all have the same nonzero size");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (ls[i] < 0 || ls[i] >= g.labels)
                throw InputError("witness label out of range: " + std::to_string(ls[i]));
            if (i > 0 && ls[i] <= ls[i - 1])
                throw InputError("witness label sets must be strictly increasing");
        }
    }
    return shatteredAgainst(restrictionSet(cls, witness.points), witness.labelSets);
}

std::optional<ShatterWitness> findKShatterWitness(const FunctionClass& cls,
                                                  const std::vector<int>& points,
                                                  int k) {
    const auto& g = cls.ground();
    checkK(g, k);
    checkPoints(g, points);
    const auto restr = restrictionSet(cls, points);
    if (restr.size() < satPow(k, points.size())) return std::nullopt;

    // Candidate menus per point: only labels that actually occur there.
    const std::size_t s = points.size();
    std::vector<std::vector<std::vector<int>>> candidates(s);
    for (std::size_t i = 0; i < s; ++i) {
        std::set<int> seen;
        for (const auto& row : restr) seen.insert(row[i]);
        if (seen.size() < static_cast<std::size_t>(k)) return std::nullopt;
        std::vector<int> occur(seen.begin(), seen.end());
        for (const auto& pick : combinations(static_cast<int>(occur.size()), k)) {
            std::vector<int> menu(k);
            for (int j = 0; j < k; ++j) menu[j] = occur[pick[j]];
            candidates[i].push_back(std::move(menu));
        }
    }

    // Lexicographic odometer over menu choices, last point fastest.
    std::vector<std::size_t> odo(s, 0);
    std::vector<std::vector<int>> chosen(s);
    while (true) {
        for (std::size_t i = 0; i < s; ++i) chosen[i] = candidates[i][odo[i]];
        if (shatteredAgainst(restr, chosen)) return ShatterWitness{points, chosen};
        std::size_t i = s;
        while (i > 0 && ++odo[i - 1] == candidates[i - 1].size()) {
            odo[i - 1] = 0;
            --i;
        }
        if (i == 0) return std::nullopt;
    }
}

int dimK(const FunctionClass& cls, int k) {
    const auto& g = cls.ground();
    checkK(g, k);
    int dim = 0;
    for (int s = 1; s <= g.points; ++s) {
        if (cls.size() < satPow(k, static_cast<std::size_t>(s))) break;
        bool found = false;
        for (const auto& pts : combinations(g.points, s)) {
            if (findKShatterWitness(cls, pts, k)) {
                found = true;
                break;
            }
        }
        if (!found) break;
        dim = s;
    }
    return dim;
}

int vcDim(const FunctionClass& cls) {
    if (cls.ground().labels != 2)
        throw InputError("vcDim requires binary labels, got nLabels=" +
                         std::to_string(cls.ground().labels));
    return dimK(cls, 2);
}

int natarajanDim(const FunctionClass& cls) { return dimK(cls, 2); }

int steeleDim(const FunctionClass& cls) { return dimK(cls, cls.ground().labels); }

namespace {

void checkBoundParams(int m, int nLabels, int k, int d) {
    if (m < 1) throw InputError("m must be >= 1");
    if (d < 0 || d > m) throw InputError("d must satisfy 0 <= d <= m");
    if (k < 2 || k > nLabels) throw InputError("k must satisfy 2 <= k <= nLabels");
}

}  // namespace

BigInt sauerBound(int m, int nLabels, int k, int d) {
    checkBoundParams(m, nLabels, k, d);
    const BigInt perPoint = binomial(nLabels, k);
    BigInt sum = 0;
    for (int i = 0; i <= d; ++i)
        sum += binomial(m, i) * ipow(k - 1, m - i) * ipow(perPoint, i);
    return sum;
}

BigInt recursionBound(int m, int nLabels, int k, int d) {
    checkBoundParams(m, nLabels, k, d);
    const BigInt ck = binomial(nLabels, k);
    // table[dd][mm] = N(dd, mm), filled by increasing mm
    std::vector<std::vector<BigInt>> table(d + 1, std::vector<BigInt>(m + 1));
    for (int mm = 0; mm <= m; ++mm) {
        for (int dd = 0; dd <= std::min(d, mm); ++dd) {
            if (dd == 0)
                table[dd][mm] = ipow(k - 1, mm);
            else if (dd == mm)
                // ((k-1) + C(n,k))^m; collapses to n^m in the k = n case
                table[dd][mm] = ipow(BigInt(k - 1) + ck, mm);
            else
                table[dd][mm] = (k - 1) * table[dd][mm - 1] + ck * table[dd - 1][mm - 1];
        }
    }
    return table[d][m];
}

SauerReport checkSauer(const FunctionClass& cls, int k) {
    SauerReport report;
    report.size = cls.size();
    report.dim = dimK(cls, k);
    report.bound = sauerBound(cls.ground().points, cls.ground().labels, k, report.dim);
    report.holds = report.size <= report.bound;
    return report;
}

FunctionClass tightnessClass(int m, int n, int k, int d) {
    checkBoundParams(m, n, k, d);
    // enumeration is n^m; reject absurd requests
    double logSize = m * std::log2(static_cast<double>(n));
    if (logSize > 24)  // n^m > ~1.6e7
        throw ResourceError("tightnessClass enumeration of n^m = " + std::to_string(n) + "^" +
                            std::to_string(m) + " functions exceeds the budget");
    std::vector<LabeledFunction> fs;
    LabeledFunction cur(m, 0);
    while (true) {
        int high = 0;
        for (int v : cur)
            if (v >= k - 1) ++high;
        if (high <= d) fs.push_back(cur);
        int i = m;
        while (i > 0 && ++cur[i - 1] == n) {
            cur[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return FunctionClass(GroundPair{m, n}, std::move(fs));
}

}  // namespace mvd
