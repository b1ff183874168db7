#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mvd {

// Item bundles and point sets are bitmasks over indices 0..m-1, m <= 63.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask fullMask(int m) { return m >= 64 ? ~Mask{0} : ((Mask{1} << m) - 1); }

inline bool contains(Mask s, int i) { return (s >> i) & 1; }

inline bool isSubset(Mask a, Mask b) { return (a & ~b) == 0; }

std::vector<int> maskToIndices(Mask s);

Mask indicesToMask(const std::vector<int>& idx);

// All size-k subsets of {0..n-1}, as sorted index vectors in lexicographic
// order of the index sequences.
std::vector<std::vector<int>> combinations(int n, int k);

// Calls f(mask) for every subset of `universe`, in increasing numeric order
// of the packed submask.
template <typename F>
void forEachSubset(Mask universe, F&& f) {
    Mask sub = 0;
    while (true) {
        f(sub);
        if (sub == universe) break;
        sub = (sub - universe) & universe;
    }
}

}  // namespace mvd
