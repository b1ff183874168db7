#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvd/rational.hpp"

namespace mvd {

// Domain of a function class: m points mapped into nLabels labels.
struct GroundPair {
    int points = 0;  // m
    int labels = 0;  // |Y|
};

// One total mapping, values[p] in [0, labels).
using LabeledFunction = std::vector<int>;

// A deduplicated finite class H of total mappings over a common ground.
// Functions are stored in lexicographic order; duplicates are rejected.
class FunctionClass {
public:
    FunctionClass(GroundPair ground, std::vector<LabeledFunction> functions);

    const GroundPair& ground() const { return ground_; }
    std::size_t size() const { return functions_.size(); }
    const std::vector<LabeledFunction>& functions() const { return functions_; }

    bool operator==(const FunctionClass&) const = default;

private:
    GroundPair ground_;
    std::vector<LabeledFunction> functions_;
};

// A candidate k-shattering certificate: a point set A together with a
// k-element label menu per point.
struct ShatterWitness {
    std::vector<int> points;                 // sorted, distinct
    std::vector<std::vector<int>> labelSets; // labelSets[i] for points[i], sorted
};

// True iff every menu-respecting labeling of the witness points is realized
// by some function of the class.
bool isKShattered(const FunctionClass& cls, const ShatterWitness& witness);

// Exhaustive search over label-set menus on exactly these points, in
// lexicographic order; first success wins.
std::optional<ShatterWitness> findKShatterWitness(const FunctionClass& cls,
                                                  const std::vector<int>& points,
                                                  int k);

// Largest cardinality of a k-shattered point set (0 when none). Ascending
// subset-size search; sound because subsets of shattered sets are shattered.
int dimK(const FunctionClass& cls, int k);

// Classical specializations. vcDim additionally requires binary labels.
int vcDim(const FunctionClass& cls);
int natarajanDim(const FunctionClass& cls);
int steeleDim(const FunctionClass& cls);

// sum_{i=0}^{d} C(m,i) (k-1)^{m-i} C(nLabels,k)^i, exactly.
BigInt sauerBound(int m, int nLabels, int k, int d);

// The same quantity via the two-parameter recursion
//   N(d,m) = (k-1) N(d,m-1) + C(n,k) N(d-1,m-1)
// with N(0,m) = (k-1)^m and N(m,m) = ((k-1) + C(n,k))^m (= n^m when k = n).
// Agrees with sauerBound on every input by Pascal's rule.
BigInt recursionBound(int m, int nLabels, int k, int d);

struct SauerReport {
    BigInt size;
    int dim = 0;
    BigInt bound;
    bool holds = false;
};

// Evaluates |H| <= sauerBound(m, nLabels, k, dimK(H, k)).
SauerReport checkSauer(const FunctionClass& cls, int k);

// All f in [n]^[m] with at most d points mapped to a label index >= k-1
// (the top n-k+1 labels under 0-based storage). Meets the bound with
// equality when k = n.
FunctionClass tightnessClass(int m, int n, int k, int d);

}  // namespace mvd
