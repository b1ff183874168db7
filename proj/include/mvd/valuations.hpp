#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mvd/rational.hpp"
#include "mvd/sets.hpp"

namespace mvd {

// v(S) = 1[T subset of S]
struct SingleMinded {
    Mask bundle = 0;
};

// v(S) = 1[S in accepted]; accepted is a sorted list of bundle masks.
struct MultiMinded {
    std::vector<Mask> accepted;
};

// v(S) = w . chi(S), w >= 0
struct Additive {
    std::vector<Rat> weights;
};

// additive with weights in {0,1}, stored as the support mask
struct ZeroOneAdditive {
    Mask support = 0;
};

// v(S) = min(w . chi(S), cap)
struct CappedAdditive {
    std::vector<Rat> weights;
    Rat cap;
};

// v(S) = max_j w_j . chi(S); an empty clause list is the zero valuation
struct Xos {
    std::vector<std::vector<Rat>> clauses;
};

// v(S) = 1[T subset of S] + |S| / m^3
struct AlmostSingleMinded {
    Mask bundle = 0;
};

// 2^m exact values indexed by bundle mask; values[0] must be 0
struct ExplicitTable {
    std::vector<Rat> values;
    bool monotoneDeclared = false;
};

// A tagged, exactly-evaluable set function over bundles of m items.
class Valuation {
public:
    using Data = std::variant<SingleMinded, MultiMinded, Additive, ZeroOneAdditive,
                              CappedAdditive, Xos, AlmostSingleMinded, ExplicitTable>;

    Valuation(int m, Data data);

    static Valuation zero(int m) { return Valuation(m, Additive{std::vector<Rat>(m, Rat(0))}); }

    int items() const { return m_; }
    const Data& data() const { return data_; }
    std::string kindName() const;

    // Exact value of the bundle; throws InputError on out-of-range items.
    Rat value(Mask bundle) const;

    // All 2^m values, indexed by mask.
    std::vector<Rat> table() const;

private:
    int m_;
    Data data_;
};

// Count of value queries issued through metered handles.
struct QueryLog {
    std::uint64_t count = 0;
};

// Access path for query-complexity-sensitive algorithms: every evaluation
// bumps the shared log.
class MeteredValuation {
public:
    MeteredValuation(const Valuation& v, QueryLog& log) : v_(&v), log_(&log) {}
    int items() const { return v_->items(); }
    Rat value(Mask bundle) const {
        ++log_->count;
        return v_->value(bundle);
    }

private:
    const Valuation* v_;
    QueryLog* log_;
};

// Exhaustive predicate checks; throw ResourceError beyond m = 16
// (m = 8 for isXos).
bool isNormalized(const Valuation& v);
bool isMonotone(const Valuation& v);
bool isSubmodular(const Valuation& v);
bool isSubadditive(const Valuation& v);

// True iff some T of size k has v(S & T) >= v(S) - v([m]) / (2 m^2) for
// all S. The slack constant is fixed by the definition and not tunable.
bool isKLocal(const Valuation& v, int k);

// Exact XOS membership, decided per bundle as a rational linear program.
bool isXos(const Valuation& v);

}  // namespace mvd
