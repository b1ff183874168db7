#include "mvd/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mvd/errors.hpp"

namespace mvd::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

int intField(const Json& j, const char* key) {
    const Json& f = field(j, key);
    if (!f.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    return f.get<int>();
}

std::uint64_t u64Field(const Json& j, const char* key) {
    const Json& f = field(j, key);
    if (!f.is_number_unsigned() && !f.is_number_integer())
        fail(std::string("field '") + key + "' must be an integer");
    return f.get<std::uint64_t>();
}

Rat ratFromJson(const Json& j, const char* what) {
    if (j.is_string()) return parseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    fail(std::string(what) + " must be a \"p/q\" string or an integer");
}

std::vector<Rat> ratVector(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<Rat> out;
    for (const auto& x : j) out.push_back(ratFromJson(x, what));
    return out;
}

Mask maskFromItemArray(const Json& j, int m, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array of item indices");
    Mask s = 0;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(std::string(what) + " must hold integers");
        const int i = x.get<int>();
        if (i < 0 || i >= m)
            fail(std::string(what) + " has out-of-range item " + std::to_string(i));
        s |= Mask{1} << i;
    }
    return s;
}

Json maskToItemArray(Mask s) {
    Json out = Json::array();
    for (int i : maskToIndices(s)) out.push_back(i);
    return out;
}

std::vector<int> intVector(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(std::string(what) + " must hold integers");
        out.push_back(x.get<int>());
    }
    return out;
}

}  // namespace

Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

std::string fileDigest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << h;
    return out.str();
}

FunctionClass functionClassFromJson(const Json& j) {
    const int m = intField(j, "m");
    const int n = intField(j, "nLabels");
    const Json& rows = field(j, "functions");
    if (!rows.is_array()) fail("'functions' must be an array of rows");
    std::vector<LabeledFunction> fs;
    std::set<LabeledFunction> seen;
    int row = 0;
    for (const auto& r : rows) {
        LabeledFunction f = intVector(r, "function row");
        if (static_cast<int>(f.size()) != m)
            fail("row " + std::to_string(row) + " has length " + std::to_string(f.size()) +
                 ", expected m=" + std::to_string(m));
        for (int v : f)
            if (v < 0 || v >= n)
                fail("row " + std::to_string(row) + " has out-of-range label " +
                     std::to_string(v));
        if (!seen.insert(f).second) fail("row " + std::to_string(row) + " duplicates an earlier row");
        fs.push_back(std::move(f));
        ++row;
    }
    return FunctionClass(GroundPair{m, n}, std::move(fs));
}

Json functionClassToJson(const FunctionClass& cls) {
    Json j;
    j["m"] = cls.ground().points;
    j["nLabels"] = cls.ground().labels;
    j["functions"] = Json::array();
    for (const auto& f : cls.functions()) j["functions"].push_back(f);
    return j;
}

Valuation valuationFromJson(const Json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    const int m = intField(j, "m");
    if (kind == "single_minded")
        return Valuation(m, SingleMinded{maskFromItemArray(field(j, "bundle"), m, "bundle")});
    if (kind == "almost_single_minded")
        return Valuation(m,
                         AlmostSingleMinded{maskFromItemArray(field(j, "bundle"), m, "bundle")});
    if (kind == "multi_minded") {
        const Json& acc = field(j, "accepted");
        if (!acc.is_array()) fail("'accepted' must be an array of bundles");
        std::vector<Mask> bundles;
        for (const auto& b : acc) bundles.push_back(maskFromItemArray(b, m, "accepted bundle"));
        return Valuation(m, MultiMinded{std::move(bundles)});
    }
    if (kind == "additive") return Valuation(m, Additive{ratVector(field(j, "weights"), "weights")});
    if (kind == "zero_one_additive") {
        const Json& w = field(j, "weights");
        if (!w.is_array() || static_cast<int>(w.size()) != m)
            fail("'weights' must be an array of m zeros/ones");
        Mask support = 0;
        for (int i = 0; i < m; ++i) {
            const int x = w[i].get<int>();
            if (x != 0 && x != 1) fail("zero_one_additive weights must be 0 or 1");
            if (x) support |= Mask{1} << i;
        }
        return Valuation(m, ZeroOneAdditive{support});
    }
    if (kind == "capped_additive")
        return Valuation(m, CappedAdditive{ratVector(field(j, "weights"), "weights"),
                                           ratFromJson(field(j, "cap"), "cap")});
    if (kind == "xos") {
        const Json& cl = field(j, "clauses");
        if (!cl.is_array()) fail("'clauses' must be an array of weight vectors");
        std::vector<std::vector<Rat>> clauses;
        for (const auto& c : cl) clauses.push_back(ratVector(c, "clause"));
        return Valuation(m, Xos{std::move(clauses)});
    }
    if (kind == "table") {
        ExplicitTable t{ratVector(field(j, "values"), "values"),
                        j.contains("monotone") && j["monotone"].get<bool>()};
        return Valuation(m, std::move(t));
    }
    fail("unknown valuation kind: '" + kind + "'");
}

Json valuationToJson(const Valuation& v) {
    Json j;
    j["kind"] = v.kindName();
    j["m"] = v.items();
    std::visit(
        [&](const auto& data) {
            using T = std::decay_t<decltype(data)>;
            if constexpr (std::is_same_v<T, SingleMinded> ||
                          std::is_same_v<T, AlmostSingleMinded>) {
                j["bundle"] = maskToItemArray(data.bundle);
            } else if constexpr (std::is_same_v<T, MultiMinded>) {
                j["accepted"] = Json::array();
                for (Mask b : data.accepted) j["accepted"].push_back(maskToItemArray(b));
            } else if constexpr (std::is_same_v<T, Additive>) {
                j["weights"] = Json::array();
                for (const auto& w : data.weights) j["weights"].push_back(ratString(w));
            } else if constexpr (std::is_same_v<T, ZeroOneAdditive>) {
                j["weights"] = Json::array();
                for (int i = 0; i < v.items(); ++i)
                    j["weights"].push_back(contains(data.support, i) ? 1 : 0);
            } else if constexpr (std::is_same_v<T, CappedAdditive>) {
                j["weights"] = Json::array();
                for (const auto& w : data.weights) j["weights"].push_back(ratString(w));
                j["cap"] = ratString(data.cap);
            } else if constexpr (std::is_same_v<T, Xos>) {
                j["clauses"] = Json::array();
                for (const auto& c : data.clauses) {
                    Json row = Json::array();
                    for (const auto& w : c) row.push_back(ratString(w));
                    j["clauses"].push_back(row);
                }
            } else if constexpr (std::is_same_v<T, ExplicitTable>) {
                j["values"] = Json::array();
                for (const auto& x : data.values) j["values"].push_back(ratString(x));
                if (data.monotoneDeclared) j["monotone"] = true;
            }
        },
        v.data());
    return j;
}

AuctionInstance instanceFromJson(const Json& j) {
    AuctionInstance instance;
    instance.items = intField(j, "m");
    instance.bidders = intField(j, "n");
    instance.dupLimit = intField(j, "d");
    const Json& vals = field(j, "valuations");
    if (!vals.is_array()) fail("'valuations' must be an array");
    for (const auto& v : vals) instance.valuations.push_back(valuationFromJson(v));
    validateInstance(instance);
    return instance;
}

Json instanceToJson(const AuctionInstance& instance) {
    Json j;
    j["m"] = instance.items;
    j["n"] = instance.bidders;
    j["d"] = instance.dupLimit;
    j["valuations"] = Json::array();
    for (const auto& v : instance.valuations) j["valuations"].push_back(valuationToJson(v));
    return j;
}

DupAllocation allocationFromJson(const Json& j, const BankGround& ground) {
    if (!j.is_array() || static_cast<int>(j.size()) != ground.bidders)
        fail("allocation must be an array of n bundles");
    DupAllocation a{std::vector<Mask>(ground.bidders, 0)};
    for (int i = 0; i < ground.bidders; ++i)
        a.bundles[i] = maskFromItemArray(j[i], ground.items, "bundle");
    validateAllocation(ground, a);
    return a;
}

Json allocationToJson(const DupAllocation& a) {
    Json out = Json::array();
    for (Mask b : a.bundles) out.push_back(maskToItemArray(b));
    return out;
}

AllocationBank bankFromJson(const Json& j) {
    if (j.contains("family")) {
        const std::string name = field(j, "family").get<std::string>();
        const Json& params = field(j, "params");
        const int m = intField(params, "m");
        const int n = intField(params, "n");
        if (name == "trivial") return trivialBank(m, n);
        if (name == "sqrt") return sqrtBank(m, n);
        if (name == "full_pair") {
            auto items = intVector(field(params, "items"), "items");
            auto bidders = intVector(field(params, "bidders"), "bidders");
            return fullPairBank(m, n, items, bidders);
        }
        if (name == "hy") {
            if (params.contains("parts")) {
                HYTable table;
                table.items = m;
                table.bidders = n;
                const Json& parts = params["parts"];
                if (!parts.is_array() || static_cast<int>(parts.size()) != m)
                    fail("'parts' must have one partition per item");
                for (const auto& per : parts) {
                    if (!per.is_array()) fail("per-item parts must be arrays");
                    std::vector<Mask> masks;
                    for (const auto& part : per)
                        masks.push_back(maskFromItemArray(part, n, "bidder part"));
                    table.parts.push_back(std::move(masks));
                }
                return hYBank(table);
            }
            const int l = intField(params, "l");
            const std::uint64_t seed = u64Field(params, "seed");
            return hYBank(randomHY(m, n, l, seed));
        }
        fail("unknown bank family: '" + name + "'");
    }
    BankGround ground;
    ground.items = intField(j, "m");
    ground.bidders = intField(j, "n");
    ground.dupLimit = intField(j, "d");
    const Json& allocs = field(j, "allocations");
    if (!allocs.is_array()) fail("'allocations' must be an array");
    std::vector<DupAllocation> members;
    for (const auto& a : allocs) members.push_back(allocationFromJson(a, ground));
    return AllocationBank::explicitBank(ground, std::move(members));
}

Json outcomeToJson(const Outcome& outcome) {
    Json j;
    j["allocation"] = allocationToJson(outcome.allocation);
    j["payments"] = Json::array();
    for (const auto& p : outcome.payments) j["payments"].push_back(ratString(p));
    j["welfare"] = ratString(outcome.welfare);
    return j;
}

PackingInstance packingFromJson(const Json& j) {
    PackingInstance p;
    p.universeSize = intField(j, "universe");
    const Json& sets = field(j, "sets");
    if (!sets.is_array()) fail("'sets' must be an array");
    for (const auto& s : sets)
        p.sets.push_back(maskFromItemArray(s, p.universeSize, "packing set"));
    p.threshold = intField(j, "C");
    p.multiplicity = intField(j, "k");
    validatePacking(p);
    return p;
}

Hypergraph hypergraphFromJson(const Json& j) {
    Hypergraph g;
    g.vertices = intField(j, "vertices");
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) fail("'edges' must be an array");
    for (const auto& e : edges) g.edges.push_back(intVector(e, "edge"));
    return g;
}

DisjointnessInstance disjointnessFromJson(const Json& j) {
    DisjointnessInstance di;
    di.indexCount = intField(j, "t");
    const Json& players = field(j, "players");
    if (!players.is_array()) fail("'players' must be an array");
    for (const auto& p : players)
        di.playerSets.push_back(maskFromItemArray(p, di.indexCount, "player set"));
    return di;
}

PartitionFamily partitionFamilyFromJson(const Json& j) {
    if (j.contains("generate")) {
        const Json& g = j["generate"];
        return intersectionFamily(intField(g, "sizeX"), intField(g, "k"), intField(g, "t"),
                                  u64Field(g, "seed"), intField(g, "maxRetries"));
    }
    PartitionFamily family;
    family.universeSize = intField(j, "universe");
    family.parts = intField(j, "k");
    const Json& parts = field(j, "partitions");
    if (!parts.is_array()) fail("'partitions' must be an array");
    for (const auto& p : parts) {
        if (!p.is_array()) fail("each partition must be an array of parts");
        std::vector<Mask> masks;
        for (const auto& part : p)
            masks.push_back(maskFromItemArray(part, family.universeSize, "partition part"));
        family.partitions.push_back(std::move(masks));
    }
    return family;
}

std::string ratString(const Rat& r) { return formatRational(r); }

}  // namespace mvd::io
