#pragma once

#include <string>

#include <json.hpp>

#include "mvd/banks.hpp"
#include "mvd/mechanisms.hpp"
#include "mvd/reductions.hpp"
#include "mvd/shattering.hpp"

namespace mvd::io {

// Insertion-ordered JSON keeps emitted artifacts byte-stable.
using Json = nlohmann::ordered_json;

// Parses a file, converting parse failures into InputError with position
// diagnostics.
Json loadJsonFile(const std::string& path);

// FNV-1a 64-bit content digest, hex; used in run manifests.
std::string fileDigest(const std::string& path);

// {"m", "nLabels", "functions": [[...], ...]}; duplicate or ill-sized rows
// are rejected with the row index.
FunctionClass functionClassFromJson(const Json& j);
Json functionClassToJson(const FunctionClass& cls);

// Tagged union keyed by "kind"; rationals as "p/q" strings (integers also
// accepted on input).
Valuation valuationFromJson(const Json& j);
Json valuationToJson(const Valuation& v);

// {"m", "n", "d", "valuations": [...]}
AuctionInstance instanceFromJson(const Json& j);
Json instanceToJson(const AuctionInstance& instance);

// Explicit: {"m","n","d","allocations":[[bundle per bidder as sorted item
// arrays], ...]}. Implicit: {"family": name, "params": {...}} with families
// trivial, sqrt, full_pair, and hy (hy takes an explicit parts table or
// {"l","seed"}).
AllocationBank bankFromJson(const Json& j);

Json allocationToJson(const DupAllocation& a);
DupAllocation allocationFromJson(const Json& j, const BankGround& ground);

Json outcomeToJson(const Outcome& outcome);

// {"universe", "sets": [[...]], "C", "k"}
PackingInstance packingFromJson(const Json& j);
// {"vertices", "edges": [[...]]}
Hypergraph hypergraphFromJson(const Json& j);
// {"t", "players": [[...]]}
DisjointnessInstance disjointnessFromJson(const Json& j);
// {"universe","k","partitions":[[[...] per part] per s]} or
// {"generate": {"sizeX","k","t","seed","maxRetries"}}
PartitionFamily partitionFamilyFromJson(const Json& j);

std::string ratString(const Rat& r);

}  // namespace mvd::io
