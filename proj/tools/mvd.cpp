// mvd: multivalued shattering, allocation banks, and MIR auction toolkit.
//
// Subcommands: dim, bound, shatter, simulate, ratio, menu, reduce, verify.
// Exit codes: 0 success, 2 input error, 3 budget/resource error,
// 4 invariant violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mvd/errors.hpp"
#include "mvd/generators.hpp"
#include "mvd/io.hpp"
#include "mvd/rng.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

using mvd::io::Json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::uint64_t budget = mvd::kDefaultBudget;
    bool overrideBudget = false;
    std::string format = "json";
    std::string outPath;

    std::uint64_t effectiveBudget() const {
        return overrideBudget ? ~std::uint64_t{0} : budget;
    }
};

Json makeManifest(const GlobalOpts& g, const std::string& command,
                  const std::vector<std::string>& inputFiles) {
    Json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["seed"] = g.seed;
    manifest["budget"] = g.effectiveBudget();
    Json inputs = Json::object();
    for (const auto& path : inputFiles) inputs[path] = mvd::io::fileDigest(path);
    manifest["inputs"] = inputs;
    return manifest;
}

void emitArtifact(const GlobalOpts& g, Json artifact) {
    const std::string text = artifact.dump(2) + "\n";
    std::cout << text;
    if (!g.outPath.empty()) {
        std::ofstream out(g.outPath, std::ios::binary);
        if (!out) throw mvd::InputError("cannot write output file: " + g.outPath);
        out << text;
    }
}

Json witnessToJson(const mvd::ShatterWitness& w) {
    Json j;
    j["points"] = w.points;
    j["labelSets"] = w.labelSets;
    return j;
}

// --- generator mini-spec: "name:key=value,key=value" ---------------------

std::map<std::string, std::string> parseKeyValues(const std::string& text) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string piece = text.substr(pos, comma - pos);
        const std::size_t eq = piece.find('=');
        if (eq == std::string::npos)
            throw mvd::InputError("generator spec: expected key=value, got '" + piece + "'");
        out[piece.substr(0, eq)] = piece.substr(eq + 1);
        pos = comma + 1;
    }
    return out;
}

int specInt(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw mvd::InputError("generator spec: missing '" + key + "'");
    return std::stoi(it->second);
}

mvd::InstanceSource makeGenerator(const std::string& spec, std::uint64_t seed) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const auto kv =
        colon == std::string::npos ? std::map<std::string, std::string>{}
                                   : parseKeyValues(spec.substr(colon + 1));
    if (name == "disjoint-singleton")
        return mvd::disjointSingletonGrid(specInt(kv, "m"), specInt(kv, "n"));
    if (name == "single-minded")
        return mvd::singleMindedGrid(specInt(kv, "m"), specInt(kv, "n"), specInt(kv, "kmax"));
    if (name == "zero-one-additive")
        return mvd::zeroOneAdditiveGrid(specInt(kv, "m"), specInt(kv, "n"));
    if (name == "random-subadditive")
        return mvd::randomSubadditive(specInt(kv, "m"), specInt(kv, "n"), specInt(kv, "count"),
                                      seed);
    throw mvd::InputError(
        "unknown generator '" + name +
        "' (known: disjoint-singleton, single-minded, zero-one-additive, random-subadditive)");
}

// --- verify suites --------------------------------------------------------

mvd::FunctionClass randomClass(mvd::Rng& rng, int m, int n) {
    const std::uint64_t total = mvd::ipow(n, m).convert_to<std::uint64_t>();
    const std::uint64_t want = 1 + rng.below(std::min<std::uint64_t>(total, 48));
    std::set<mvd::LabeledFunction> fs;
    while (fs.size() < want) {
        mvd::LabeledFunction f(m);
        for (int x = 0; x < m; ++x) f[x] = static_cast<int>(rng.below(n));
        fs.insert(std::move(f));
    }
    return mvd::FunctionClass(mvd::GroundPair{m, n},
                              std::vector<mvd::LabeledFunction>(fs.begin(), fs.end()));
}

int runVerifySuite(const std::string& suite, const GlobalOpts& g) {
    std::uint64_t checks = 0, violations = 0;
    auto expect = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++violations;
            std::cerr << "[violation] " << what << "\n";
        }
    };

    if (suite == "sauer-grid") {
        mvd::Rng rng(g.seed);
        for (int m = 1; m <= 4; ++m)
            for (int n = 2; n <= 4; ++n)
                for (int rep = 0; rep < 200; ++rep) {
                    const auto cls = randomClass(rng, m, n);
                    for (int k = 2; k <= n; ++k) {
                        const auto report = mvd::checkSauer(cls, k);
                        expect(report.holds, "sauer bound violated at m=" + std::to_string(m) +
                                                 " n=" + std::to_string(n) +
                                                 " k=" + std::to_string(k));
                    }
                }
    } else if (suite == "recursion-grid") {
        for (int m = 1; m <= 8; ++m)
            for (int n = 2; n <= 5; ++n)
                for (int k = 2; k <= n; ++k)
                    for (int d = 0; d <= m; ++d)
                        expect(mvd::sauerBound(m, n, k, d) == mvd::recursionBound(m, n, k, d),
                               "closed form != recursion at m=" + std::to_string(m) +
                                   " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                   " d=" + std::to_string(d));
    } else if (suite == "tightness-grid") {
        for (int n = 2; n <= 4; ++n)
            for (int m = 1; m <= 5; ++m)
                for (int d = 0; d <= m; ++d) {
                    const auto cls = mvd::tightnessClass(m, n, n, d);
                    expect(mvd::BigInt(cls.size()) == mvd::sauerBound(m, n, n, d),
                           "tightness size mismatch at m=" + std::to_string(m) +
                               " n=" + std::to_string(n) + " d=" + std::to_string(d));
                    expect(mvd::dimK(cls, n) == d,
                           "tightness dim mismatch at m=" + std::to_string(m) +
                               " n=" + std::to_string(n) + " d=" + std::to_string(d));
                }
    } else if (suite == "dim-monotone") {
        mvd::Rng rng(g.seed);
        for (int m = 1; m <= 4; ++m)
            for (int n = 3; n <= 4; ++n)
                for (int rep = 0; rep < 100; ++rep) {
                    const auto cls = randomClass(rng, m, n);
                    for (int k = 2; k < n; ++k)
                        expect(mvd::dimK(cls, k + 1) <= mvd::dimK(cls, k),
                               "dimK not monotone in k at m=" + std::to_string(m) +
                                   " n=" + std::to_string(n));
                }
    } else {
        throw mvd::InputError("unknown verify suite '" + suite +
                              "' (known: sauer-grid, recursion-grid, tightness-grid, "
                              "dim-monotone)");
    }

    Json artifact;
    artifact["schema_version"] = kSchemaVersion;
    artifact["manifest"] = makeManifest(g, "verify " + suite, {});
    artifact["suite"] = suite;
    artifact["checks"] = checks;
    artifact["violations"] = violations;
    emitArtifact(g, artifact);
    return violations == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multivalued shattering, allocation banks, and MIR auction toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for randomized constructions");
    app.add_option("--budget", g.budget, "enumeration budget (default 10^7)");
    app.add_flag("--override-budget", g.overrideBudget, "lift the enumeration budget");
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.outPath, "also write the artifact to this file");

    // dim
    std::string classFile;
    int dimKArg = 2;
    auto* dim = app.add_subcommand("dim", "k-dimension of a function class file");
    dim->add_option("classFile", classFile)->required();
    dim->add_option("--k", dimKArg, "menu size k")->required();

    // bound
    int bM = 0, bN = 0, bK = 0, bD = 0;
    bool bRecursion = false;
    auto* bound = app.add_subcommand("bound", "generalized Sauer-Shelah bound");
    bound->add_option("--m", bM)->required();
    bound->add_option("--n", bN)->required();
    bound->add_option("--k", bK)->required();
    bound->add_option("--d", bD)->required();
    bound->add_flag("--recursion", bRecursion, "compute via the recursion instead");

    // shatter
    std::string bankFile;
    int sizeS = 1, sizeA = 1;
    auto* shatter = app.add_subcommand("shatter", "search for a shattered pair");
    shatter->add_option("bankFile", bankFile)->required();
    shatter->add_option("--size-s", sizeS, "item subset size")->required();
    shatter->add_option("--size-a", sizeA, "bidder subset size")->required();

    // simulate
    std::string simBank, simInstance;
    auto* simulate = app.add_subcommand("simulate", "run the MIR mechanism with VCG payments");
    simulate->add_option("bankFile", simBank)->required();
    simulate->add_option("instanceFile", simInstance)->required();

    // ratio
    std::string ratioBank, ratioGen;
    int ratioGreedy = 0;
    auto* ratio = app.add_subcommand("ratio", "worst-case OPT/achieved over a generator");
    ratio->add_option("--bank", ratioBank, "bank file (MIR mechanism)");
    ratio->add_option("--greedy", ratioGreedy, "use the greedy algorithm with this k");
    ratio->add_option("--gen", ratioGen, "generator spec, e.g. single-minded:m=4,n=2,kmax=2")
        ->required();

    // menu
    std::string menuBank, menuInstance;
    int menuBidder = 0;
    auto* menu = app.add_subcommand("menu", "bundles bidder i can win by single-minded-style bids");
    menu->add_option("bankFile", menuBank)->required();
    menu->add_option("instanceFile", menuInstance)->required();
    menu->add_option("--bidder", menuBidder)->required();

    // reduce
    std::string reduceKind, reduceFixture, reduceBank, reduceFamily;
    std::vector<int> pairItems, pairBidders;
    auto* reduce = app.add_subcommand("reduce", "run a hardness reduction end to end");
    reduce->add_option("kind", reduceKind, "packing | hypergraph | disjointness")->required();
    reduce->add_option("fixtureFile", reduceFixture)->required();
    reduce->add_option("bankFile", reduceBank)->required();
    reduce->add_option("--family", reduceFamily, "partition family file (disjointness)");
    reduce->add_option("--pair-items", pairItems, "shattered pair: item indices");
    reduce->add_option("--pair-bidders", pairBidders, "shattered pair: bidder indices");

    // verify
    std::string suiteName;
    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("suite", suiteName)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    int exitCode = 0;
    try {
        const std::uint64_t budget = g.effectiveBudget();
        if (*dim) {
            const auto cls = mvd::io::functionClassFromJson(mvd::io::loadJsonFile(classFile));
            const int d = mvd::dimK(cls, dimKArg);
            Json artifact;
            artifact["schema_version"] = kSchemaVersion;
            artifact["manifest"] = makeManifest(g, "dim", {classFile});
            artifact["k"] = dimKArg;
            artifact["dim"] = d;
            artifact["witness"] = nullptr;
            if (d > 0) {
                for (const auto& pts : mvd::combinations(cls.ground().points, d)) {
                    if (auto w = mvd::findKShatterWitness(cls, pts, dimKArg)) {
                        artifact["witness"] = witnessToJson(*w);
                        break;
                    }
                }
            }
            emitArtifact(g, artifact);
        } else if (*bound) {
            const mvd::BigInt value = bRecursion ? mvd::recursionBound(bM, bN, bK, bD)
                                                 : mvd::sauerBound(bM, bN, bK, bD);
            Json artifact;
            artifact["schema_version"] = kSchemaVersion;
            artifact["manifest"] = makeManifest(
                g, bRecursion ? "bound --recursion" : "bound", {});
            artifact["m"] = bM;
            artifact["n"] = bN;
            artifact["k"] = bK;
            artifact["d"] = bD;
            artifact["bound"] = value.str();
            emitArtifact(g, artifact);
        } else if (*shatter) {
            const auto bank = mvd::io::bankFromJson(mvd::io::loadJsonFile(bankFile));
            const auto found = mvd::findShatteredPair(bank, sizeS, sizeA, budget);
            Json artifact;
            artifact["schema_version"] = kSchemaVersion;
            artifact["manifest"] = makeManifest(g, "shatter", {bankFile});
            artifact["found"] = found.has_value();
            if (found) {
                artifact["items"] = found->items;
                artifact["bidders"] = found->bidders;
            }
            emitArtifact(g, artifact);
        } else if (*simulate) {
            const auto bank = mvd::io::bankFromJson(mvd::io::loadJsonFile(simBank));
            const auto instance =
                mvd::io::instanceFromJson(mvd::io::loadJsonFile(simInstance));
            const auto outcome = mvd::runMir(bank, instance, budget);
            Json artifact;
            artifact["schema_version"] = kSchemaVersion;
            artifact["manifest"] = makeManifest(g, "simulate", {simBank, simInstance});
            artifact.update(mvd::io::outcomeToJson(outcome));
            emitArtifact(g, artifact);
        } else if (*ratio) {
            if (ratioBank.empty() == (ratioGreedy == 0))
                throw mvd::InputError("ratio needs exactly one of --bank or --greedy K");
            std::optional<mvd::AllocationBank> bank;
            mvd::AllocatorFn allocator;
            std::vector<std::string> inputs;
            if (!ratioBank.empty()) {
                bank = mvd::io::bankFromJson(mvd::io::loadJsonFile(ratioBank));
                allocator = mvd::mirAllocator(*bank, budget);
                inputs.push_back(ratioBank);
            } else {
                allocator = mvd::greedyAllocator(ratioGreedy);
            }
            std::string csv = "instanceId,opt,achieved,ratio\n";
            auto onRow = [&](std::uint64_t id, const mvd::Rat& opt, const mvd::Rat& achieved) {
                csv += std::to_string(id) + "," + mvd::formatRational(opt) + "," +
                       mvd::formatRational(achieved) + ",";
                if (achieved != 0)
                    csv += mvd::formatRational(opt / achieved);
                else
                    csv += (opt == 0) ? "skipped" : "infinite";
                csv += "\n";
            };
            const auto report = mvd::measureRatio(allocator, makeGenerator(ratioGen, g.seed),
                                                  budget, onRow);
            if (g.format == "csv") {
                std::cout << csv;
                if (!g.outPath.empty()) {
                    std::ofstream out(g.outPath, std::ios::binary);
                    out << csv;
                }
            } else {
                Json artifact;
                artifact["schema_version"] = kSchemaVersion;
                artifact["manifest"] = makeManifest(g, "ratio " + ratioGen, inputs);
                artifact["examined"] = report.examined;
                artifact["skipped"] = report.skipped;
                artifact["infinite"] = report.infinite;
                artifact["worstRatio"] =
                    report.hasWorst ? Json(mvd::formatRational(report.worst)) : Json(nullptr);
                artifact["witness"] = report.witness
                                          ? mvd::io::instanceToJson(*report.witness)
                                          : Json(nullptr);
                emitArtifact(g, artifact);
            }
        } else if (*menu) {
            const auto bank = mvd::io::bankFromJson(mvd::io::loadJsonFile(menuBank));
            const auto instance =
                mvd::io::instanceFromJson(mvd::io::loadJsonFile(menuInstance));
            std::vector<mvd::Valuation> others;
            for (int j = 0; j < instance.bidders; ++j)
                if (j != menuBidder) others.push_back(instance.valuations[j]);
            const auto bundles = mvd::mirMenu(bank, others, menuBidder, budget);
            Json artifact;
            artifact["schema_version"] = kSchemaVersion;
            artifact["manifest"] = makeManifest(g, "menu", {menuBank, menuInstance});
            artifact["bidder"] = menuBidder;
            artifact["menu"] = Json::array();
            for (mvd::Mask b : bundles) artifact["menu"].push_back(mvd::maskToIndices(b));
            emitArtifact(g, artifact);
        } else if (*reduce) {
            const auto bank = mvd::io::bankFromJson(mvd::io::loadJsonFile(reduceBank));
            std::vector<std::string> inputs{reduceFixture, reduceBank};
            mvd::PairWitness pair;
            if (!pairItems.empty() || !pairBidders.empty()) {
                pair = mvd::PairWitness{pairItems, pairBidders};
            } else {
                // default: the whole bank ground
                for (int x = 0; x < bank.ground().items; ++x) pair.items.push_back(x);
                for (int y = 0; y < bank.ground().bidders; ++y) pair.bidders.push_back(y);
            }
            mvd::ReductionOutcome outcome;
            if (reduceKind == "packing") {
                const auto p = mvd::io::packingFromJson(mvd::io::loadJsonFile(reduceFixture));
                outcome = mvd::packingToAuction(p, bank, pair, budget);
            } else if (reduceKind == "hypergraph") {
                const auto hg =
                    mvd::io::hypergraphFromJson(mvd::io::loadJsonFile(reduceFixture));
                outcome = mvd::packingToAuction(mvd::hypergraphToPacking(hg), bank, pair, budget);
            } else if (reduceKind == "disjointness") {
                if (reduceFamily.empty())
                    throw mvd::InputError("disjointness reduction needs --family");
                const auto di =
                    mvd::io::disjointnessFromJson(mvd::io::loadJsonFile(reduceFixture));
                const auto family =
                    mvd::io::partitionFamilyFromJson(mvd::io::loadJsonFile(reduceFamily));
                inputs.push_back(reduceFamily);
                outcome = mvd::disjointnessToAuction(di, family, bank, pair, budget);
            } else {
                throw mvd::InputError("unknown reduction kind '" + reduceKind +
                                      "' (known: packing, hypergraph, disjointness)");
            }
            Json artifact;
            artifact["schema_version"] = kSchemaVersion;
            artifact["manifest"] = makeManifest(g, "reduce " + reduceKind, inputs);
            artifact["decision"] = outcome.decision;
            artifact["welfare"] = mvd::formatRational(outcome.welfare);
            artifact["promise_checked"] = outcome.promiseChecked;
            artifact["instance"] = mvd::io::instanceToJson(outcome.instance);
            emitArtifact(g, artifact);
        } else if (*verify) {
            exitCode = runVerifySuite(suiteName, g);
        }
    } catch (const mvd::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        exitCode = 3;
    } catch (const mvd::ConstructionError& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        exitCode = 3;
    } catch (const mvd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        exitCode = 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        exitCode = 2;
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cerr << "[mvd] finished in " << elapsed << " ms\n";
    return exitCode;
}
