#include "hamlab/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hamlab/canonical.hpp"
#include "hamlab/codec.hpp"
#include "hamlab/conditions.hpp"
#include "hamlab/correspondence.hpp"
#include "hamlab/errors.hpp"
#include "hamlab/families.hpp"
#include "hamlab/hamilton.hpp"
#include "hamlab/verifier.hpp"

namespace hamlab {

namespace {

struct CliFailure {
    int code;
};

bool isDigraph6Line(const std::string& line) { return !line.empty() && line[0] == '&'; }

void forEachLine(std::istream& src, std::ostream& err,
                 const std::function<void(const std::string&)>& fn) {
    std::string line;
    int no = 0;
    while (std::getline(src, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            fn(line);
        } catch (const ParseError& e) {
            err << "error: line " << no << ": " << e.what() << "\n";
            throw CliFailure{2};
        } catch (const CapabilityError& e) {
            err << "error: line " << no << ": " << e.what() << "\n";
            throw CliFailure{1};
        } catch (const DomainError& e) {
            err << "error: line " << no << ": " << e.what() << "\n";
            throw CliFailure{1};
        }
    }
}

std::optional<ConditionMode> conditionModeFromName(const std::string& raw) {
    std::string name;
    for (char c : raw)
        if (c != '-' && c != '_') name.push_back(static_cast<char>(std::tolower(c)));
    if (name == "woodall" || name == "woodallnonarc") return ConditionMode::woodallNonArc;
    if (name == "allpairs") return ConditionMode::allPairs;
    if (name == "ghouila" || name == "ghouilahouri") return ConditionMode::ghouilaHouri;
    if (name == "semidegree") return ConditionMode::semiDegree;
    if (name == "lasvergnas") return ConditionMode::lasVergnas;
    if (name == "ore") return ConditionMode::ore;
    if (name == "dirac") return ConditionMode::dirac;
    return std::nullopt;
}

bool directedPairMode(ConditionMode mode) {
    return mode == ConditionMode::woodallNonArc || mode == ConditionMode::allPairs ||
           mode == ConditionMode::ghouilaHouri || mode == ConditionMode::semiDegree;
}

std::optional<FamilyKind> familyKindFromName(const std::string& raw) {
    std::string name;
    for (char c : raw) name.push_back(static_cast<char>(std::tolower(c)));
    if (name == "d1") return FamilyKind::d1;
    if (name == "d2") return FamilyKind::d2;
    if (name == "d3") return FamilyKind::d3;
    if (name == "d4") return FamilyKind::d4;
    if (name == "g1") return FamilyKind::g1;
    if (name == "g2") return FamilyKind::g2;
    if (name == "g3") return FamilyKind::g3;
    if (name == "g4") return FamilyKind::g4;
    if (name == "g5") return FamilyKind::g5;
    if (name == "g6") return FamilyKind::g6;
    if (name == "d1p" || name == "d1'") return FamilyKind::d1Prime;
    if (name == "d3p" || name == "d3'") return FamilyKind::d3Prime;
    return std::nullopt;
}

// Parses a matched graph from either representation: a digraph6 line is the
// contraction, a graph6 line uses the w/b serialization labeling.
MatchedBipartite parseMatchedLine(const std::string& line) {
    if (isDigraph6Line(line)) return expand(parseDigraph6(line));
    return matchedFromLabeled(parseGraph6(line));
}

void printVertexSeq(std::ostream& out, const std::vector<int>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out << ' ';
        out << seq[i];
    }
    out << '\n';
}

struct IoStreams {
    std::istream* in;
    std::ostream* out;
    std::ifstream inFile;
    std::ofstream outFile;
};

void bindStreams(IoStreams& io, const std::string& inPath, const std::string& outPath,
                 std::istream& defIn, std::ostream& defOut) {
    io.in = &defIn;
    io.out = &defOut;
    if (!inPath.empty()) {
        io.inFile.open(inPath);
        if (!io.inFile) throw DomainError("cannot open input file: " + inPath);
        io.in = &io.inFile;
    }
    if (!outPath.empty()) {
        io.outFile.open(outPath);
        if (!io.outFile) throw DomainError("cannot open output file: " + outPath);
        io.out = &io.outFile;
    }
}

const char* stepKindName(SolveStep::Kind kind) {
    switch (kind) {
        case SolveStep::Kind::initialCycle: return "seed";
        case SolveStep::Kind::mergePath: return "merge-path";
        case SolveStep::Kind::mergeCycle: return "merge-cycle";
        case SolveStep::Kind::exactFallback: return "exact";
    }
    return "?";
}

void printConditionReport(std::ostream& out, const ConditionReport& report) {
    if (report.vacuous()) {
        out << "vacuous\n";
        return;
    }
    out << "slack=" << *report.slack;
    for (const auto& [a, b] : report.witnesses) out << " (" << a << "," << b << ")";
    out << '\n';
}

void printVerifySummary(std::ostream& err, const VerifyReport& report) {
    err << "campaign " << report.variant << " order " << report.order << ": labeled="
        << report.totalLabeled << " conditionSatisfying=" << report.conditionSatisfying
        << " hamiltonian=" << report.hamiltonianCount << " exceptionClasses="
        << report.exceptions.size() << " labeledExceptions=" << report.exceptionLabeledTotal()
        << " strictViolations=" << report.strictViolations
        << (report.certified() ? " certified" : " NOT-CERTIFIED") << "\n";
}

}  // namespace

int cliMain(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"degree-sum Hamiltonicity laboratory"};
    app.require_subcommand(1);

    std::string inPath, outPath;

    auto* checkCmd = app.add_subcommand(
        "check", "evaluate a degree-sum condition on each input graph");
    std::string checkCondition;
    int checkMinSlack = 0;
    bool checkHasMinSlack = false;
    checkCmd->add_option("--condition", checkCondition,
                         "woodall | all-pairs | ghouila | semidegree | las-vergnas | ore | dirac")
        ->required();
    auto* minSlackOpt = checkCmd->add_option(
        "--min-slack", checkMinSlack,
        "filter mode: echo only input lines with slack >= this value (vacuous passes)");
    checkCmd->add_option("--in", inPath, "input file (default: stdin)");
    checkCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* solveCmd = app.add_subcommand(
        "solve", "find a Hamilton cycle in each input graph, or report its absence");
    bool solveMatched = false, solveConstructive = false;
    solveCmd->add_flag("--matched", solveMatched,
                       "treat input as matched bipartite (alternating cycles)");
    solveCmd->add_flag("--constructive", solveConstructive,
                       "use the merge-based constructive solver (matched input only); "
                       "narrates its steps on the diagnostic stream");
    solveCmd->add_option("--in", inPath, "input file (default: stdin)");
    solveCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* analyzeCmd = app.add_subcommand(
        "analyze", "structural analysis of matched graphs: longest alternating cycle, "
                   "decomposition, and the structure-claim checklist (JSONL)");
    analyzeCmd->add_option("--in", inPath, "input file (default: stdin)");
    analyzeCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* buildCmd = app.add_subcommand("build", "construct an exceptional-family member");
    std::string buildFamily, buildInner;
    int buildN = 0, buildM = 0;
    bool buildFwd = false, buildBwd = false;
    buildCmd->add_option("--family", buildFamily, "d1 d2 d3 d4 g1 g2 g3 g4 g5 g6 d1p d3p")
        ->required();
    buildCmd->add_option("--n", buildN, "first block size / parameter n");
    buildCmd->add_option("--m", buildM, "second block size (d1/g1/g5)");
    buildCmd->add_flag("--fwd", buildFwd, "include the forward option arc/edge (d3/g3)");
    buildCmd->add_flag("--bwd", buildBwd, "include the backward option arc/edge (d3/g3)");
    buildCmd->add_option("--inner", buildInner,
                         "inner graph line (digraph6 for d2/g2, graph6 for g6); "
                         "it is canonicalized before building");
    buildCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* classifyCmd = app.add_subcommand(
        "classify", "print the exceptional-family tag of each input graph, or 'none'");
    bool classifyMatched = false, classifyPrimed = false;
    classifyCmd->add_flag("--matched", classifyMatched,
                          "treat input as matched bipartite (G1..G4 catalogue)");
    classifyCmd->add_flag("--primed", classifyPrimed,
                          "map directed tags to the all-pairs sub-catalogue (D1'/D2/D3'/D4)");
    classifyCmd->add_option("--in", inPath, "input file (default: stdin)");
    classifyCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* convertCmd = app.add_subcommand(
        "convert", "translate between the digraph and matched-graph representations");
    bool convExpand = false, convContract = false, convDouble = false;
    convertCmd->add_flag("--expand", convExpand,
                         "digraph6 -> graph6 of the matched pair expansion");
    convertCmd->add_flag("--contract", convContract,
                         "matched graph6 -> digraph6 of the contraction");
    convertCmd->add_flag("--double", convDouble,
                         "graph6 -> digraph6 with both arcs per edge");
    convertCmd->add_option("--in", inPath, "input file (default: stdin)");
    convertCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* verifyCmd = app.add_subcommand(
        "verify", "run an exhaustive certification campaign and emit JSONL reports");
    std::string verifyTheorem;
    int verifyOrder = 0, verifyShards = 1, verifyShardIndex = -1, verifyThreads = 1;
    bool verifyTimings = false;
    verifyCmd->add_option("--theorem", verifyTheorem, "11 | 12 | 14 | cor")->required();
    verifyCmd->add_option("--order", verifyOrder, "graph order to enumerate")->required();
    verifyCmd->add_option("--shards", verifyShards, "number of keyspace shards (power of two)");
    verifyCmd->add_option("--shard-index", verifyShardIndex,
                          "run only this shard (default: all shards)");
    verifyCmd->add_option("--threads", verifyThreads, "worker threads when running all shards");
    verifyCmd->add_flag("--timings", verifyTimings,
                        "record wall-clock micros in reports (breaks byte determinism)");
    verifyCmd->add_option("--out", outPath, "output file (default: stdout)");

    auto* deriveCmd = app.add_subcommand(
        "derive-g4", "constrained search for the 7-pair exception; prints the contraction");
    deriveCmd->add_option("--out", outPath, "output file (default: stdout)");

    try {
        std::vector<const char*> argv;
        argv.push_back("hamlab");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }
    checkHasMinSlack = minSlackOpt->count() > 0;

    try {
        IoStreams io;
        bindStreams(io, inPath, outPath, in, out);

        if (checkCmd->parsed()) {
            auto mode = conditionModeFromName(checkCondition);
            if (!mode) throw DomainError("unknown condition: " + checkCondition);
            forEachLine(*io.in, err, [&](const std::string& line) {
                ConditionReport report;
                if (directedPairMode(*mode)) {
                    if (!isDigraph6Line(line))
                        throw DomainError("condition '" + checkCondition +
                                          "' expects digraph6 input");
                    report = digraphSlack(parseDigraph6(line), *mode);
                } else if (*mode == ConditionMode::lasVergnas) {
                    report = bipartiteSlack(parseMatchedLine(line), *mode);
                } else {
                    if (isDigraph6Line(line))
                        throw DomainError("condition '" + checkCondition +
                                          "' expects graph6 input");
                    report = undirectedSlack(parseGraph6(line), *mode);
                }
                if (checkHasMinSlack) {
                    if (report.vacuous() || *report.slack >= checkMinSlack)
                        *io.out << line << '\n';
                } else {
                    printConditionReport(*io.out, report);
                }
            });
            return 0;
        }

        if (solveCmd->parsed()) {
            if (solveConstructive && !solveMatched)
                throw DomainError("--constructive requires --matched input");
            forEachLine(*io.in, err, [&](const std::string& line) {
                if (solveMatched) {
                    MatchedBipartite g = parseMatchedLine(line);
                    std::optional<AlternatingCycle> cycle;
                    if (solveConstructive) {
                        auto result = constructiveSolve(g);
                        for (std::size_t i = 0; i < result.steps.size(); ++i) {
                            const auto& s = result.steps[i];
                            err << "step " << i + 1 << ": " << stepKindName(s.kind)
                                << " cycle-length=" << s.cycleLength;
                            if (!s.note.empty()) err << " " << s.note;
                            err << "\n";
                        }
                        cycle = result.cycle;
                    } else {
                        cycle = findAlternatingHamiltonCycle(g);
                    }
                    if (cycle)
                        printVertexSeq(*io.out, cycle->seq);
                    else
                        *io.out << "no hamilton cycle\n";
                } else if (isDigraph6Line(line)) {
                    if (auto cycle = findHamiltonCycle(parseDigraph6(line)))
                        printVertexSeq(*io.out, *cycle);
                    else
                        *io.out << "no hamilton cycle\n";
                } else {
                    if (auto cycle = findHamiltonCycleUndirected(parseGraph6(line)))
                        printVertexSeq(*io.out, *cycle);
                    else
                        *io.out << "no hamilton cycle\n";
                }
            });
            return 0;
        }

        if (analyzeCmd->parsed()) {
            forEachLine(*io.in, err, [&](const std::string& line) {
                MatchedBipartite g = parseMatchedLine(line);
                AnalysisResult result = analyzeStructure(g);
                nlohmann::ordered_json j;
                j["hamiltonian"] = result.hamiltonian;
                if (result.hamiltonCycle) j["cycle"] = result.hamiltonCycle->seq;
                if (result.decomposition) {
                    j["longestCycle"] = result.decomposition->longestCycle.length();
                    j["criticalPairs"] = result.decomposition->criticalPairs;
                    j["centralPathLength"] = result.decomposition->centralPath.length();
                } else {
                    j["longestCycle"] = nullptr;
                }
                if (result.tally) {
                    j["typeCounts"] = {{"t11", result.tally->t11},
                                       {"t12", result.tally->t12},
                                       {"t21", result.tally->t21},
                                       {"t22", result.tally->t22},
                                       {"resolved", result.tally->resolved}};
                }
                auto claims = nlohmann::ordered_json::array();
                for (const auto& c : result.claims)
                    claims.push_back({{"name", c.name},
                                      {"applicable", c.applicable},
                                      {"holds", c.holds},
                                      {"detail", c.detail}});
                j["claims"] = std::move(claims);
                j["allClaimsPass"] = result.allClaimsPass();
                *io.out << j.dump() << '\n';
            });
            return 0;
        }

        if (buildCmd->parsed()) {
            auto kind = familyKindFromName(buildFamily);
            if (!kind) throw DomainError("unknown family: " + buildFamily);
            auto needInner = [&]() -> const std::string& {
                if (buildInner.empty())
                    throw DomainError("--family " + buildFamily + " requires --inner");
                return buildInner;
            };
            FamilyTag tag = FamilyTag::d4();
            switch (*kind) {
                case FamilyKind::d1: tag = FamilyTag::d1(buildN, buildM); break;
                case FamilyKind::d2:
                    if (!isDigraph6Line(needInner()))
                        throw DomainError("the d2 inner graph must be digraph6");
                    tag = FamilyTag::d2(buildN, parseDigraph6(buildInner));
                    break;
                case FamilyKind::d3: tag = FamilyTag::d3(buildN, buildFwd, buildBwd); break;
                case FamilyKind::d4: tag = FamilyTag::d4(); break;
                case FamilyKind::g1: tag = FamilyTag::g1(buildN, buildM); break;
                case FamilyKind::g2: tag = FamilyTag::g2(buildN, parseMatchedLine(needInner())); break;
                case FamilyKind::g3: tag = FamilyTag::g3(buildN, buildFwd, buildBwd); break;
                case FamilyKind::g4: tag = FamilyTag::g4(); break;
                case FamilyKind::g5: tag = FamilyTag::g5(buildN, buildM); break;
                case FamilyKind::g6:
                    if (isDigraph6Line(needInner()))
                        throw DomainError("the g6 inner graph must be graph6");
                    tag = FamilyTag::g6(buildN, parseGraph6(buildInner));
                    break;
                case FamilyKind::d1Prime: tag = FamilyTag::d1Prime(buildN); break;
                case FamilyKind::d3Prime: tag = FamilyTag::d3Prime(buildFwd, buildBwd); break;
            }
            switch (tag.kind) {
                case FamilyKind::g1:
                case FamilyKind::g2:
                case FamilyKind::g3:
                case FamilyKind::g4: {
                    MatchedBipartite g = buildBipartite(tag);
                    err << "built " << tag.str() << " nu=" << g.nu() << "\n";
                    *io.out << emitGraph6(matchedToLabeled(g)) << '\n';
                    break;
                }
                case FamilyKind::g5:
                case FamilyKind::g6: {
                    UndirectedGraph g = buildUndirected(tag);
                    err << "built " << tag.str() << " order=" << g.order() << "\n";
                    *io.out << emitGraph6(g) << '\n';
                    break;
                }
                default: {
                    Digraph d = buildDirected(tag);
                    err << "built " << tag.str() << " order=" << d.order() << "\n";
                    *io.out << emitDigraph6(d) << '\n';
                    break;
                }
            }
            return 0;
        }

        if (classifyCmd->parsed()) {
            forEachLine(*io.in, err, [&](const std::string& line) {
                std::optional<FamilyTag> tag;
                if (classifyMatched) {
                    tag = recognizeBipartite(parseMatchedLine(line));
                } else if (isDigraph6Line(line)) {
                    tag = recognizeDirected(parseDigraph6(line));
                    if (tag && classifyPrimed) tag = toTheorem14Tag(*tag);
                } else {
                    tag = recognizeUndirected(parseGraph6(line));
                }
                *io.out << (tag ? tag->str() : "none") << '\n';
            });
            return 0;
        }

        if (convertCmd->parsed()) {
            int chosen = (convExpand ? 1 : 0) + (convContract ? 1 : 0) + (convDouble ? 1 : 0);
            if (chosen != 1)
                throw DomainError("choose exactly one of --expand / --contract / --double");
            forEachLine(*io.in, err, [&](const std::string& line) {
                if (convExpand) {
                    if (!isDigraph6Line(line)) throw DomainError("--expand expects digraph6 input");
                    *io.out << emitGraph6(matchedToLabeled(expand(parseDigraph6(line)))) << '\n';
                } else if (convContract) {
                    if (isDigraph6Line(line))
                        throw DomainError("--contract expects matched graph6 input");
                    *io.out << emitDigraph6(contract(matchedFromLabeled(parseGraph6(line))))
                            << '\n';
                } else {
                    if (isDigraph6Line(line)) throw DomainError("--double expects graph6 input");
                    *io.out << emitDigraph6(doubleUndirected(parseGraph6(line))) << '\n';
                }
            });
            return 0;
        }

        if (verifyCmd->parsed()) {
            auto variant = verifyVariantFromName(verifyTheorem);
            if (!variant) throw DomainError("unknown campaign: " + verifyTheorem);
            if (verifyShardIndex >= 0) {
                VerifyOptions opts;
                opts.shard = EnumerationShard{verifyShardIndex, verifyShards};
                opts.recordElapsed = verifyTimings;
                VerifyReport report = verifyMainTheorem(verifyOrder, *variant, opts);
                *io.out << report.toJsonLine() << '\n';
                printVerifySummary(err, report);
            } else {
                auto reports = verifyAllShards(verifyOrder, *variant, verifyShards,
                                               verifyThreads, verifyTimings);
                for (const auto& r : reports) *io.out << r.toJsonLine() << '\n';
                VerifyReport merged =
                    reports.size() > 1 ? mergeReports(reports) : reports.front();
                if (reports.size() > 1) *io.out << merged.toJsonLine() << '\n';
                printVerifySummary(err, merged);
            }
            return 0;
        }

        if (deriveCmd->parsed()) {
            DeriveG4Result result = deriveG4();
            for (const auto& rep : result.classes)
                *io.out << emitDigraph6(contract(rep)) << '\n';
            err << "assignments=" << result.assignmentsTried
                << " survivors=" << result.labeledSurvivors
                << " classes=" << result.classes.size() << "\n";
            for (std::size_t i = 0; i < result.classes.size(); ++i) {
                auto tag = recognizeBipartite(result.classes[i]);
                err << "class " << result.classCodes[i]
                    << " family=" << (tag ? tag->str() : "none") << "\n";
            }
            if (result.classes.size() != 1) {
                err << "error: expected exactly one isomorphism class, found "
                    << result.classes.size() << "\n";
                return 1;
            }
            return 0;
        }

        return 0;
    } catch (const CliFailure& failure) {
        return failure.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hamlab
