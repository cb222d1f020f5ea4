#pragma once

#include "relip/calculus.hpp"

#include <map>

namespace relip {

// Parsed problem file: spaces, constraint set, named mappings/points/sets,
// and task parameters. Rationals are accepted as "p/q" strings or integers.
struct ProblemFile {
    Index n = 0;
    Index m = 0;
    std::optional<Index> p;
    ConvexPolyhedron omega;
    std::map<std::string, PLMultifunction> mappings;
    std::map<std::string, VecQ> points;
    std::map<std::string, PLSet> sets;
    std::vector<VecQ> shifts;

    Rational eps = makeRational(1, 2);
    Rational delta = makeRational(1, 10);
    Rational grid = makeRational(1, 100);
    Rational nu = makeRational(1, 8);
    Rational kappa = Rational(2);
    Rational gamma = makeRational(1, 10);
    long budget = 2'000'000;
    int dimCap = 8;

    const PLMultifunction& mapping(const std::string& name) const;
    const VecQ& point(const std::string& name) const;
    const PLSet& set(const std::string& name) const;
};

ProblemFile parseProblem(const std::string& text);
ProblemFile loadProblem(const std::string& path);
// Inverse of parseProblem up to semantic equality of the parts.
std::string serializeProblem(const ProblemFile& problem);

struct RunFlags {
    std::optional<Rational> eps;
    std::optional<Rational> delta;
    std::optional<Rational> grid;
    std::optional<Rational> nu;
    std::optional<Rational> kappa;
    std::optional<Rational> gamma;
    std::optional<long> budget;
    std::optional<int> dimCap;
    std::string variant = "mixed";  // verify-chain / verify-sum
    bool json = false;
    bool timing = false;
};

// Structured verdicts: exact fields always carry the full-precision value;
// decimal renderings are supplementary and never replace them.
struct AnalysisReport {
    std::string command;
    int exitCode = 0;
    struct Entry {
        std::string key;
        std::string exact;
        std::string decimal;  // empty when not numeric
    };
    std::vector<Entry> entries;
    std::vector<std::string> provenance;
    long timingMs = -1;  // only emitted when requested

    void put(const std::string& key, const std::string& exact);
    void putBool(const std::string& key, bool value);
    void putRational(const std::string& key, const Rational& value);
    // squared quantity reported exactly plus a decimal root rendering
    void putSquared(const std::string& key, const Rational& sq);
    void note(const std::string& text);

    std::string renderHuman() const;
    std::string renderJson() const;
};

AnalysisReport runCommand(const std::string& command,
                          const ProblemFile& problem, const RunFlags& flags);

}  // namespace relip
