#include "relip/problem.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace relip {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

Rational rationalField(const json& j, const std::string& where) {
    if (j.is_number_integer())
        return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parseRational(j.get<std::string>());
    fail(where, "expected an integer or a \"p/q\" string");
}

VecQ vectorField(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of rationals");
    VecQ v(static_cast<Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v[static_cast<Index>(i)] =
            rationalField(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

ConvexPolyhedron polyhedronField(const json& j, const std::string& where,
                                 const Limits& lim) {
    if (!j.is_object()) fail(where, "expected a polyhedron object");
    if (!j.contains("dim")) fail(where, "missing 'dim'");
    Index dim = j["dim"].get<Index>();
    std::vector<VecQ> aRows, eRows;
    std::vector<Rational> bVals, fVals;
    auto readRows = [&](const char* key, std::vector<VecQ>& rows,
                        std::vector<Rational>& rhs) {
        if (!j.contains(key)) return;
        const json& arr = j[key];
        if (!arr.is_array()) fail(where, std::string(key) + " must be a list");
        for (size_t i = 0; i < arr.size(); ++i) {
            const json& row = arr[i];
            std::string rw = where + "." + key + "[" + std::to_string(i) + "]";
            if (!row.is_object() || !row.contains("a") || !row.contains("b"))
                fail(rw, "expected {\"a\": [...], \"b\": r}");
            VecQ a = vectorField(row["a"], rw + ".a");
            if (a.size() != dim) fail(rw, "row width differs from 'dim'");
            rows.push_back(std::move(a));
            rhs.push_back(rationalField(row["b"], rw + ".b"));
        }
    };
    readRows("ineqs", aRows, bVals);
    readRows("eqs", eRows, fVals);
    MatQ a = matFromRows(aRows, dim);
    VecQ b(static_cast<Index>(bVals.size()));
    for (size_t i = 0; i < bVals.size(); ++i) b[static_cast<Index>(i)] = bVals[i];
    MatQ e = matFromRows(eRows, dim);
    VecQ f(static_cast<Index>(fVals.size()));
    for (size_t i = 0; i < fVals.size(); ++i) f[static_cast<Index>(i)] = fVals[i];
    return ConvexPolyhedron(dim, std::move(a), std::move(b), std::move(e),
                            std::move(f), lim);
}

PLSet plsetField(const json& j, const std::string& where, const Limits& lim) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("pieces"))
        fail(where, "expected {\"dim\": d, \"pieces\": [...]}");
    PLSet s;
    s.dim = j["dim"].get<Index>();
    for (size_t i = 0; i < j["pieces"].size(); ++i) {
        ConvexPolyhedron piece = polyhedronField(
            j["pieces"][i], where + ".pieces[" + std::to_string(i) + "]", lim);
        if (piece.dim() != s.dim) fail(where, "piece dimension mismatch");
        s.pieces.push_back(std::move(piece));
    }
    return s;
}

std::pair<int, int> lineColumn(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

const PLMultifunction& ProblemFile::mapping(const std::string& name) const {
    auto it = mappings.find(name);
    if (it == mappings.end())
        throw ParseError("unknown mapping '" + name + "'");
    return it->second;
}

const VecQ& ProblemFile::point(const std::string& name) const {
    auto it = points.find(name);
    if (it == points.end()) throw ParseError("unknown point '" + name + "'");
    return it->second;
}

const PLSet& ProblemFile::set(const std::string& name) const {
    auto it = sets.find(name);
    if (it == sets.end()) throw ParseError("unknown set '" + name + "'");
    return it->second;
}

ProblemFile parseProblem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto pos = lineColumn(text, e.byte);
        throw ParseError("line " + std::to_string(pos.first) + ", column " +
                         std::to_string(pos.second) + ": " + e.what());
    }
    ProblemFile pf;
    Limits lim;
    if (j.contains("params")) {
        const json& p = j["params"];
        if (p.contains("dimcap")) pf.dimCap = p["dimcap"].get<int>();
        if (p.contains("budget")) pf.budget = p["budget"].get<long>();
        if (p.contains("eps")) pf.eps = rationalField(p["eps"], "params.eps");
        if (p.contains("delta"))
            pf.delta = rationalField(p["delta"], "params.delta");
        if (p.contains("grid"))
            pf.grid = rationalField(p["grid"], "params.grid");
        if (p.contains("nu")) pf.nu = rationalField(p["nu"], "params.nu");
        if (p.contains("kappa"))
            pf.kappa = rationalField(p["kappa"], "params.kappa");
        if (p.contains("gamma"))
            pf.gamma = rationalField(p["gamma"], "params.gamma");
    }
    lim.dimCap = pf.dimCap;
    lim.enumerationBudget = pf.budget;

    if (!j.contains("dims")) fail("dims", "missing");
    pf.n = j["dims"].value("n", 0);
    pf.m = j["dims"].value("m", 0);
    if (j["dims"].contains("p")) pf.p = j["dims"]["p"].get<Index>();
    if (pf.n <= 0 || pf.m <= 0) fail("dims", "n and m must be positive");

    if (j.contains("omega")) {
        pf.omega = polyhedronField(j["omega"], "omega", lim);
        if (pf.omega.dim() != pf.n) fail("omega", "dimension differs from n");
    } else {
        pf.omega = ConvexPolyhedron::full(pf.n, lim);
    }

    if (j.contains("mappings")) {
        for (auto it = j["mappings"].begin(); it != j["mappings"].end(); ++it) {
            const json& mj = it.value();
            std::string where = "mappings." + it.key();
            if (!mj.is_object() || !mj.contains("in") || !mj.contains("out") ||
                !mj.contains("graph"))
                fail(where, "expected {\"in\": n, \"out\": m, \"graph\": [...]}");
            Index in = mj["in"].get<Index>(), out = mj["out"].get<Index>();
            PLSet graph;
            graph.dim = in + out;
            for (size_t i = 0; i < mj["graph"].size(); ++i) {
                ConvexPolyhedron piece = polyhedronField(
                    mj["graph"][i], where + ".graph[" + std::to_string(i) + "]",
                    lim);
                if (piece.dim() != in + out)
                    fail(where, "graph piece dimension mismatch");
                graph.pieces.push_back(std::move(piece));
            }
            pf.mappings.emplace(it.key(),
                                PLMultifunction::fromGraph(in, out, graph));
        }
    }
    if (j.contains("points")) {
        for (auto it = j["points"].begin(); it != j["points"].end(); ++it)
            pf.points.emplace(it.key(),
                              vectorField(it.value(), "points." + it.key()));
    }
    if (j.contains("sets")) {
        for (auto it = j["sets"].begin(); it != j["sets"].end(); ++it)
            pf.sets.emplace(it.key(),
                            plsetField(it.value(), "sets." + it.key(), lim));
    }
    if (j.contains("shifts")) {
        for (size_t i = 0; i < j["shifts"].size(); ++i)
            pf.shifts.push_back(vectorField(
                j["shifts"][i], "shifts[" + std::to_string(i) + "]"));
    }
    return pf;
}

ProblemFile loadProblem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parseProblem(ss.str());
}

namespace {

json rationalOut(const Rational& r) { return json(toString(r)); }

json vectorOut(const VecQ& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(toString(v[i]));
    return arr;
}

json polyhedronOut(const ConvexPolyhedron& p) {
    json j;
    j["dim"] = p.dim();
    json ineqs = json::array();
    for (Index i = 0; i < p.ineqA().rows(); ++i) {
        json row;
        row["a"] = vectorOut(p.ineqA().row(i).transpose());
        row["b"] = rationalOut(p.ineqB()[i]);
        ineqs.push_back(row);
    }
    if (!ineqs.empty()) j["ineqs"] = ineqs;
    json eqs = json::array();
    for (Index i = 0; i < p.eqE().rows(); ++i) {
        json row;
        row["a"] = vectorOut(p.eqE().row(i).transpose());
        row["b"] = rationalOut(p.eqF()[i]);
        eqs.push_back(row);
    }
    if (!eqs.empty()) j["eqs"] = eqs;
    return j;
}

}  // namespace

std::string serializeProblem(const ProblemFile& problem) {
    json j;
    j["dims"]["n"] = problem.n;
    j["dims"]["m"] = problem.m;
    if (problem.p) j["dims"]["p"] = *problem.p;
    j["omega"] = polyhedronOut(problem.omega);
    if (!problem.mappings.empty()) {
        json ms;
        for (const auto& kv : problem.mappings) {
            json mj;
            mj["in"] = kv.second.inDim;
            mj["out"] = kv.second.outDim;
            json graph = json::array();
            for (const auto& piece : kv.second.graph.pieces)
                graph.push_back(polyhedronOut(piece));
            mj["graph"] = graph;
            ms[kv.first] = mj;
        }
        j["mappings"] = ms;
    }
    if (!problem.points.empty()) {
        json ps;
        for (const auto& kv : problem.points)
            ps[kv.first] = vectorOut(kv.second);
        j["points"] = ps;
    }
    if (!problem.sets.empty()) {
        json ss;
        for (const auto& kv : problem.sets) {
            json sj;
            sj["dim"] = kv.second.dim;
            json pieces = json::array();
            for (const auto& piece : kv.second.pieces)
                pieces.push_back(polyhedronOut(piece));
            sj["pieces"] = pieces;
            ss[kv.first] = sj;
        }
        j["sets"] = ss;
    }
    if (!problem.shifts.empty()) {
        json sh = json::array();
        for (const auto& s : problem.shifts) sh.push_back(vectorOut(s));
        j["shifts"] = sh;
    }
    json params;
    params["eps"] = rationalOut(problem.eps);
    params["delta"] = rationalOut(problem.delta);
    params["grid"] = rationalOut(problem.grid);
    params["nu"] = rationalOut(problem.nu);
    params["kappa"] = rationalOut(problem.kappa);
    params["gamma"] = rationalOut(problem.gamma);
    params["budget"] = problem.budget;
    params["dimcap"] = problem.dimCap;
    j["params"] = params;
    return j.dump(2) + "\n";
}

void AnalysisReport::put(const std::string& key, const std::string& exact) {
    entries.push_back({key, exact, ""});
}

void AnalysisReport::putBool(const std::string& key, bool value) {
    entries.push_back({key, value ? "true" : "false", ""});
}

void AnalysisReport::putRational(const std::string& key,
                                 const Rational& value) {
    entries.push_back({key, toString(value), toDecimalString(value)});
}

void AnalysisReport::putSquared(const std::string& key, const Rational& sq) {
    auto bounds = sqrtBounds(sq, 96);
    entries.push_back({key + "_sq", toString(sq), toDecimalString(sq)});
    entries.push_back({key, "sqrt(" + toString(sq) + ")",
                       toDecimalString(bounds.first)});
}

void AnalysisReport::note(const std::string& text) {
    provenance.push_back(text);
}

std::string AnalysisReport::renderHuman() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    size_t width = 0;
    for (const auto& e : entries) width = std::max(width, e.key.size());
    for (const auto& e : entries) {
        os << "  " << e.key << std::string(width - e.key.size(), ' ') << " = "
           << e.exact;
        if (!e.decimal.empty()) os << "  (~ " << e.decimal << ")";
        os << "\n";
    }
    for (const auto& p : provenance) os << "  # " << p << "\n";
    if (timingMs >= 0) os << "  timing_ms = " << timingMs << "\n";
    os << "exit: " << exitCode << "\n";
    return os.str();
}

std::string AnalysisReport::renderJson() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["exit"] = exitCode;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    for (const auto& e : entries) {
        nlohmann::ordered_json cell;
        cell["exact"] = e.exact;
        if (!e.decimal.empty()) cell["decimal"] = e.decimal;
        results[e.key] = cell;
    }
    j["results"] = results;
    j["provenance"] = provenance;
    if (timingMs >= 0) j["timing_ms"] = timingMs;
    return j.dump(2) + "\n";
}

namespace {

void describeConeUnion(AnalysisReport& rep, const std::string& prefix,
                       const ConeUnion& u) {
    rep.put(prefix + "_pieces", std::to_string(u.pieces.size()));
    for (size_t i = 0; i < u.pieces.size(); ++i) {
        const MatQ& g = u.pieces[i].generators();
        std::ostringstream os;
        for (Index r = 0; r < g.rows(); ++r) {
            if (r) os << " ";
            os << vecToString(g.row(r).transpose());
        }
        rep.put(prefix + "_piece" + std::to_string(i) + "_generators",
                g.rows() == 0 ? "(origin only)" : os.str());
    }
}

void describeNorm(AnalysisReport& rep, const std::string& key,
                  const NormResult& norm) {
    if (norm.unbounded) {
        rep.put(key, "unbounded");
        return;
    }
    rep.putSquared(key, norm.sq);
    if (!norm.exact) {
        rep.put(key + "_bounds", toString(norm.bounds.first) + ".." +
                                     toString(norm.bounds.second));
    }
}

ConstrainedPoint basePoint(const ProblemFile& problem,
                           const std::string& mappingName) {
    return ConstrainedPoint(problem.mapping(mappingName), problem.omega,
                            problem.point("x"), problem.point("y"));
}

AnalysisReport runCone(const ProblemFile& problem, const RunFlags&) {
    AnalysisReport rep;
    rep.command = "cone";
    ConstrainedPoint pt = basePoint(problem, "S");
    PLMultifunction restricted = restrict(pt.mapping, pt.omega);
    LocalConeModel model = contingentCone(restricted.graph, pt.pair());
    describeConeUnion(rep, "tangent", model.tangent);
    rep.putRational("conical_radius", model.radius);
    rep.putBool("conical_radius_unbounded", model.radiusUnbounded);
    PolyCone normal = regularNormalConeOfModel(model);
    describeConeUnion(rep, "regular_normal", ConeUnion::single(normal));
    PolyCone omegaTangent = pt.omega.tangentConeAt(pt.x);
    describeConeUnion(rep, "constraint_tangent",
                      ConeUnion::single(omegaTangent));
    JtStability jt = jtStabilityCheck(problem.omega, pt.x, problem.eps);
    rep.putRational("tangent_stability_delta", jt.delta);
    rep.putBool("tangent_stability_unbounded", jt.unbounded);
    return rep;
}

AnalysisReport runCoderivative(const ProblemFile& problem,
                               const RunFlags& flags) {
    AnalysisReport rep;
    rep.command = "coderivative";
    ConstrainedPoint pt = basePoint(problem, "S");
    CoderivativeGraph mixed =
        limitingCoderivative(pt, CoderivativeKind::LimitingMixed);
    CoderivativeGraph normal =
        limitingCoderivative(pt, CoderivativeKind::LimitingNormal);
    describeConeUnion(rep, "graph", mixed.pieces);
    describeNorm(rep, "norm_mixed", coderivativeNorm(mixed));
    describeNorm(rep, "norm_normal", coderivativeNorm(normal));
    NormalityVerdict nv = coderivativeNormalityCheck(pt);
    rep.putBool("coderivatively_normal", nv.value);
    rep.note(nv.note);
    rep.note(psncVerdict(pt).note);
    rep.note(mixed.note);
    if (problem.points.count("ystar")) {
        PLSet slice = applyCoderivative(mixed, problem.point("ystar"));
        rep.put("applied_pieces", std::to_string(slice.pieces.size()));
        for (size_t i = 0; i < slice.pieces.size(); ++i)
            rep.put("applied_piece" + std::to_string(i),
                    slice.pieces[i].describe());
    }
    (void)flags;
    return rep;
}

AnalysisReport runLipschitz(const ProblemFile& problem, const RunFlags& flags) {
    AnalysisReport rep;
    rep.command = "lipschitz";
    ConstrainedPoint pt = basePoint(problem, "S");
    Rational delta = flags.delta.value_or(problem.delta);
    Rational grid = flags.grid.value_or(problem.grid);
    LipschitzReport lr = boundEstimates(pt, delta, grid);
    rep.putBool("oracle_unbounded", lr.oracle.unbounded);
    if (!lr.oracle.unbounded) {
        rep.putSquared("oracle_lo", lr.oracle.loSq);
        rep.putSquared("oracle_hi", lr.oracle.hiSq);
        rep.put("oracle_pairs", std::to_string(lr.oracle.pairs));
        rep.putRational("oracle_slope_constant", lr.oracle.slopeC);
    }
    describeNorm(rep, "norm_mixed", lr.normMixed);
    describeNorm(rep, "norm_normal", lr.normNormal);
    rep.putBool("scan_unbounded", lr.scan.unbounded);
    if (!lr.scan.unbounded) {
        rep.putRational("eps_star_sq", lr.scan.epsStarSq);
        rep.putSquared("exact_bound", lr.scan.modulusSq);
        if (!lr.scan.exact) rep.putBool("scan_exact", false);
    }
    rep.putBool("pointbased", lr.pointbased);
    rep.putBool("coderivatively_normal", lr.coderivativelyNormal);
    rep.putBool("consistent", lr.consistent);
    // dual bound condition at the requested constant and relaxation
    Rational kappa = flags.kappa.value_or(problem.kappa);
    Rational gamma = flags.gamma.value_or(problem.gamma);
    CriterionResult kc = kappaCondition(pt, kappa, gamma, delta);
    rep.put("kappa_condition",
            kc.verdict == Verdict::True
                ? "true"
                : (kc.verdict == Verdict::False ? "false" : "undecided"));
    rep.putRational("kappa", kappa);
    rep.putRational("gamma", gamma);
    // inverse-side well-posedness through the image transport
    MetricRegularity mr = metricRegularityCheck(pt);
    rep.put("metric_regularity",
            mr.verdict == Verdict::True
                ? "true"
                : (mr.verdict == Verdict::False ? "false" : "undecided"));
    if (mr.verdict != Verdict::Undecided)
        describeNorm(rep, "metric_regularity_modulus", mr.modulus);
    rep.note(mr.note);
    if (!kc.note.empty()) rep.note("kappa:" + kc.note);
    if (!lr.oracle.note.empty()) rep.note("oracle:" + lr.oracle.note);
    rep.note(lr.notes);
    if (!lr.consistent) rep.exitCode = 1;
    return rep;
}

AnalysisReport runVerifyChain(const ProblemFile& problem,
                              const RunFlags& flags) {
    AnalysisReport rep;
    rep.command = "verify-chain";
    ChainVariant variant = ChainVariant::Mixed;
    if (flags.variant == "normal") variant = ChainVariant::Normal;
    if (flags.variant == "strict") variant = ChainVariant::StrictDerivative;
    const PLMultifunction& s1 = problem.mapping("S1");
    const PLMultifunction& s2 = problem.mapping("S2");
    const VecQ& x = problem.point("x");
    const VecQ& y = problem.point("y");
    const VecQ& z = problem.point("z");
    RuleVerdict v = chainRuleCheck(s1, s2, problem.omega, x, y, z, variant);
    rep.put("variant", flags.variant);
    rep.putBool("qualification", v.qualificationHolds);
    rep.putBool("inner_semicontinuity_probe", v.probe.inner);
    rep.putBool("hypotheses_met", v.hypothesesMet);
    rep.putBool("included", v.included);
    if (v.counterexample)
        rep.put("counterexample_ray", vecToString(*v.counterexample));
    if (!v.note.empty()) rep.note(v.note);
    if (!v.hypothesesMet) rep.exitCode = 1;
    return rep;
}

AnalysisReport runVerifySum(const ProblemFile& problem, const RunFlags& flags) {
    AnalysisReport rep;
    rep.command = "verify-sum";
    SumVariant variant =
        flags.variant == "normal" ? SumVariant::Normal : SumVariant::Mixed;
    const PLMultifunction& s1 = problem.mapping("S1");
    const PLMultifunction& s2 = problem.mapping("S2");
    const VecQ& x = problem.point("x");
    const VecQ& y = problem.point("y");
    const VecQ& y1 = problem.point("y1");
    const VecQ& y2 = problem.point("y2");
    RuleVerdict v = sumRuleCheck(s1, s2, problem.omega, x, y, y1, y2, variant);
    rep.put("variant", flags.variant);
    rep.putBool("qualification", v.qualificationHolds);
    rep.putBool("inner_semicontinuity_probe", v.probe.inner);
    rep.putBool("hypotheses_met", v.hypothesesMet);
    rep.putBool("included", v.included);
    if (v.counterexample)
        rep.put("counterexample_ray", vecToString(*v.counterexample));
    if (!v.note.empty()) rep.note(v.note);
    if (!v.hypothesesMet) rep.exitCode = 1;
    return rep;
}

AnalysisReport runExtremal(const ProblemFile& problem, const RunFlags& flags) {
    AnalysisReport rep;
    rep.command = "extremal";
    Rational eps = flags.eps.value_or(problem.eps);
    ShiftVerdict sv =
        extremalDetect(problem.set("L1"), problem.set("L2"), problem.omega,
                       problem.point("point"), problem.shifts);
    rep.putBool("extremal", sv.extremal);
    std::ostringstream os;
    for (bool e : sv.emptyPerShift) os << (e ? "1" : "0");
    rep.put("empty_per_shift", os.str());
    if (sv.extremal) {
        WitnessRecord w =
            extremalWitness(problem.set("L1"), problem.set("L2"), problem.omega,
                            problem.point("point"), eps, problem.shifts);
        rep.putBool("witness_found", w.success);
        for (size_t i = 0; i < w.covectors.size(); ++i)
            rep.put("covector" + std::to_string(i + 1),
                    vecToString(w.covectors[i]));
        for (size_t i = 0; i < w.residualSq.size(); ++i)
            rep.putRational("residual" + std::to_string(i + 1) + "_sq",
                            w.residualSq[i]);
        rep.putRational("normalization_slack_sq", w.normalizationSlackSq);
        if (!w.note.empty()) rep.note(w.note);
        if (!w.success) rep.exitCode = 1;
    } else {
        rep.exitCode = 1;
        rep.note("system is not extremal for the supplied shifts");
    }
    return rep;
}

AnalysisReport runFuzzy(const ProblemFile& problem, const RunFlags& flags) {
    AnalysisReport rep;
    rep.command = "fuzzy";
    Rational eps = flags.eps.value_or(problem.eps);
    Rational nu = flags.nu.value_or(problem.nu);
    WitnessRecord w = fuzzyIntersectionWitness(
        problem.set("T1"), problem.set("T2"), problem.omega,
        problem.point("point"), problem.point("covector"), eps, nu);
    rep.putBool("witness_found", w.success);
    rep.putRational("lambda", w.lambda);
    for (size_t i = 0; i < w.covectors.size(); ++i)
        rep.put("covector" + std::to_string(i + 1),
                vecToString(w.covectors[i]));
    for (size_t i = 0; i < w.residualSq.size(); ++i)
        rep.putRational("residual" + std::to_string(i + 1) + "_sq",
                        w.residualSq[i]);
    rep.putRational("normalization_slack_sq", w.normalizationSlackSq);
    if (!w.note.empty()) rep.note(w.note);
    if (!w.success) rep.exitCode = 1;
    return rep;
}

}  // namespace

AnalysisReport runCommand(const std::string& command,
                          const ProblemFile& problem, const RunFlags& flags) {
    ProblemFile p = problem;
    if (flags.eps) p.eps = *flags.eps;
    if (flags.delta) p.delta = *flags.delta;
    if (flags.grid) p.grid = *flags.grid;
    if (flags.nu) p.nu = *flags.nu;
    if (flags.kappa) p.kappa = *flags.kappa;
    if (flags.gamma) p.gamma = *flags.gamma;
    if (flags.budget) p.budget = *flags.budget;
    if (flags.dimCap) p.dimCap = *flags.dimCap;

    auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    if (command == "cone") {
        rep = runCone(p, flags);
    } else if (command == "coderivative") {
        rep = runCoderivative(p, flags);
    } else if (command == "lipschitz") {
        rep = runLipschitz(p, flags);
    } else if (command == "verify-chain") {
        rep = runVerifyChain(p, flags);
    } else if (command == "verify-sum") {
        rep = runVerifySum(p, flags);
    } else if (command == "extremal") {
        rep = runExtremal(p, flags);
    } else if (command == "fuzzy") {
        rep = runFuzzy(p, flags);
    } else {
        throw Error("unknown command '" + command + "'");
    }
    if (flags.timing) {
        rep.timingMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
    return rep;
}

}  // namespace relip
