#include "relip/stability.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace relip {

namespace {

// y'-samples inside the output window: lattice points plus piece vertices
std::vector<VecQ> valueSamples(const PLSet& values, const VecQ& yCenter,
                               const Rational& delta, const Rational& h,
                               const Limits& lim) {
    std::vector<VecQ> out;
    std::set<std::string> seen;
    auto push = [&](const VecQ& y) {
        std::string key = vecToString(y);
        if (seen.insert(key).second) out.push_back(y);
    };
    ConvexPolyhedron window = ConvexPolyhedron::box(yCenter, delta, lim);
    forEachLatticePoint(yCenter, delta, h, lim.gridBudget, [&](const VecQ& y) {
        if (values.contains(y)) push(y);
    });
    for (const auto& piece : values.pieces) {
        ConvexPolyhedron clipped = piece.intersect(window);
        if (clipped.isEmpty()) continue;
        auto vr = clipped.vrep();
        for (Index i = 0; i < vr.vertices.rows(); ++i)
            push(vr.vertices.row(i).transpose());
    }
    return out;
}

// discretization constant from the steepest graph direction
Rational slopeConstant(const PLMultifunction& s, std::string& note) {
    Rational worstSq(0);
    bool vertical = false;
    for (const auto& piece : s.graph.pieces) {
        if (piece.isEmpty()) continue;
        auto vr = piece.vrep();
        std::vector<VecQ> dirs;
        for (Index i = 0; i < vr.rays.rows(); ++i)
            dirs.push_back(vr.rays.row(i).transpose());
        for (Index i = 0; i < vr.vertices.rows(); ++i)
            for (Index j = i + 1; j < vr.vertices.rows(); ++j)
                dirs.push_back(VecQ(vr.vertices.row(i).transpose() -
                                    vr.vertices.row(j).transpose()));
        for (const VecQ& d : dirs) {
            Rational dxSq = squaredNorm(VecQ(d.head(s.inDim)));
            Rational dySq = squaredNorm(VecQ(d.tail(s.outDim)));
            if (dxSq == 0) {
                if (dySq > 0) vertical = true;
                continue;
            }
            Rational r = dySq / dxSq;
            if (r > worstSq) worstSq = r;
        }
    }
    if (vertical) {
        note = "vertical graph direction, discretization constant capped";
        return Rational(1000);
    }
    auto bounds = sqrtBounds(worstSq, 32);
    return 2 * (1 + bounds.second);
}

}  // namespace

OracleResult bruteForceLip(const ConstrainedPoint& pt, const Rational& delta,
                           const Rational& gridStep) {
    if (gridStep <= 0 || gridStep >= delta)
        throw Error("bruteForceLip: degenerate grid");
    const Limits& lim = pt.omega.limits();
    OracleResult out;
    out.loSq = Rational(0);

    std::vector<VecQ> xs;
    forEachLatticePoint(pt.x, delta, gridStep, lim.gridBudget,
                        [&](const VecQ& x) {
                            if (pt.omega.contains(x)) xs.push_back(x);
                        });
    std::vector<PLSet> values;
    values.reserve(xs.size());
    for (const VecQ& x : xs) values.push_back(evaluate(pt.mapping, x));

    for (size_t ip = 0; ip < xs.size(); ++ip) {
        std::vector<VecQ> ys =
            valueSamples(values[ip], pt.y, delta, gridStep, lim);
        if (ys.empty()) continue;
        for (size_t ix = 0; ix < xs.size(); ++ix) {
            if (ix == ip) continue;
            Rational sep = squaredNorm(VecQ(xs[ip] - xs[ix]));
            if (sep == 0) continue;
            if (values[ix].isEmpty()) {
                out.unbounded = true;
                out.note = "empty value set inside the window";
                return out;
            }
            for (const VecQ& y : ys) {
                auto d = values[ix].distanceSq(y);
                Rational ratioSq = d->distSq / sep;
                ++out.pairs;
                if (ratioSq > out.loSq) out.loSq = ratioSq;
                if (ratioSq > lim.ratioCeilingSq) {
                    out.unbounded = true;
                    out.note = "ratio ceiling exceeded";
                    return out;
                }
            }
        }
    }
    std::string slopeNote;
    out.slopeC = slopeConstant(pt.mapping, slopeNote);
    out.note += slopeNote;
    auto loBounds = sqrtBounds(out.loSq, 64);
    Rational hi = loBounds.second + out.slopeC * gridStep / delta;
    out.hiSq = hi * hi;
    return out;
}

namespace {

struct StratumThreshold {
    bool exact = true;
    bool unconstrained = false;  // input tangent is trivial: no threshold
    Rational minSq;              // valid when exact and not unconstrained
};

StratumThreshold stratumThresholdSq(const Stratum& s, Index n, Index m) {
    StratumThreshold out;
    if (s.omegaTangent.isTrivial()) {
        out.unconstrained = true;
        return out;
    }
    if (n == 1) {
        bool first = true;
        for (long cand : {1L, -1L}) {
            VecQ xstar(1);
            xstar[0] = Rational(cand);
            if (!s.omegaTangent.contains(xstar)) continue;
            VecQ v = concat(xstar, VecQ::Zero(m));
            SupportValue sup = supportOnBall(s.graphModel.tangent, v);
            if (first || sup.sq < out.minSq) out.minSq = sup.sq;
            first = false;
        }
        if (first) out.unconstrained = true;  // no unit candidates
        return out;
    }
    out.exact = false;
    return out;
}

// witness search for higher-dimensional inputs: rational unit-free scaling
std::optional<VecQ> inputWitness(const Stratum& s, Index n, Index m,
                                 const Rational& epsSq) {
    const MatQ& g = s.omegaTangent.generators();
    std::vector<VecQ> cands;
    for (Index i = 0; i < g.rows(); ++i) cands.push_back(g.row(i).transpose());
    if (g.rows() > 1) {
        VecQ sum = VecQ::Zero(n);
        for (Index i = 0; i < g.rows(); ++i) sum += g.row(i).transpose();
        cands.push_back(std::move(sum));
    }
    for (const VecQ& c : cands) {
        if (isZero(c)) continue;
        VecQ v = concat(c, VecQ::Zero(m));
        SupportValue sup = supportOnBall(s.graphModel.tangent, v);
        if (sup.nonpositive || sup.sq <= epsSq * squaredNorm(c)) return c;
    }
    return std::nullopt;
}

}  // namespace

CriterionResult neighborhoodCriterion(const ConstrainedPoint& pt,
                                      const Rational& eps,
                                      const Rational& delta) {
    if (eps <= 0 || eps >= 1)
        throw Error("neighborhoodCriterion: eps out of (0, 1)");
    StratumCatalog catalog = stratify(pt, delta);
    const Index n = pt.mapping.inDim, m = pt.mapping.outDim;
    CriterionResult out;
    bool haveThreshold = false;
    Rational minSq;
    bool allExact = true;
    for (const auto& s : catalog.strata) {
        StratumThreshold t = stratumThresholdSq(s, n, m);
        if (t.unconstrained) continue;
        if (!t.exact) {
            allExact = false;
            if (auto w = inputWitness(s, n, m, eps * eps)) {
                out.verdict = Verdict::False;
                out.exact = true;
                out.note = "witness covector at a stratum representative";
                return out;
            }
            continue;
        }
        if (!haveThreshold || t.minSq < minSq) minSq = t.minSq;
        haveThreshold = true;
    }
    if (haveThreshold && eps * eps >= minSq) {
        out.verdict = Verdict::False;  // an exact stratum already violates
        out.exact = true;
        out.thresholdSq = minSq;
        return out;
    }
    if (!allExact) {
        out.verdict = Verdict::Undecided;
        out.exact = false;
        out.note =
            "directional optimization beyond one input dimension is "
            "sampled only; no witness found";
        return out;
    }
    out.exact = true;
    if (!haveThreshold) {
        out.verdict = Verdict::True;  // no nonzero input covector anywhere
        out.thresholdSq = Rational(1);
        out.note = "input tangent trivial on every stratum";
        return out;
    }
    out.thresholdSq = minSq;
    out.verdict = (eps * eps < minSq) ? Verdict::True : Verdict::False;
    return out;
}

bool constantBoundCriterion(const ConstrainedPoint& pt, const Rational& eps,
                            const Rational& delta) {
    if (eps < 0) throw Error("constantBoundCriterion: negative eps");
    StratumCatalog catalog = stratify(pt, delta);
    for (const auto& s : catalog.strata) {
        if (s.omegaTangent.isTrivial()) continue;
        if (eps > 0) return false;  // scaling admits arbitrarily small pairs
        // eps = 0: need a direction with nonpositive support
        const MatQ& g = s.omegaTangent.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            VecQ v = concat(VecQ(g.row(i).transpose()),
                            VecQ::Zero(pt.mapping.outDim));
            SupportValue sup = supportOnBall(s.graphModel.tangent, v);
            if (sup.nonpositive) return false;
        }
    }
    return true;
}

namespace {

VecQ vecFromPair(const Rational& a, const Rational& b) {
    VecQ v(2);
    v[0] = a;
    v[1] = b;
    return v;
}

std::pair<Rational, Rational> surdBoundsLocal(const QuadExt& x) {
    if (x.b == 0 || x.d == 0) return {x.a, x.a};
    auto bounds = sqrtBounds(Rational(x.d), 80);
    if (x.b > 0) return {x.a + x.b * bounds.first, x.a + x.b * bounds.second};
    return {x.a + x.b * bounds.second, x.a + x.b * bounds.first};
}

VecQ rot90(const VecQ& v) {
    VecQ out(2);
    out[0] = -v[1];
    out[1] = v[0];
    return out;
}

int angleHalf(const VecQ& v) {
    if (v[1] > 0) return 0;
    if (v[1] == 0 && v[0] > 0) return 0;
    return 1;
}

bool angleLess(const VecQ& a, const VecQ& b) {
    int ha = angleHalf(a), hb = angleHalf(b);
    if (ha != hb) return ha < hb;
    Rational cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

// quadratic polynomial in t of <g, w(t)>^2/|g|^2 - gammaSq |w(t)|^2 with
// w(t) = (1 - t) r1 + t r2
Poly edgeQuadratic(const VecQ& g, const VecQ& r1, const VecQ& r2,
                   const Rational& gammaSq) {
    VecQ a = r1;           // w(t) = a + t b
    VecQ b = r2 - r1;
    Rational ga = g.dot(a) , gb = g.dot(b);
    Rational gg = squaredNorm(g);
    // (ga + t gb)^2 / gg - gammaSq ((a + t b).(a + t b))
    Rational c0 = ga * ga / gg - gammaSq * a.dot(a);
    Rational c1 = 2 * ga * gb / gg - gammaSq * 2 * a.dot(b);
    Rational c2 = gb * gb / gg - gammaSq * b.dot(b);
    return Poly::fromCoeffs({c0, c1, c2});
}

struct KappaSector {
    std::vector<Poly> conditions;  // all must be <= 0
};

// Exact two-dimensional decision: does some nonzero w = (u, t) satisfy
//   u in T, sup-support of w over the tangent union <= gamma^2 |w|^2,
//   u^2 > kappa^2 t^2 ?
bool kappaViolationExists2d(const Stratum& s, const Rational& kappa,
                            const Rational& gamma, const Limits& lim) {
    const ConeUnion& u = s.graphModel.tangent;
    Rational gammaSq = gamma * gamma;
    Rational kappaSq = kappa * kappa;
    auto inT = [&](const Rational& uu) {
        VecQ x(1);
        x[0] = uu;
        return s.omegaTangent.contains(x);
    };
    auto violatesC = [&](const VecQ& w) {
        return w[0] * w[0] > kappaSq * w[1] * w[1];
    };
    auto condB = [&](const VecQ& w) {
        SupportValue sup = supportOnBall(u, w);
        return sup.nonpositive || sup.sq <= gammaSq * squaredNorm(w);
    };

    // candidate boundary rays
    std::vector<VecQ> rays;
    auto addRay = [&](VecQ v) {
        VecQ p = primitive(v);
        if (!isZero(p)) rays.push_back(std::move(p));
    };
    addRay(vecFromPair(Rational(1), Rational(0)));
    addRay(vecFromPair(Rational(-1), Rational(0)));
    addRay(vecFromPair(Rational(0), Rational(1)));
    addRay(vecFromPair(Rational(0), Rational(-1)));
    for (int su = -1; su <= 1; su += 2)
        for (int st = -1; st <= 1; st += 2)
            addRay(vecFromPair(Rational(su) * kappa, Rational(st)));
    for (const auto& piece : u.pieces) {
        const MatQ& h = piece.halfspaces();
        for (Index i = 0; i < h.rows(); ++i) {
            addRay(rot90(h.row(i).transpose()));
            addRay(-rot90(h.row(i).transpose()));
        }
        const MatQ& g = piece.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            addRay(g.row(i).transpose());
            addRay(-g.row(i).transpose());
            addRay(rot90(g.row(i).transpose()));
            addRay(-rot90(g.row(i).transpose()));
        }
    }
    std::sort(rays.begin(), rays.end(), angleLess);
    rays.erase(std::unique(rays.begin(), rays.end(),
                           [](const VecQ& a, const VecQ& b) {
                               return lexCompare(a, b) == 0;
                           }),
               rays.end());
    std::sort(rays.begin(), rays.end(), angleLess);

    // ray candidates
    for (const VecQ& r : rays) {
        if (inT(r[0]) && violatesC(r) && condB(r)) return true;
    }

    // open sectors between consecutive rays
    const size_t nr = rays.size();
    for (size_t i = 0; i < nr; ++i) {
        const VecQ& r1 = rays[i];
        const VecQ& r2 = rays[(i + 1) % nr];
        VecQ mid = primitive(VecQ(r1 + r2));
        if (isZero(mid)) continue;  // antipodal guard
        if (!inT(mid[0]) || !violatesC(mid)) continue;
        // per-piece single quadratic forms on the sector
        std::vector<Poly> conds;
        bool sectorDead = false;
        for (const auto& piece : u.pieces) {
            if (piece.isTrivial()) continue;
            if (piece.contains(mid)) {
                // support equals |w| on the sector: gamma < 1 kills it
                sectorDead = true;
                break;
            }
            const MatQ& g = piece.generators();
            for (Index gi = 0; gi < g.rows(); ++gi) {
                VecQ gen = g.row(gi).transpose();
                if (gen.dot(mid) > 0)
                    conds.push_back(edgeQuadratic(gen, r1, r2, gammaSq));
            }
        }
        if (sectorDead) continue;
        if (conds.empty()) return true;  // support vanishes on the sector
        // rational sample points between root bounds
        std::vector<Rational> breaks = {Rational(0), Rational(1)};
        struct SurdRoot {
            QuadExt value;
            size_t cond;
        };
        std::vector<SurdRoot> surds;
        for (size_t ci = 0; ci < conds.size(); ++ci) {
            Poly p = conds[ci];
            if (p.degree() < 1) continue;
            for (const QuadExt& root : quadraticRoots(p)) {
                auto rb = surdBoundsLocal(root);
                if (rb.second <= 0 || rb.first >= 1) {
                    // root clearly outside (0,1): only keep if straddling
                    if (!(rb.first < 1 && rb.second > 0)) continue;
                }
                breaks.push_back(std::max(Rational(0), rb.first));
                breaks.push_back(std::min(Rational(1), rb.second));
                surds.push_back({root, ci});
            }
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (size_t bi = 0; bi + 1 < breaks.size(); ++bi) {
            Rational t = (breaks[bi] + breaks[bi + 1]) / 2;
            if (t <= 0 || t >= 1) continue;
            bool ok = true;
            for (const Poly& p : conds) {
                if (p.eval(t) > 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        // touch points at exact roots
        for (const SurdRoot& sr : surds) {
            const QuadExt& t = sr.value;
            // inside (0,1)?
            if ((t - QuadExt::rationalValue(Rational(0))).signOf() <= 0)
                continue;
            if ((t - QuadExt::rationalValue(Rational(1))).signOf() >= 0)
                continue;
            bool ok = true;
            for (const Poly& p : conds) {
                QuadExt val = evalAt(p, QuadExt(t.a, t.b, t.d));
                if (val.signOf() > 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    (void)lim;
    return false;
}

}  // namespace

CriterionResult kappaCondition(const ConstrainedPoint& pt,
                               const Rational& kappa, const Rational& gamma,
                               const Rational& delta) {
    if (kappa < 0) throw Error("kappaCondition: kappa must be nonnegative");
    if (gamma <= 0 || gamma >= 1)
        throw Error("kappaCondition: gamma out of (0, 1)");
    StratumCatalog catalog = stratify(pt, delta);
    const Index n = pt.mapping.inDim, m = pt.mapping.outDim;
    CriterionResult out;
    if (n == 1 && m == 1) {
        for (const auto& s : catalog.strata) {
            if (kappaViolationExists2d(s, kappa, gamma, pt.omega.limits())) {
                out.verdict = Verdict::False;
                out.exact = true;
                out.note = "violating dual pair on a stratum";
                return out;
            }
        }
        out.verdict = Verdict::True;
        out.exact = true;
        return out;
    }
    // higher dimensions: certified witnesses only
    for (const auto& s : catalog.strata) {
        std::vector<VecQ> probes;
        for (const auto& piece : s.graphModel.tangent.pieces) {
            PolyCone polar = piece.polar();
            const MatQ& g = polar.generators();
            for (Index i = 0; i < g.rows(); ++i)
                probes.push_back(g.row(i).transpose());
        }
        for (const VecQ& w : probes) {
            VecQ xstar = w.head(n);
            VecQ tpart = w.tail(m);
            if (!s.omegaTangent.contains(xstar)) continue;
            SupportValue sup = supportOnBall(s.graphModel.tangent, w);
            bool inGamma = sup.nonpositive ||
                           sup.sq <= gamma * gamma * squaredNorm(w);
            if (!inGamma) continue;
            if (squaredNorm(xstar) > kappa * kappa * squaredNorm(tpart)) {
                out.verdict = Verdict::False;
                out.exact = true;
                out.note = "violating dual pair on a stratum";
                return out;
            }
        }
    }
    out.verdict = Verdict::Undecided;
    out.note = "certification beyond one-dimensional blocks not implemented; "
               "no witness found";
    return out;
}

bool pointbasedCriterion(const ConstrainedPoint& pt) {
    CoderivativeGraph d =
        limitingCoderivative(pt, CoderivativeKind::LimitingMixed);
    return coderivativeKernel(d).isTrivial();
}

BoundScan exactBoundScan(const ConstrainedPoint& pt, const Rational& delta) {
    if (delta <= 0) throw Error("exactBoundScan: delta must be positive");
    StratumCatalog catalog = stratify(pt, delta);
    const Index n = pt.mapping.inDim, m = pt.mapping.outDim;
    BoundScan out;
    bool haveThreshold = false;
    Rational minSq;
    for (const auto& s : catalog.strata) {
        StratumThreshold t = stratumThresholdSq(s, n, m);
        if (t.unconstrained) continue;
        if (!t.exact) {
            out.exact = false;
            continue;
        }
        if (!haveThreshold || t.minSq < minSq) minSq = t.minSq;
        haveThreshold = true;
    }
    if (!haveThreshold) {
        out.epsStarSq = Rational(1);
        out.modulusSq = Rational(0);
        return out;
    }
    if (minSq == 0) {
        out.unbounded = true;
        return out;
    }
    out.epsStarSq = std::min(minSq, Rational(1));
    out.modulusSq = Rational(1) / out.epsStarSq - 1;
    return out;
}

LipschitzReport boundEstimates(const ConstrainedPoint& pt) {
    return boundEstimates(pt, makeRational(1, 10), makeRational(1, 100));
}

LipschitzReport boundEstimates(const ConstrainedPoint& pt,
                               const Rational& delta,
                               const Rational& gridStep) {
    LipschitzReport rep;
    rep.oracle = bruteForceLip(pt, delta, gridStep);
    CoderivativeGraph mixed =
        limitingCoderivative(pt, CoderivativeKind::LimitingMixed);
    CoderivativeGraph normal =
        limitingCoderivative(pt, CoderivativeKind::LimitingNormal);
    rep.normMixed = coderivativeNorm(mixed);
    rep.normNormal = coderivativeNorm(normal);
    rep.scan = exactBoundScan(pt, delta);
    rep.pointbased = pointbasedCriterion(pt);
    rep.coderivativelyNormal = coderivativeNormalityCheck(pt).value;

    std::ostringstream notes;
    if (rep.oracle.unbounded || rep.scan.unbounded || rep.normMixed.unbounded ||
        rep.normNormal.unbounded || !rep.pointbased) {
        rep.consistent = rep.oracle.unbounded && rep.scan.unbounded &&
                         rep.normMixed.unbounded && rep.normNormal.unbounded &&
                         !rep.pointbased;
        notes << "unbounded side";
    } else {
        bool sandwich = rep.normMixed.sq <= rep.oracle.hiSq &&
                        rep.oracle.loSq <= rep.normNormal.bounds.second;
        bool normsAgree = rep.normMixed.sq == rep.normNormal.sq;
        bool scanAgrees = !rep.scan.exact || !rep.normMixed.exact ||
                          rep.scan.modulusSq == rep.normMixed.sq;
        rep.consistent = sandwich && normsAgree && scanAgrees;
        notes << "bounded side";
    }
    rep.notes = notes.str();
    return rep;
}

MetricRegularity metricRegularityCheck(const ConstrainedPoint& pt) {
    MetricRegularity out;
    PLMultifunction restricted = restrict(pt.mapping, pt.omega);
    // image of the constrained mapping
    std::vector<Index> keep;
    for (Index j = 0; j < pt.mapping.outDim; ++j)
        keep.push_back(pt.mapping.inDim + j);
    PLSet image;
    image.dim = pt.mapping.outDim;
    for (const auto& piece : restricted.graph.pieces) {
        ConvexPolyhedron shadow = piece.eliminateKeep(keep);
        if (!shadow.isEmpty()) image.pieces.push_back(std::move(shadow));
    }
    // drop duplicates, then require a convex image
    std::vector<ConvexPolyhedron> unique;
    for (auto& p : image.pieces) {
        bool dup = false;
        for (const auto& q : unique)
            if (p.setEquals(q)) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(std::move(p));
    }
    if (unique.size() != 1) {
        // a union may still be convex when one piece absorbs the rest
        std::vector<ConvexPolyhedron> maximal;
        for (const auto& p : unique) {
            bool covered = false;
            for (const auto& q : unique) {
                if (&p != &q && p.includedIn(q)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) maximal.push_back(p);
        }
        unique = std::move(maximal);
    }
    if (unique.size() != 1) {
        // the union may still be convex: compare against its hull
        PLSet imageSet;
        imageSet.dim = image.dim;
        imageSet.pieces = unique;
        ConvexPolyhedron hull = convexHull(imageSet);
        if (plsetEquals(imageSet, PLSet::single(hull))) {
            unique.clear();
            unique.push_back(std::move(hull));
        }
    }
    if (unique.size() != 1) {
        out.imageConvex = false;
        out.verdict = Verdict::Undecided;
        out.note = "image of the constrained mapping is not convex; "
                   "equivalence transport unavailable";
        return out;
    }
    ConvexPolyhedron omegaY = unique.front();
    PLMultifunction inverse = invert(restricted);
    ConstrainedPoint inversePt(inverse, omegaY, pt.y, pt.x);
    out.pointbased = pointbasedCriterion(inversePt);
    CoderivativeGraph d =
        limitingCoderivative(inversePt, CoderivativeKind::LimitingMixed);
    out.modulus = coderivativeNorm(d);
    out.verdict = out.pointbased ? Verdict::True : Verdict::False;
    out.note = "inverse analyzed relative to the image of the constrained "
               "mapping";
    return out;
}

}  // namespace relip
