#include "relip/calculus.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace relip {

namespace {

bool kernelsSeparated(const ConeUnion& a, const ConeUnion& b) {
    // a and -b intersect only at the origin
    for (const auto& pa : a.pieces) {
        for (const auto& pb : b.pieces) {
            std::vector<bool> flip(static_cast<size_t>(b.dim), true);
            PolyCone meet = pa.intersect(pb.negated(flip));
            if (!meet.isTrivial()) return false;
        }
    }
    return true;
}

// cone shadow through the polyhedron elimination bridge (offsets stay zero)
PolyCone coneShadow(const PolyCone& big, const std::vector<Index>& keep) {
    const MatQ& h = big.halfspaces();
    ConvexPolyhedron bridge = ConvexPolyhedron::fromInequalities(
        big.dim(), h, VecQ::Zero(h.rows()), big.limits());
    ConvexPolyhedron shadow = bridge.eliminateKeep(keep);
    if (shadow.eqE().rows() == 0)
        return PolyCone::fromHalfspaces(shadow.dim(), shadow.ineqA(),
                                        big.limits());
    MatQ rows = stackRows(shadow.ineqA(),
                          stackRows(shadow.eqE(), MatQ(-shadow.eqE())));
    return PolyCone::fromHalfspaces(shadow.dim(), rows, big.limits());
}

ConeUnion composeDualGraphs(const CoderivativeGraph& first,
                            const CoderivativeGraph& second) {
    // first : z* => y* would be wrong; convention here:
    //   rhs(z*) = firstOf(y*) over y* in secondOf(z*)
    // first has pairs (x*, y*), second has pairs (y*, z*).
    const Index n = first.inDim, m = first.outDim, p = second.outDim;
    if (second.inDim != m) throw DimensionError("composeDualGraphs");
    const Index big = n + m + p;
    std::vector<Index> keep;
    for (Index j = 0; j < n; ++j) keep.push_back(j);
    for (Index j = 0; j < p; ++j) keep.push_back(n + m + j);
    ConeUnion out;
    out.dim = n + p;
    for (const auto& p1 : first.pieces.pieces) {
        for (const auto& p2 : second.pieces.pieces) {
            PolyCone joined =
                p1.liftFree(big, 0).intersect(p2.liftFree(big, n));
            out.pieces.push_back(coneShadow(joined, keep));
        }
    }
    out.canonicalize();
    return out;
}

// affine single-valued extraction: z = M y + c on the whole space
std::optional<std::pair<MatQ, VecQ>> affineParts(const PLMultifunction& f) {
    const Index m = f.inDim, p = f.outDim;
    auto at = [&](const VecQ& y) -> std::optional<VecQ> {
        PLSet v = evaluate(f, y);
        std::optional<VecQ> point;
        for (const auto& piece : v.pieces) {
            auto s = piece.somePoint();
            if (!s) continue;
            if (!piece.setEquals(ConvexPolyhedron::singleton(*s)))
                return std::nullopt;
            if (point && *point != *s) return std::nullopt;
            point = s;
        }
        return point;
    };
    auto c = at(VecQ::Zero(m));
    if (!c) return std::nullopt;
    MatQ mm(p, m);
    for (Index j = 0; j < m; ++j) {
        VecQ e = VecQ::Zero(m);
        e[j] = 1;
        auto fj = at(e);
        if (!fj) return std::nullopt;
        mm.col(j) = *fj - *c;
    }
    // verify the whole graph equals the affine graph
    MatQ eRows(p, m + p);
    eRows.leftCols(m) = mm;
    eRows.rightCols(p) = -MatQ::Identity(p, p);
    ConvexPolyhedron affineGraph(m + p, MatQ(0, m + p), VecQ(0), eRows,
                                 VecQ(-*c));
    if (!plsetEquals(f.graph, PLSet::single(affineGraph))) return std::nullopt;
    return std::make_pair(mm, *c);
}

}  // namespace

bool chainQualification(const PLMultifunction& s1, const PLMultifunction& s2,
                        const ConvexPolyhedron& omega, const VecQ& xbar,
                        const VecQ& ybar, const VecQ& zbar) {
    ConstrainedPoint free2(s2, ConvexPolyhedron::full(s2.inDim), ybar, zbar);
    CoderivativeGraph d2 =
        limitingCoderivative(free2, CoderivativeKind::LimitingMixed);
    ConeUnion k2 = coderivativeKernel(d2);

    CoderivativeGraph mirror = mirrorCoderivative(
        invert(s1), PLSet::single(omega), ybar, xbar);
    ConeUnion kMirror = coderivativeKernel(mirror);

    return kernelsSeparated(k2, kMirror);
}

RuleVerdict chainRuleCheck(const PLMultifunction& s1, const PLMultifunction& s2,
                           const ConvexPolyhedron& omega, const VecQ& xbar,
                           const VecQ& ybar, const VecQ& zbar,
                           ChainVariant variant) {
    RuleVerdict out;
    PLSet mid = chainIntermediate(s1, s2, xbar, zbar);
    if (!mid.contains(ybar))
        throw Error("chainRuleCheck: intermediate point not in the slice");

    PLMultifunction comp = compose(s1, s2);
    ConstrainedPoint pt(comp, omega, xbar, zbar);
    CoderivativeKind lhsKind = (variant == ChainVariant::Normal)
                                   ? CoderivativeKind::LimitingNormal
                                   : CoderivativeKind::LimitingMixed;
    out.lhs = limitingCoderivative(pt, lhsKind);

    out.qualificationHolds =
        chainQualification(s1, s2, omega, xbar, ybar, zbar);

    // inner semicontinuity probe of the intermediate slice map
    ConvexPolyhedron probeSet = ConvexPolyhedron::product(
        omega, ConvexPolyhedron::full(s2.outDim));
    auto slices = [&](const VecQ& xz) {
        return chainIntermediate(s1, s2, VecQ(xz.head(s1.inDim)),
                                 VecQ(xz.tail(s2.outDim)));
    };
    out.probe = innerSemicontinuityProbe(slices, probeSet, concat(xbar, zbar),
                                         ybar, makeRational(1, 16),
                                         makeRational(1, 2));

    ConstrainedPoint pt1(s1, omega, xbar, ybar);
    if (variant == ChainVariant::StrictDerivative) {
        auto aff = affineParts(s2);
        if (!aff)
            throw Error(
                "chainRuleCheck: the second mapping is not affine "
                "single-valued, strict differentiability fails at the base "
                "point");
        const MatQ& mm = aff->first;
        CoderivativeGraph d1 =
            limitingCoderivative(pt1, CoderivativeKind::LimitingMixed);
        // (x*, z*) -> (x*, M^T z*)
        const Index n = s1.inDim, m = s1.outDim, p = s2.outDim;
        MatQ l = MatQ::Zero(n + m, n + p);
        l.block(0, 0, n, n) = MatQ::Identity(n, n);
        l.block(n, n, m, p) = mm.transpose();
        out.rhs.dim = n + p;
        for (const auto& piece : d1.pieces.pieces)
            out.rhs.pieces.push_back(piece.preimage(l));
        out.rhs.canonicalize();
    } else {
        CoderivativeGraph d1 =
            limitingCoderivative(pt1, CoderivativeKind::LimitingNormal);
        ConstrainedPoint free2(s2, ConvexPolyhedron::full(s2.inDim), ybar,
                               zbar);
        CoderivativeKind k2 = (variant == ChainVariant::Mixed)
                                  ? CoderivativeKind::LimitingMixed
                                  : CoderivativeKind::LimitingNormal;
        CoderivativeGraph d2 = limitingCoderivative(free2, k2);
        out.rhs = composeDualGraphs(d1, d2);
    }

    out.included = coneUnionIncluded(out.lhs.pieces, out.rhs);
    if (!out.included) out.counterexample = coneUnionWitness(out.lhs.pieces, out.rhs);
    out.hypothesesMet = out.qualificationHolds && out.probe.inner;
    if (!out.hypothesesMet) out.note = "hypotheses unmet";
    return out;
}

bool sumQualification(const PLMultifunction& s1, const PLMultifunction& s2,
                      const ConvexPolyhedron& omega, const VecQ& xbar,
                      const VecQ& y1bar, const VecQ& y2bar) {
    ConstrainedPoint p1(s1, omega, xbar, y1bar);
    ConstrainedPoint p2(s2, omega, xbar, y2bar);
    ConeUnion k1 = coderivativeKernel(
        limitingCoderivative(p1, CoderivativeKind::LimitingMixed));
    ConeUnion k2 = coderivativeKernel(
        limitingCoderivative(p2, CoderivativeKind::LimitingMixed));
    return kernelsSeparated(k1, k2);
}

RuleVerdict sumRuleCheck(const PLMultifunction& s1, const PLMultifunction& s2,
                         const ConvexPolyhedron& omega, const VecQ& xbar,
                         const VecQ& ybar, const VecQ& y1bar,
                         const VecQ& y2bar, SumVariant variant) {
    RuleVerdict out;
    PLSet mid = sumIntermediate(s1, s2, xbar, ybar);
    if (!mid.contains(concat(y1bar, y2bar)))
        throw Error("sumRuleCheck: the split is not an admissible pair");

    PLMultifunction total = sum(s1, s2);
    ConstrainedPoint pt(total, omega, xbar, ybar);
    CoderivativeKind kind = (variant == SumVariant::Normal)
                                ? CoderivativeKind::LimitingNormal
                                : CoderivativeKind::LimitingMixed;
    out.lhs = limitingCoderivative(pt, kind);

    out.qualificationHolds = sumQualification(s1, s2, omega, xbar, y1bar,
                                              y2bar);

    ConvexPolyhedron probeSet = ConvexPolyhedron::product(
        omega, ConvexPolyhedron::full(s1.outDim));
    auto slices = [&](const VecQ& xy) {
        return sumIntermediate(s1, s2, VecQ(xy.head(s1.inDim)),
                               VecQ(xy.tail(s1.outDim)));
    };
    out.probe = innerSemicontinuityProbe(slices, probeSet, concat(xbar, ybar),
                                         concat(y1bar, y2bar),
                                         makeRational(1, 16),
                                         makeRational(1, 2));

    ConstrainedPoint p1(s1, omega, xbar, y1bar);
    ConstrainedPoint p2(s2, omega, xbar, y2bar);
    CoderivativeGraph d1 = limitingCoderivative(p1, kind);
    CoderivativeGraph d2 = limitingCoderivative(p2, kind);

    // Minkowski sum of the applied slices via elimination on the product
    const Index n = s1.inDim, m = s1.outDim;
    const Index big = 2 * n + m + n;  // (x1*, x2*, y*, x*)
    std::vector<Index> map1(static_cast<size_t>(n + m));
    std::vector<Index> map2(static_cast<size_t>(n + m));
    for (Index j = 0; j < n; ++j) {
        map1[static_cast<size_t>(j)] = j;
        map2[static_cast<size_t>(j)] = n + j;
    }
    for (Index j = 0; j < m; ++j) {
        map1[static_cast<size_t>(n + j)] = 2 * n + j;
        map2[static_cast<size_t>(n + j)] = 2 * n + j;
    }
    MatQ glue = MatQ::Zero(n, big);  // x* = x1* + x2*
    for (Index j = 0; j < n; ++j) {
        glue(j, j) = 1;
        glue(j, n + j) = 1;
        glue(j, 2 * n + m + j) = -1;
    }
    std::vector<Index> keep;
    for (Index j = 0; j < m; ++j) keep.push_back(2 * n + j);
    for (Index j = 0; j < n; ++j) keep.push_back(2 * n + m + j);
    // kept ascending: (y*, x*); permute back to (x*, y*)
    std::vector<Index> perm(static_cast<size_t>(n + m));
    for (Index j = 0; j < n; ++j) perm[static_cast<size_t>(j)] = m + j;
    for (Index j = 0; j < m; ++j) perm[static_cast<size_t>(n + j)] = j;

    out.rhs.dim = n + m;
    for (const auto& c1 : d1.pieces.pieces) {
        for (const auto& c2 : d2.pieces.pieces) {
            PolyCone joined = c1.embedded(big, map1)
                                  .intersect(c2.embedded(big, map2))
                                  .intersect(PolyCone::fromHalfspaces(
                                      big, stackRows(glue, MatQ(-glue))));
            out.rhs.pieces.push_back(coneShadow(joined, keep).permuted(perm));
        }
    }
    out.rhs.canonicalize();

    out.included = coneUnionIncluded(out.lhs.pieces, out.rhs);
    if (!out.included)
        out.counterexample = coneUnionWitness(out.lhs.pieces, out.rhs);
    out.hypothesesMet = out.qualificationHolds && out.probe.inner;
    if (!out.hypothesesMet) out.note = "hypotheses unmet";
    return out;
}

bool inverseImageInclusionCheck(const PLMultifunction& f, const PLSet& theta,
                                const VecQ& xbar, const Rational& eps) {
    if (theta.dim != f.outDim) throw DimensionError("inverseImageInclusion");
    PLSet fx = evaluate(f, xbar);
    if (fx.isEmpty()) throw Error("inverseImageInclusion: base not in domain");
    VecQ ybar;
    {
        auto p = fx.pieces.front().somePoint();
        ybar = *p;
    }
    if (!theta.contains(ybar))
        throw Error("inverseImageInclusion: value misses the target set");

    // inverse image as a piecewise-polyhedral set
    std::vector<Index> keepX;
    for (Index j = 0; j < f.inDim; ++j) keepX.push_back(j);
    PLSet preimage;
    preimage.dim = f.inDim;
    PLSet productSet;
    productSet.dim = f.inDim + f.outDim;
    for (const auto& gp : f.graph.pieces) {
        for (const auto& tp : theta.pieces) {
            ConvexPolyhedron joined =
                gp.intersect(tp.liftFree(f.graph.dim, f.inDim));
            if (joined.isEmpty()) continue;
            productSet.pieces.push_back(joined);
            ConvexPolyhedron shadow = joined.eliminateKeep(keepX);
            if (!shadow.isEmpty()) preimage.pieces.push_back(std::move(shadow));
        }
    }
    if (!preimage.contains(xbar))
        throw Error("inverseImageInclusion: base not in the inverse image");

    // candidate directions: polar and tangent generators plus seeded noise
    LocalConeModel model = contingentCone(preimage, xbar);
    std::vector<VecQ> candidates;
    for (const auto& piece : model.tangent.pieces) {
        PolyCone polar = piece.polar();
        const MatQ& g = polar.generators();
        for (Index i = 0; i < g.rows(); ++i)
            candidates.push_back(g.row(i).transpose());
        const MatQ& t = piece.generators();
        for (Index i = 0; i < t.rows(); ++i)
            candidates.push_back(t.row(i).transpose());
    }
    std::mt19937 gen(12345);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    for (int s = 0; s < 200; ++s) {
        VecQ v(f.inDim);
        for (Index j = 0; j < f.inDim; ++j)
            v[j] = makeRational(num(gen), den(gen));
        candidates.push_back(std::move(v));
    }
    VecQ pairPoint = concat(xbar, ybar);
    for (const VecQ& v : candidates) {
        if (isZero(v)) continue;
        if (!epsRegularNormalMember(preimage, xbar, v, eps)) continue;
        VecQ lifted = concat(v, VecQ::Zero(f.outDim));
        if (!epsRegularNormalMember(productSet, pairPoint, lifted, eps))
            return false;
    }
    return true;
}

ShiftVerdict extremalDetect(const PLSet& l1, const PLSet& l2,
                            const ConvexPolyhedron& omega, const VecQ& point,
                            const std::vector<VecQ>& shifts,
                            const ConvexPolyhedron* window) {
    if (l1.dim != l2.dim) throw DimensionError("extremalDetect");
    const Index n = omega.dim();
    const Index total = l1.dim;
    const Index yDim = total - n;
    std::vector<Index> keepX;
    for (Index j = 0; j < n; ++j) keepX.push_back(j);
    for (const PLSet* s : {&l1, &l2}) {
        for (const auto& piece : s->pieces) {
            if (piece.isEmpty()) continue;
            if (!piece.eliminateKeep(keepX).includedIn(omega))
                throw Error("extremalDetect: projections leave the "
                            "constraint set");
        }
    }
    ConvexPolyhedron box =
        window ? *window : ConvexPolyhedron::box(point, Rational(1));
    ShiftVerdict out;
    for (const VecQ& b : shifts) {
        if (b.size() != yDim) throw DimensionError("extremalDetect: shift");
        VecQ lifted = concat(VecQ::Zero(n), b);
        bool empty = true;
        for (const auto& p1 : l1.pieces) {
            if (p1.isEmpty()) continue;
            ConvexPolyhedron moved = p1.translated(lifted);
            for (const auto& p2 : l2.pieces) {
                if (p2.isEmpty()) continue;
                if (!moved.intersect(p2).intersect(box).isEmpty()) {
                    empty = false;
                    break;
                }
            }
            if (!empty) break;
        }
        out.emptyPerShift.push_back(empty);
    }
    out.extremal = !out.emptyPerShift.empty() && out.emptyPerShift.back();
    return out;
}

namespace {

// exact unit scaling when the squared norm is a perfect square; otherwise a
// tight rational approximation with reported slack
std::pair<VecQ, Rational> normalizeWithSlack(const VecQ& w) {
    Rational nsq = squaredNorm(w);
    if (nsq == 0) throw Error("normalize: zero vector");
    if (auto root = exactSqrt(nsq)) {
        return {VecQ(w / *root), Rational(0)};
    }
    auto bounds = sqrtBounds(nsq, 96);
    VecQ scaled = w / bounds.second;
    Rational defect = abs(squaredNorm(scaled) - 1);
    return {scaled, defect};
}

}  // namespace

WitnessRecord extremalWitness(const PLSet& l1, const PLSet& l2,
                              const ConvexPolyhedron& omega, const VecQ& point,
                              const Rational& eps,
                              const std::vector<VecQ>& shifts,
                              const ConvexPolyhedron* window) {
    WitnessRecord out;
    const Index n = omega.dim();
    const Index total = l1.dim;
    const Index yDim = total - n;
    ConvexPolyhedron box =
        window ? *window : ConvexPolyhedron::box(point, Rational(1));
    ConvexPolyhedron searchBox = box.intersect(
        ConvexPolyhedron::box(point, eps));

    // pick a usable shift: small and separating
    Rational normCap = eps * eps * eps / 2;
    std::optional<VecQ> shift;
    for (VecQ b : shifts) {
        for (int halvings = 0; halvings < 40 && !shift; ++halvings) {
            if (squaredNorm(b) <= normCap * normCap) {
                ShiftVerdict v = extremalDetect(l1, l2, omega, point, {b},
                                                &box);
                if (v.emptyPerShift.front()) shift = b;
            }
            if (!shift) b = b / 2;
        }
        if (shift) break;
    }
    if (!shift) {
        out.note = "no admissible separating shift among the candidates";
        return out;
    }
    VecQ lifted = concat(VecQ::Zero(n), *shift);

    // exact minimization of |z1 - z2 + shift|^2 over piece pairs near point
    std::optional<Rational> best;
    VecQ bestU;
    const ConvexPolyhedron* bestP1 = nullptr;
    const ConvexPolyhedron* bestP2 = nullptr;
    for (const auto& p1 : l1.pieces) {
        ConvexPolyhedron q1 = p1.intersect(searchBox);
        if (q1.isEmpty()) continue;
        for (const auto& p2 : l2.pieces) {
            ConvexPolyhedron q2 = p2.intersect(searchBox);
            if (q2.isEmpty()) continue;
            // difference set {z1 - z2} via elimination
            const Index big = 3 * total;
            std::vector<Index> keepU;
            for (Index j = 0; j < total; ++j) keepU.push_back(2 * total + j);
            MatQ glue = MatQ::Zero(total, big);  // u = z1 - z2
            for (Index j = 0; j < total; ++j) {
                glue(j, j) = 1;
                glue(j, total + j) = -1;
                glue(j, 2 * total + j) = -1;
            }
            ConvexPolyhedron joined =
                ConvexPolyhedron::product(ConvexPolyhedron::product(q1, q2),
                                          ConvexPolyhedron::full(total))
                    .intersect(ConvexPolyhedron(big, MatQ(0, big), VecQ(0),
                                                glue, VecQ::Zero(total)));
            ConvexPolyhedron diff = joined.eliminateKeep(keepU);
            if (diff.isEmpty()) continue;
            auto d = diff.distanceSq(VecQ(-lifted));
            if (!d) continue;
            if (!best || d->distSq < *best) {
                best = d->distSq;
                bestU = d->closest;
                bestP1 = &p1;
                bestP2 = &p2;
            }
        }
    }
    if (!best || *best == 0) {
        out.note = "no positive-gap piece pair inside the search window";
        return out;
    }
    // recover witness points with z1 - z2 = bestU
    ConvexPolyhedron q1 = bestP1->intersect(searchBox);
    ConvexPolyhedron q2 = bestP2->intersect(searchBox);
    MatQ glue = MatQ::Zero(total, 2 * total);
    for (Index j = 0; j < total; ++j) {
        glue(j, j) = 1;
        glue(j, total + j) = -1;
    }
    ConvexPolyhedron pairSet =
        ConvexPolyhedron::product(q1, q2).intersect(ConvexPolyhedron(
            2 * total, MatQ(0, 2 * total), VecQ(0), glue, bestU));
    auto pairPoint = pairSet.somePoint();
    if (!pairPoint) {
        out.note = "witness recovery failed";
        return out;
    }
    VecQ z1 = pairPoint->head(total);
    VecQ z2 = pairPoint->tail(total);
    VecQ w = bestU + lifted;

    auto normalized = normalizeWithSlack(w);
    VecQ unit = normalized.first;
    out.normalizationSlackSq = normalized.second;
    VecQ w1 = VecQ(-unit / 2);
    VecQ w2 = VecQ(unit / 2);
    out.points = {z1, z2};
    out.covectors = {w1, w2};

    // residuals against the regular normal cones, tangent-side memberships
    Rational worst(0);
    const PLSet* sets[2] = {&l1, &l2};
    for (int i = 0; i < 2; ++i) {
        PolyCone normal = regularNormalCone(*sets[i], out.points[static_cast<size_t>(i)]);
        auto proj = normal.project(out.covectors[static_cast<size_t>(i)]);
        Rational residSq = squaredNorm(
            VecQ(out.covectors[static_cast<size_t>(i)] - proj.point));
        out.residualSq.push_back(residSq);
        if (residSq > worst) worst = residSq;
        VecQ xpart = out.points[static_cast<size_t>(i)].head(n);
        VecQ xdual = out.covectors[static_cast<size_t>(i)].head(n);
        bool tangentOk = omega.tangentConeAt(xpart).contains(xdual);
        out.residualSq.push_back(tangentOk ? Rational(0) : Rational(1));
        if (!tangentOk) worst = std::max(worst, Rational(1));
    }
    (void)yDim;
    out.lambda = Rational(1);
    out.success = worst <= eps * eps &&
                  out.normalizationSlackSq <= eps * eps;
    if (!out.success) out.note = "residual targets missed";
    return out;
}

WitnessRecord fuzzyIntersectionWitness(const PLSet& t1, const PLSet& t2,
                                       const ConvexPolyhedron& omega,
                                       const VecQ& point, const VecQ& covector,
                                       const Rational& eps, const Rational& nu) {
    if (eps <= 0 || eps >= 1)
        throw Error("fuzzyIntersectionWitness: eps out of (0, 1)");
    if (nu <= 0) throw Error("fuzzyIntersectionWitness: nu must be positive");
    const Index n = omega.dim();
    // exact precondition: covector is an eps-relaxed normal of the
    // intersection and its input block is tangent to the constraint set
    PLSet meet;
    meet.dim = t1.dim;
    for (const auto& p1 : t1.pieces) {
        for (const auto& p2 : t2.pieces) {
            ConvexPolyhedron q = p1.intersect(p2);
            if (!q.isEmpty()) meet.pieces.push_back(std::move(q));
        }
    }
    if (!meet.contains(point))
        throw Error("fuzzyIntersectionWitness: point not in the intersection");
    if (!epsRegularNormalMember(meet, point, covector, eps))
        throw Error("fuzzyIntersectionWitness: covector is not an "
                    "eps-relaxed normal of the intersection");
    if (!omega.tangentConeAt(VecQ(point.head(n)))
             .contains(VecQ(covector.head(n))))
        throw Error("fuzzyIntersectionWitness: input block not tangent to "
                    "the constraint set");

    WitnessRecord out;
    out.points = {point, point};
    PolyCone n1 = regularNormalCone(t1, point);
    PolyCone n2 = regularNormalCone(t2, point);

    if (isZero(covector)) {
        // opposing unit pair from the two normal cones when available
        std::vector<bool> flip(static_cast<size_t>(t1.dim), true);
        PolyCone opposed = n1.intersect(n2.negated(flip));
        const MatQ& g = opposed.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            VecQ cand = g.row(i).transpose();
            if (isZero(cand)) continue;
            auto normalized = normalizeWithSlack(cand);
            out.covectors = {normalized.first, VecQ(-normalized.first)};
            out.normalizationSlackSq = normalized.second;
            out.lambda = Rational(0);
            out.residualSq = {Rational(0), Rational(0)};
            out.success = normalized.second <= nu * nu;
            return out;
        }
        // trivial split otherwise
        out.lambda = Rational(1);
        out.covectors = {zeroVec(t1.dim), zeroVec(t1.dim)};
        out.residualSq = {Rational(0), Rational(0)};
        out.normalizationSlackSq = Rational(0);
        out.success = true;
        return out;
    }

    // lambda = 1 split: project the covector onto the Minkowski sum cone
    std::vector<VecQ> gens;
    const MatQ& g1 = n1.generators();
    const MatQ& g2 = n2.generators();
    for (Index i = 0; i < g1.rows(); ++i) gens.push_back(g1.row(i).transpose());
    Index firstCount = static_cast<Index>(gens.size());
    for (Index i = 0; i < g2.rows(); ++i) gens.push_back(g2.row(i).transpose());
    PolyCone sumCone =
        PolyCone::fromGenerators(t1.dim, matFromRows(gens, t1.dim));
    auto proj = sumCone.project(covector);
    Rational residSq = squaredNorm(VecQ(covector - proj.point));
    if (residSq > nu * nu) {
        out.note = "split residual exceeds the requested tolerance";
        out.residualSq = {residSq};
        return out;
    }
    // conic coefficients: mu >= 0 with G^T mu = projection
    const Index k = static_cast<Index>(gens.size());
    MatQ gt(t1.dim, k);
    for (Index i = 0; i < k; ++i) gt.col(i) = gens[static_cast<size_t>(i)];
    MatQ negI = -MatQ::Identity(k, k);
    LPResult lp = solveLP(VecQ::Zero(k), negI, VecQ::Zero(k), gt, proj.point);
    if (lp.status != LPStatus::Optimal) {
        out.note = "conic split recovery failed";
        return out;
    }
    VecQ w1 = VecQ::Zero(t1.dim), w2 = VecQ::Zero(t1.dim);
    for (Index i = 0; i < k; ++i) {
        if (i < firstCount)
            w1 += lp.point[i] * gens[static_cast<size_t>(i)];
        else
            w2 += lp.point[i] * gens[static_cast<size_t>(i)];
    }
    out.lambda = Rational(1);
    Rational w1sq = squaredNorm(w1);
    if (w1sq > 1) {
        // rescale so the max normalization holds
        auto bounds = sqrtBounds(w1sq, 96);
        if (auto root = exactSqrt(w1sq)) {
            out.lambda = Rational(1) / *root;
            w1 = VecQ(w1 / *root);
            w2 = VecQ(w2 / *root);
            out.normalizationSlackSq = Rational(0);
        } else {
            out.lambda = Rational(1) / bounds.second;
            w1 = VecQ(w1 / bounds.second);
            w2 = VecQ(w2 / bounds.second);
            out.normalizationSlackSq = abs(squaredNorm(w1) - 1);
        }
    }
    out.covectors = {w1, w2};
    out.residualSq = {residSq, Rational(0)};
    out.success = out.normalizationSlackSq <= nu * nu;
    if (!out.success) out.note = "normalization slack above tolerance";
    return out;
}

}  // namespace relip
