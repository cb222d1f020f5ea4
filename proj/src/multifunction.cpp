#include "relip/multifunction.hpp"

namespace relip {

PLMultifunction PLMultifunction::identity(Index dim, const Limits& lim) {
    MatQ m = MatQ::Identity(dim, dim);
    return linear(m, lim);
}

PLMultifunction PLMultifunction::linear(const MatQ& m, const Limits& lim) {
    Index n = m.cols(), out = m.rows();
    MatQ e(out, n + out);
    e.leftCols(n) = m;
    e.rightCols(out) = -MatQ::Identity(out, out);
    PLMultifunction s;
    s.inDim = n;
    s.outDim = out;
    s.graph = PLSet::single(ConvexPolyhedron(n + out, MatQ(0, n + out), VecQ(0),
                                             std::move(e), VecQ::Zero(out),
                                             lim));
    return s;
}

PLMultifunction PLMultifunction::constant(Index inDim, const VecQ& value,
                                          const Limits& lim) {
    Index m = value.size();
    MatQ e = MatQ::Zero(m, inDim + m);
    e.rightCols(m) = MatQ::Identity(m, m);
    PLMultifunction s;
    s.inDim = inDim;
    s.outDim = m;
    s.graph = PLSet::single(ConvexPolyhedron(inDim + m, MatQ(0, inDim + m),
                                             VecQ(0), std::move(e), value,
                                             lim));
    return s;
}

PLMultifunction PLMultifunction::fromGraph(Index inDim, Index outDim,
                                           PLSet graph) {
    if (graph.dim != inDim + outDim)
        throw DimensionError("PLMultifunction: graph dimension mismatch");
    PLMultifunction s;
    s.inDim = inDim;
    s.outDim = outDim;
    s.graph = std::move(graph);
    return s;
}

ConstrainedPoint::ConstrainedPoint(PLMultifunction s, ConvexPolyhedron om,
                                   VecQ x_, VecQ y_)
    : mapping(std::move(s)), omega(std::move(om)), x(std::move(x_)),
      y(std::move(y_)) {
    if (omega.dim() != mapping.inDim || x.size() != mapping.inDim ||
        y.size() != mapping.outDim)
        throw DimensionError("ConstrainedPoint: dimension mismatch");
    if (!omega.contains(x))
        throw Error("ConstrainedPoint: x is not in the constraint set");
    if (!mapping.graph.contains(pair()))
        throw Error("ConstrainedPoint: (x, y) is not on the graph");
}

PLMultifunction restrict(const PLMultifunction& s,
                         const ConvexPolyhedron& omega) {
    if (omega.dim() != s.inDim) throw DimensionError("restrict");
    ConvexPolyhedron lifted = omega.liftFree(s.inDim + s.outDim, 0);
    PLMultifunction out;
    out.inDim = s.inDim;
    out.outDim = s.outDim;
    out.graph = s.graph.intersectWith(lifted);
    return out;
}

PLMultifunction restrictOutputs(const PLMultifunction& s, const PLSet& theta) {
    if (theta.dim != s.outDim) throw DimensionError("restrictOutputs");
    PLMultifunction out;
    out.inDim = s.inDim;
    out.outDim = s.outDim;
    out.graph.dim = s.graph.dim;
    for (const auto& gp : s.graph.pieces) {
        for (const auto& tp : theta.pieces) {
            ConvexPolyhedron q =
                gp.intersect(tp.liftFree(s.graph.dim, s.inDim));
            if (!q.isEmpty()) out.graph.pieces.push_back(std::move(q));
        }
    }
    return out;
}

PLMultifunction invert(const PLMultifunction& s) {
    std::vector<Index> perm(static_cast<size_t>(s.inDim + s.outDim));
    for (Index j = 0; j < s.outDim; ++j)
        perm[static_cast<size_t>(j)] = s.inDim + j;
    for (Index j = 0; j < s.inDim; ++j)
        perm[static_cast<size_t>(s.outDim + j)] = j;
    PLMultifunction out;
    out.inDim = s.outDim;
    out.outDim = s.inDim;
    out.graph.dim = s.graph.dim;
    for (const auto& p : s.graph.pieces)
        out.graph.pieces.push_back(p.permuted(perm));
    return out;
}

namespace {

void dedupePieces(PLSet& s) {
    std::vector<ConvexPolyhedron> unique;
    for (auto& p : s.pieces) {
        bool dup = false;
        for (const auto& q : unique) {
            if (p.setEquals(q)) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(std::move(p));
    }
    s.pieces = std::move(unique);
}

}  // namespace

PLMultifunction sum(const PLMultifunction& s1, const PLMultifunction& s2) {
    if (s1.inDim != s2.inDim || s1.outDim != s2.outDim)
        throw DimensionError("sum: dimension mismatch");
    const Index n = s1.inDim, m = s1.outDim;
    const Index big = n + 3 * m;  // (x, y1, y2, y)
    std::vector<Index> mapG1(static_cast<size_t>(n + m));
    std::vector<Index> mapG2(static_cast<size_t>(n + m));
    for (Index j = 0; j < n; ++j) {
        mapG1[static_cast<size_t>(j)] = j;
        mapG2[static_cast<size_t>(j)] = j;
    }
    for (Index j = 0; j < m; ++j) {
        mapG1[static_cast<size_t>(n + j)] = n + j;
        mapG2[static_cast<size_t>(n + j)] = n + m + j;
    }
    MatQ glue = MatQ::Zero(m, big);  // y1 + y2 - y = 0
    for (Index j = 0; j < m; ++j) {
        glue(j, n + j) = 1;
        glue(j, n + m + j) = 1;
        glue(j, n + 2 * m + j) = -1;
    }
    std::vector<Index> keep;
    for (Index j = 0; j < n; ++j) keep.push_back(j);
    for (Index j = 0; j < m; ++j) keep.push_back(n + 2 * m + j);

    PLMultifunction out;
    out.inDim = n;
    out.outDim = m;
    out.graph.dim = n + m;
    for (const auto& p1 : s1.graph.pieces) {
        for (const auto& p2 : s2.graph.pieces) {
            ConvexPolyhedron big1 = p1.embedded(big, mapG1);
            ConvexPolyhedron big2 = p2.embedded(big, mapG2);
            ConvexPolyhedron joined = big1.intersect(big2).intersect(
                ConvexPolyhedron(big, MatQ(0, big), VecQ(0), glue,
                                 VecQ::Zero(m), p1.limits()));
            ConvexPolyhedron shadow = joined.eliminateKeep(keep);
            if (!shadow.isEmpty()) out.graph.pieces.push_back(std::move(shadow));
        }
    }
    dedupePieces(out.graph);
    return out;
}

PLMultifunction compose(const PLMultifunction& s1, const PLMultifunction& s2) {
    if (s1.outDim != s2.inDim) throw DimensionError("compose");
    const Index n = s1.inDim, m = s1.outDim, p = s2.outDim;
    const Index big = n + m + p;
    std::vector<Index> keep;
    for (Index j = 0; j < n; ++j) keep.push_back(j);
    for (Index j = 0; j < p; ++j) keep.push_back(n + m + j);
    PLMultifunction out;
    out.inDim = n;
    out.outDim = p;
    out.graph.dim = n + p;
    for (const auto& p1 : s1.graph.pieces) {
        for (const auto& p2 : s2.graph.pieces) {
            ConvexPolyhedron joined =
                p1.liftFree(big, 0).intersect(p2.liftFree(big, n));
            ConvexPolyhedron shadow = joined.eliminateKeep(keep);
            if (!shadow.isEmpty()) out.graph.pieces.push_back(std::move(shadow));
        }
    }
    dedupePieces(out.graph);
    return out;
}

PLSet evaluate(const PLMultifunction& s, const VecQ& x) {
    if (x.size() != s.inDim) throw DimensionError("evaluate");
    std::vector<Index> coords;
    for (Index j = 0; j < s.inDim; ++j) coords.push_back(j);
    PLSet out;
    out.dim = s.outDim;
    for (const auto& p : s.graph.pieces) {
        ConvexPolyhedron slice = p.sliceFix(coords, x);
        if (!slice.isEmpty()) out.pieces.push_back(std::move(slice));
    }
    return out;
}

PLSet domain(const PLMultifunction& s) {
    std::vector<Index> keep;
    for (Index j = 0; j < s.inDim; ++j) keep.push_back(j);
    PLSet out;
    out.dim = s.inDim;
    for (const auto& p : s.graph.pieces) {
        ConvexPolyhedron shadow = p.eliminateKeep(keep);
        if (!shadow.isEmpty()) out.pieces.push_back(std::move(shadow));
    }
    return out;
}

PLSet chainIntermediate(const PLMultifunction& s1, const PLMultifunction& s2,
                        const VecQ& x, const VecQ& z) {
    if (s1.outDim != s2.inDim || x.size() != s1.inDim || z.size() != s2.outDim)
        throw DimensionError("chainIntermediate");
    std::vector<Index> inCoords, outCoords;
    for (Index j = 0; j < s1.inDim; ++j) inCoords.push_back(j);
    for (Index j = 0; j < s2.outDim; ++j) outCoords.push_back(s2.inDim + j);
    PLSet out;
    out.dim = s1.outDim;
    for (const auto& p1 : s1.graph.pieces) {
        ConvexPolyhedron sl1 = p1.sliceFix(inCoords, x);
        if (sl1.isEmpty()) continue;
        for (const auto& p2 : s2.graph.pieces) {
            ConvexPolyhedron sl2 = p2.sliceFix(outCoords, z);
            if (sl2.isEmpty()) continue;
            ConvexPolyhedron q = sl1.intersect(sl2);
            if (!q.isEmpty()) out.pieces.push_back(std::move(q));
        }
    }
    return out;
}

PLSet sumIntermediate(const PLMultifunction& s1, const PLMultifunction& s2,
                      const VecQ& x, const VecQ& y) {
    if (s1.inDim != s2.inDim || s1.outDim != s2.outDim ||
        x.size() != s1.inDim || y.size() != s1.outDim)
        throw DimensionError("sumIntermediate");
    const Index m = s1.outDim;
    std::vector<Index> inCoords;
    for (Index j = 0; j < s1.inDim; ++j) inCoords.push_back(j);
    MatQ glue(m, 2 * m);  // y1 + y2 = y
    glue.leftCols(m) = MatQ::Identity(m, m);
    glue.rightCols(m) = MatQ::Identity(m, m);
    PLSet out;
    out.dim = 2 * m;
    for (const auto& p1 : s1.graph.pieces) {
        ConvexPolyhedron sl1 = p1.sliceFix(inCoords, x);
        if (sl1.isEmpty()) continue;
        for (const auto& p2 : s2.graph.pieces) {
            ConvexPolyhedron sl2 = p2.sliceFix(inCoords, x);
            if (sl2.isEmpty()) continue;
            ConvexPolyhedron q =
                ConvexPolyhedron::product(sl1, sl2)
                    .intersect(ConvexPolyhedron(2 * m, MatQ(0, 2 * m), VecQ(0),
                                                glue, y, p1.limits()));
            if (!q.isEmpty()) out.pieces.push_back(std::move(q));
        }
    }
    return out;
}

void forEachLatticePoint(const VecQ& center, const Rational& radius,
                         const Rational& step, long budget,
                         const std::function<void(const VecQ&)>& f) {
    if (step <= 0 || radius <= 0) throw Error("lattice: bad step or radius");
    const Index d = center.size();
    // k in [-K, K]^d with K = floor(radius/step)
    Integer kMax = Integer(Rational(radius / step));  // truncation
    long width = kMax.get_si() * 2 + 1;
    double total = 1;
    for (Index j = 0; j < d; ++j) total *= static_cast<double>(width);
    if (total > static_cast<double>(budget))
        throw BudgetError("lattice grid exceeds budget");
    std::vector<long> k(static_cast<size_t>(d), -kMax.get_si());
    long lo = -kMax.get_si(), hi = kMax.get_si();
    while (true) {
        VecQ p = center;
        for (Index j = 0; j < d; ++j)
            p[j] += Rational(k[static_cast<size_t>(j)]) * step;
        f(p);
        Index j = 0;
        while (j < d) {
            if (k[static_cast<size_t>(j)] < hi) {
                ++k[static_cast<size_t>(j)];
                break;
            }
            k[static_cast<size_t>(j)] = lo;
            ++j;
        }
        if (j == d) break;
    }
}

ProbeResult innerSemicontinuityProbe(
    const std::function<PLSet(const VecQ&)>& slices,
    const ConvexPolyhedron& constraintSet, const VecQ& baseInput,
    const VecQ& designatedValue, const Rational& gridStep,
    const Rational& radius, const Limits& lim) {
    auto pass = [&](const Rational& step, ProbeResult& out, bool& sawAny) {
        forEachLatticePoint(
            baseInput, radius, step, lim.gridBudget, [&](const VecQ& p) {
                if (!constraintSet.contains(p)) return;
                PLSet slice = slices(p);
                Rational nsq = squaredNorm(VecQ(p - baseInput));
                if (slice.isEmpty()) {
                    if (nsq != 0) out.emptySliceSeen = true;
                    return;
                }
                sawAny = true;
                ++out.samples;
                if (nsq == 0) return;
                auto d = slice.distanceSq(designatedValue);
                Rational slopeSq = d->distSq / nsq;
                if (slopeSq > out.worstSlopeSq) out.worstSlopeSq = slopeSq;
            });
    };
    // two grid scales: a drifting value shows up as slope growth under
    // refinement, a linearly convergent one keeps the slope bounded
    ProbeResult coarse, fine;
    coarse.worstSlopeSq = fine.worstSlopeSq = Rational(0);
    bool sawCoarse = false, sawFine = false;
    pass(gridStep, coarse, sawCoarse);
    pass(gridStep / 4, fine, sawFine);
    if (fine.samples == 0 && !fine.emptySliceSeen)
        throw Error("innerSemicontinuityProbe: empty grid");
    ProbeResult out = fine;
    bool slopeStable =
        (coarse.worstSlopeSq == 0 && fine.worstSlopeSq == 0) ||
        (coarse.worstSlopeSq > 0 &&
         fine.worstSlopeSq <= 4 * coarse.worstSlopeSq);
    // empty slices mark grid points outside the domain; they do not count
    // against the verdict, which quantifies over domain sequences only
    out.inner = sawFine && slopeStable &&
                fine.worstSlopeSq <= lim.ratioCeilingSq;
    return out;
}

}  // namespace relip
