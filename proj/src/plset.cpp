#include "relip/plset.hpp"

#include <algorithm>

namespace relip {

PLSet PLSet::single(ConvexPolyhedron p) {
    PLSet s;
    s.dim = p.dim();
    s.pieces.push_back(std::move(p));
    return s;
}

PLSet PLSet::fullSpace(Index dim, const Limits& lim) {
    return single(ConvexPolyhedron::full(dim, lim));
}

bool PLSet::contains(const VecQ& x) const {
    for (const auto& p : pieces)
        if (p.contains(x)) return true;
    return false;
}

bool PLSet::isEmpty() const {
    for (const auto& p : pieces)
        if (!p.isEmpty()) return false;
    return true;
}

std::optional<ConvexPolyhedron::DistResult> PLSet::distanceSq(
    const VecQ& p) const {
    std::optional<ConvexPolyhedron::DistResult> best;
    for (const auto& piece : pieces) {
        if (piece.isEmpty()) continue;
        auto d = piece.distanceSq(p);
        if (d && (!best || d->distSq < best->distSq)) best = d;
    }
    return best;
}

PLSet PLSet::dropEmptyPieces() const {
    PLSet out;
    out.dim = dim;
    for (const auto& p : pieces)
        if (!p.isEmpty()) out.pieces.push_back(p);
    return out;
}

PLSet PLSet::intersectWith(const ConvexPolyhedron& p) const {
    PLSet out;
    out.dim = dim;
    for (const auto& piece : pieces) {
        ConvexPolyhedron q = piece.intersect(p);
        if (!q.isEmpty()) out.pieces.push_back(std::move(q));
    }
    return out;
}

PLSet PLSet::translated(const VecQ& t) const {
    PLSet out;
    out.dim = dim;
    for (const auto& piece : pieces) out.pieces.push_back(piece.translated(t));
    return out;
}

namespace {

bool polyCovered(const ConvexPolyhedron& p,
                 const std::vector<const ConvexPolyhedron*>& covers,
                 size_t from, int depth) {
    if (depth > 64) throw BudgetError("set covering recursion too deep");
    if (p.isEmpty()) return true;
    if (from >= covers.size()) return false;
    const ConvexPolyhedron& b = *covers[from];
    if (p.includedIn(b)) return true;
    auto splitOn = [&](const VecQ& h, const Rational& c) -> bool {
        // part of p strictly beyond {h.x <= c} must be covered by the rest
        LPResult sup = p.support(h);
        bool strict = (sup.status == LPStatus::Unbounded) ||
                      (sup.status == LPStatus::Optimal && sup.value > c);
        if (!strict) return true;
        MatQ row(1, p.dim());
        row.row(0) = (-h).transpose();
        VecQ rhs(1);
        rhs[0] = -c;
        ConvexPolyhedron q = p.intersect(ConvexPolyhedron::fromInequalities(
            p.dim(), std::move(row), std::move(rhs), p.limits()));
        return polyCovered(q, covers, from + 1, depth + 1);
    };
    for (Index i = 0; i < b.ineqA().rows(); ++i) {
        if (!splitOn(VecQ(b.ineqA().row(i).transpose()), b.ineqB()[i]))
            return false;
    }
    for (Index i = 0; i < b.eqE().rows(); ++i) {
        VecQ e = b.eqE().row(i).transpose();
        if (!splitOn(e, b.eqF()[i])) return false;
        if (!splitOn(VecQ(-e), -b.eqF()[i])) return false;
    }
    return true;
}

}  // namespace

bool plsetIncluded(const PLSet& a, const PLSet& b) {
    if (a.dim != b.dim) throw DimensionError("plsetIncluded");
    std::vector<const ConvexPolyhedron*> covers;
    for (const auto& p : b.pieces)
        if (!p.isEmpty()) covers.push_back(&p);
    for (const auto& p : a.pieces) {
        if (!polyCovered(p, covers, 0, 0)) return false;
    }
    return true;
}

bool plsetEquals(const PLSet& a, const PLSet& b) {
    return plsetIncluded(a, b) && plsetIncluded(b, a);
}

ConvexPolyhedron convexHull(const PLSet& s) {
    std::vector<VecQ> gens;  // homogenized: (x, 1) vertices, (r, 0) rays
    Limits lim;
    for (const auto& piece : s.pieces) {
        if (piece.isEmpty()) continue;
        lim = piece.limits();
        auto vr = piece.vrep();
        for (Index i = 0; i < vr.vertices.rows(); ++i) {
            VecQ g(s.dim + 1);
            g.head(s.dim) = vr.vertices.row(i).transpose();
            g[s.dim] = 1;
            gens.push_back(std::move(g));
        }
        for (Index i = 0; i < vr.rays.rows(); ++i) {
            VecQ g(s.dim + 1);
            g.head(s.dim) = vr.rays.row(i).transpose();
            g[s.dim] = 0;
            gens.push_back(std::move(g));
        }
    }
    if (gens.empty()) throw Error("convexHull: empty set");
    Limits lifted = lim;
    lifted.dimCap = std::max(lifted.dimCap, static_cast<int>(s.dim) + 1);
    PolyCone homog = PolyCone::fromGenerators(
        s.dim + 1, matFromRows(gens, s.dim + 1), lifted);
    const MatQ& h = homog.halfspaces();
    std::vector<VecQ> rows;
    std::vector<Rational> rhs;
    for (Index i = 0; i < h.rows(); ++i) {
        VecQ a = h.row(i).transpose().head(s.dim);
        if (isZero(a)) continue;  // constraint on the homogenizer only
        rows.push_back(a);
        rhs.push_back(-h(i, s.dim));
    }
    VecQ b(static_cast<Index>(rhs.size()));
    for (size_t i = 0; i < rhs.size(); ++i) b[static_cast<Index>(i)] = rhs[i];
    return ConvexPolyhedron::fromInequalities(s.dim, matFromRows(rows, s.dim),
                                              b, lim)
        .pruned();
}

namespace {

// positive rational r with r^2 <= q/4, as close to sqrt(q)/2 as convenient
Rational radiusBelowHalfSqrt(const Rational& q) {
    auto [lo, hi] = sqrtBounds(q, 96);
    Rational r = lo / 2;
    if (r > 0) return r;
    r = Rational(1);
    while (r * r * 4 >= q) r /= 2;
    return r;
}

}  // namespace

LocalConeModel contingentCone(const PLSet& s, const VecQ& x) {
    if (!s.contains(x)) throw Error("contingentCone: point not in set");
    LocalConeModel model;
    model.base = x;
    model.tangent.dim = s.dim;
    std::optional<Rational> slackSq;
    for (const auto& piece : s.pieces) {
        if (piece.isEmpty()) continue;
        if (piece.contains(x)) {
            model.tangent.pieces.push_back(piece.tangentConeAt(x));
            if (auto sl = piece.inactiveSlackSq(x)) {
                if (!slackSq || *sl < *slackSq) slackSq = sl;
            }
        } else {
            auto d = piece.distanceSq(x);
            if (d && (!slackSq || d->distSq < *slackSq)) slackSq = d->distSq;
        }
    }
    model.tangent.canonicalize();
    if (!slackSq) {
        model.radius = Rational(1);
        model.radiusUnbounded = true;
    } else {
        model.radius = radiusBelowHalfSqrt(*slackSq);
    }
    return model;
}

bool epsRegularNormalMember(const PLSet& s, const VecQ& x, const VecQ& v,
                            const Rational& eps) {
    if (eps < 0) throw Error("epsRegularNormalMember: eps < 0");
    if (isZero(v)) return true;
    LocalConeModel model = contingentCone(s, x);
    SupportValue sup = supportOnBall(model.tangent, v);
    if (sup.nonpositive) return true;
    return sup.sq <= eps * eps * squaredNorm(v);
}

bool epsNormalSetMember(const PLSet& s, const VecQ& x, const VecQ& v,
                        const Rational& eps) {
    if (eps < 0) throw Error("epsNormalSetMember: eps < 0");
    LocalConeModel model = contingentCone(s, x);
    SupportValue sup = supportOnBall(model.tangent, v);
    if (sup.nonpositive) return true;
    return sup.sq <= eps * eps;
}

PolyCone regularNormalConeOfModel(const LocalConeModel& model) {
    std::vector<VecQ> rows;
    for (const auto& piece : model.tangent.pieces) {
        const MatQ& g = piece.generators();
        for (Index i = 0; i < g.rows(); ++i)
            rows.push_back(g.row(i).transpose());
    }
    Limits lim = model.tangent.pieces.empty()
                     ? Limits{}
                     : model.tangent.pieces.front().limits();
    return PolyCone::fromHalfspaces(model.tangent.dim,
                                    matFromRows(rows, model.tangent.dim), lim);
}

PolyCone regularNormalCone(const PLSet& s, const VecQ& x) {
    return regularNormalConeOfModel(contingentCone(s, x));
}

JtStability jtStabilityCheck(const ConvexPolyhedron& omega, const VecQ& xbar,
                             const Rational& eps) {
    if (eps <= 0) throw Error("jtStabilityCheck: eps must be positive");
    if (!omega.contains(xbar))
        throw Error("jtStabilityCheck: point not in the set");
    JtStability out;
    auto slackSq = omega.inactiveSlackSq(xbar);
    if (!slackSq) {
        out.delta = Rational(1);
        out.unbounded = true;
    } else {
        out.delta = radiusBelowHalfSqrt(*slackSq);
    }
    // verify on face strata of the tangent cone: representatives xbar + t d
    PolyCone tangentBase = omega.tangentConeAt(xbar);
    const MatQ& g = tangentBase.generators();
    std::vector<VecQ> dirs;
    dirs.push_back(VecQ::Zero(omega.dim()));
    for (Index i = 0; i < g.rows(); ++i) dirs.push_back(g.row(i).transpose());
    if (g.rows() > 1) {
        VecQ sum = VecQ::Zero(omega.dim());
        for (Index i = 0; i < g.rows(); ++i) sum += g.row(i).transpose();
        dirs.push_back(std::move(sum));
    }
    for (const VecQ& d : dirs) {
        VecQ point = xbar;
        if (!isZero(d)) {
            auto [lo, hi] = sqrtBounds(squaredNorm(d), 64);
            Rational t = out.delta / (2 * hi);
            point = xbar + t * d;
        }
        if (!omega.contains(point)) continue;
        PolyCone tangentThere = omega.tangentConeAt(point);
        if (!tangentThere.containsCone(tangentBase))
            throw Error("jtStabilityCheck: tangent inclusion failed (internal)");
        ++out.strataChecked;
    }
    return out;
}

}  // namespace relip
