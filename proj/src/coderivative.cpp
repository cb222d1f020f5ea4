#include "relip/coderivative.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace relip {

namespace {

std::vector<VecQ> splittingNormals(const ConeUnion& tangent) {
    std::vector<VecQ> normals;
    for (const auto& piece : tangent.pieces) {
        const MatQ& h = piece.halfspaces();
        for (Index i = 0; i < h.rows(); ++i) {
            VecQ n = primitiveSigned(h.row(i).transpose());
            if (!isZero(n)) normals.push_back(std::move(n));
        }
    }
    std::sort(normals.begin(), normals.end(),
              [](const VecQ& a, const VecQ& b) { return lexCompare(a, b) < 0; });
    normals.erase(std::unique(normals.begin(), normals.end(),
                              [](const VecQ& a, const VecQ& b) {
                                  return lexCompare(a, b) == 0;
                              }),
                  normals.end());
    return normals;
}

bool hasStrictGen(const PolyCone& cone, const VecQ& h, int wantSign) {
    const MatQ& g = cone.generators();
    for (Index i = 0; i < g.rows(); ++i) {
        int s = sgn(Rational(h.dot(g.row(i).transpose()))); 
        if (s == wantSign) return true;
    }
    return false;
}

}  // namespace

std::vector<VecQ> localCellDirections(const LocalConeModel& model,
                                      const Limits& lim) {
    const Index d = model.tangent.dim;
    std::vector<VecQ> normals = splittingNormals(model.tangent);
    std::map<std::string, VecQ> reps;
    VecQ zero = VecQ::Zero(d);
    reps.emplace(vecToString(zero), zero);
    long visited = 0;
    for (const auto& piece : model.tangent.pieces) {
        std::function<void(const PolyCone&, size_t)> rec =
            [&](const PolyCone& cone, size_t idx) {
                if (++visited > lim.enumerationBudget)
                    throw BudgetError("cell enumeration budget exceeded");
                if (idx == normals.size()) {
                    const MatQ& g = cone.generators();
                    VecQ sum = VecQ::Zero(d);
                    for (Index i = 0; i < g.rows(); ++i)
                        sum += g.row(i).transpose();
                    VecQ rep = primitive(sum);
                    reps.emplace(vecToString(rep), rep);
                    return;
                }
                const VecQ& h = normals[idx];
                MatQ hRow(1, d), hNeg(1, d);
                hRow.row(0) = h.transpose();
                hNeg.row(0) = (-h).transpose();
                rec(cone.intersect(PolyCone::fromHalfspaces(
                        d, stackRows(hRow, hNeg), lim)),
                    idx + 1);
                PolyCone cminus =
                    cone.intersect(PolyCone::fromHalfspaces(d, hRow, lim));
                if (hasStrictGen(cminus, h, -1)) rec(cminus, idx + 1);
                PolyCone cplus =
                    cone.intersect(PolyCone::fromHalfspaces(d, hNeg, lim));
                if (hasStrictGen(cplus, h, +1)) rec(cplus, idx + 1);
            };
        rec(piece, 0);
    }
    std::vector<VecQ> out;
    out.reserve(reps.size());
    for (auto& kv : reps) out.push_back(std::move(kv.second));
    return out;
}

StratumCatalog stratify(const ConstrainedPoint& pt, const Rational& delta) {
    if (delta <= 0) throw Error("stratify: delta must be positive");
    PLMultifunction restricted = restrict(pt.mapping, pt.omega);
    VecQ base = pt.pair();
    LocalConeModel model = contingentCone(restricted.graph, base);

    StratumCatalog catalog;
    catalog.base = base;
    Rational effective = model.radius / 2;
    if (delta < effective) effective = delta;
    catalog.deltaShrunk = (effective < delta);
    catalog.delta = effective;

    const Limits& lim = pt.omega.limits();
    std::vector<VecQ> dirs = localCellDirections(model, lim);
    for (const VecQ& d : dirs) {
        Stratum s;
        s.direction = d;
        s.isBase = isZero(d);
        if (s.isBase) {
            s.point = base;
        } else {
            auto bounds = sqrtBounds(squaredNorm(d), 64);
            Rational t = catalog.delta / (2 * bounds.second);
            s.point = base + t * d;
        }
        if (!restricted.graph.contains(s.point))
            throw Error("stratify: representative left the graph (internal)");
        s.graphModel = contingentCone(restricted.graph, s.point);
        s.omegaTangent =
            pt.omega.tangentConeAt(VecQ(s.point.head(pt.mapping.inDim)));
        catalog.strata.push_back(std::move(s));
    }
    return catalog;
}

bool epsConicCoderivativeMember(const ConstrainedPoint& pt, const VecQ& xstar,
                                const VecQ& ystar, const Rational& eps) {
    if (xstar.size() != pt.mapping.inDim || ystar.size() != pt.mapping.outDim)
        throw DimensionError("epsConicCoderivativeMember");
    if (!pt.omega.tangentConeAt(pt.x).contains(xstar)) return false;
    PLMultifunction restricted = restrict(pt.mapping, pt.omega);
    VecQ w = concat(xstar, VecQ(-ystar));
    return epsRegularNormalMember(restricted.graph, pt.pair(), w, eps);
}

namespace {

PolyCone appliedPiece(const LocalConeModel& graphModel,
                      const PolyCone* inputTangent, Index n, Index m,
                      const Limits& lim) {
    std::vector<VecQ> rows;
    for (const auto& piece : graphModel.tangent.pieces) {
        const MatQ& g = piece.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            VecQ gen = g.row(i).transpose();
            VecQ row(n + m);
            row.head(n) = gen.head(n);
            row.tail(m) = -gen.tail(m);
            rows.push_back(std::move(row));
        }
    }
    if (inputTangent) {
        const MatQ& h = inputTangent->halfspaces();
        for (Index i = 0; i < h.rows(); ++i) {
            VecQ row = VecQ::Zero(n + m);
            row.head(n) = h.row(i).transpose();
            rows.push_back(std::move(row));
        }
    }
    return PolyCone::fromHalfspaces(n + m, matFromRows(rows, n + m), lim);
}

}  // namespace

CoderivativeGraph limitingCoderivative(const ConstrainedPoint& pt,
                                       CoderivativeKind kind) {
    if (kind == CoderivativeKind::Mirror)
        throw Error("limitingCoderivative: use mirrorCoderivative");
    const Index n = pt.mapping.inDim, m = pt.mapping.outDim;
    StratumCatalog catalog = stratify(pt, Rational(1));
    CoderivativeGraph d;
    d.inDim = n;
    d.outDim = m;
    d.kind = kind;
    d.pieces.dim = n + m;
    for (const auto& s : catalog.strata) {
        d.pieces.pieces.push_back(
            appliedPiece(s.graphModel, &s.omegaTangent, n, m,
                         pt.omega.limits()));
    }
    d.pieces.canonicalize();
    std::ostringstream note;
    note << catalog.strata.size() << " strata, delta "
         << toString(catalog.delta);
    d.note = note.str();
    return d;
}

PLSet applyCoderivative(const CoderivativeGraph& d, const VecQ& vstar) {
    if (vstar.size() != d.outDim) throw DimensionError("applyCoderivative");
    PLSet out;
    out.dim = d.inDim;
    for (const auto& piece : d.pieces.pieces) {
        const MatQ& h = piece.halfspaces();
        MatQ a(h.rows(), d.inDim);
        VecQ b(h.rows());
        for (Index i = 0; i < h.rows(); ++i) {
            a.row(i) = h.row(i).head(d.inDim);
            b[i] = -h.row(i).tail(d.outDim).transpose().dot(vstar);
        }
        ConvexPolyhedron slice = ConvexPolyhedron::fromInequalities(
            d.inDim, std::move(a), std::move(b));
        if (!slice.isEmpty()) out.pieces.push_back(std::move(slice));
    }
    return out;
}

ConeUnion coderivativeKernel(const CoderivativeGraph& d) {
    ConeUnion out;
    out.dim = d.inDim;
    for (const auto& piece : d.pieces.pieces) {
        const MatQ& h = piece.halfspaces();
        MatQ hu(h.rows(), d.inDim);
        for (Index i = 0; i < h.rows(); ++i) hu.row(i) = h.row(i).head(d.inDim);
        out.pieces.push_back(PolyCone::fromHalfspaces(d.inDim, hu));
    }
    out.canonicalize();
    return out;
}

namespace {

using SurdMat = std::vector<std::vector<QuadExt>>;

std::vector<std::vector<QuadExt>> surdKernel(SurdMat a, const Integer& d) {
    const size_t n = a.size();
    std::vector<size_t> pivotCol;
    size_t r = 0;
    for (size_t c = 0; c < n && r < n; ++c) {
        size_t pivot = SIZE_MAX;
        for (size_t i = r; i < n; ++i) {
            if (!a[i][c].isZero()) {
                pivot = i;
                break;
            }
        }
        if (pivot == SIZE_MAX) continue;
        std::swap(a[pivot], a[r]);
        QuadExt inv = inverse(a[r][c]);
        for (size_t j = 0; j < n; ++j) a[r][j] = a[r][j] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i != r && !a[i][c].isZero()) {
                QuadExt factor = a[i][c];
                for (size_t j = 0; j < n; ++j)
                    a[i][j] = a[i][j] - factor * a[r][j];
            }
        }
        pivotCol.push_back(c);
        ++r;
    }
    std::vector<bool> isPivot(n, false);
    for (size_t c : pivotCol) isPivot[c] = true;
    std::vector<std::vector<QuadExt>> basis;
    for (size_t fc = 0; fc < n; ++fc) {
        if (isPivot[fc]) continue;
        std::vector<QuadExt> v(n, QuadExt(Rational(0), Rational(0), d));
        v[fc] = QuadExt(Rational(1), Rational(0), d);
        for (size_t k = 0; k < pivotCol.size(); ++k)
            v[pivotCol[k]] = -a[k][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::pair<Rational, Rational> surdBounds(const QuadExt& x) {
    if (x.b == 0 || x.d == 0) return {x.a, x.a};
    auto bounds = sqrtBounds(Rational(x.d), 80);
    if (x.b > 0) return {x.a + x.b * bounds.first, x.a + x.b * bounds.second};
    return {x.a + x.b * bounds.second, x.a + x.b * bounds.first};
}

struct PieceNorm {
    bool unbounded = false;
    bool exact = true;
    Rational sq;
    Rational hiBound;
};

// sup |u|^2 / |v|^2 over the cone piece in (u, v) coordinates
PieceNorm pieceNormSq(const PolyCone& piece, Index n, Index m,
                      const Limits& lim) {
    PieceNorm out;
    out.sq = Rational(0);
    out.hiBound = Rational(0);
    const Index dim = n + m;
    {
        std::vector<VecQ> rows = rowsOf(piece.halfspaces());
        for (Index j = 0; j < m; ++j) {
            VecQ e = VecQ::Zero(dim);
            e[n + j] = 1;
            rows.push_back(e);
            rows.push_back(-e);
        }
        PolyCone k0 =
            PolyCone::fromHalfspaces(dim, matFromRows(rows, dim), lim);
        const MatQ& g = k0.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            if (!isZero(VecQ(g.row(i).transpose().head(n)))) {
                out.unbounded = true;
                return out;
            }
        }
    }
    const MatQ& h = piece.halfspaces();
    std::vector<Index> current;
    long visited = 0;
    std::function<void(Index)> rec = [&](Index start) {
        if (++visited > lim.enumerationBudget)
            throw BudgetError("norm face enumeration budget");
        MatQ sub(static_cast<Index>(current.size()), dim);
        for (size_t k = 0; k < current.size(); ++k)
            sub.row(static_cast<Index>(k)) = h.row(current[k]);
        if (!current.empty() && rankOf(sub) < static_cast<int>(current.size()))
            return;
        MatQ basis = current.empty() ? MatQ(MatQ::Identity(dim, dim))
                                     : nullspaceBasis(sub);
        const Index k = basis.cols();
        if (k > 0) {
            MatQ bu = basis.topRows(n);
            MatQ bv = basis.bottomRows(m);
            MatQ mm = bu.transpose() * bu;
            MatQ nn = bv.transpose() * bv;
            bool nZero = true;
            for (Index i = 0; i < nn.rows() && nZero; ++i)
                for (Index j = 0; j < nn.cols(); ++j)
                    if (nn(i, j) != 0) {
                        nZero = false;
                        break;
                    }
            if (!nZero) {
                Poly phi = pencilCharPoly(mm, nn);
                Poly reduced = phi;
                auto ratRoots = rationalRoots(reduced);
                MatQ hw = h * basis;
                auto candidateAttained = [&](const Rational& lambda) {
                    MatQ pencil = mm - lambda * nn;
                    std::vector<VecQ> rows = rowsOf(hw);
                    for (Index i = 0; i < pencil.rows(); ++i) {
                        rows.push_back(pencil.row(i).transpose());
                        rows.push_back(-pencil.row(i).transpose());
                    }
                    PolyCone cand =
                        PolyCone::fromHalfspaces(k, matFromRows(rows, k), lim);
                    const MatQ& g = cand.generators();
                    for (Index i = 0; i < g.rows(); ++i) {
                        VecQ c = g.row(i).transpose();
                        if ((c.transpose() * nn * c)(0, 0) != 0) return true;
                    }
                    return false;
                };
                if (ratRoots) {
                    for (const Rational& lambda : *ratRoots) {
                        if (lambda < 0 || lambda <= out.sq) continue;
                        if (candidateAttained(lambda)) out.sq = lambda;
                    }
                } else {
                    reduced = phi;
                }
                if (!reduced.isZero() && reduced.degree() >= 1) {
                    if (reduced.degree() <= 2) {
                        for (const QuadExt& root : quadraticRoots(reduced)) {
                            if (root.signOf() < 0) continue;
                            auto rb = surdBounds(root);
                            if (rb.second <= out.sq) continue;
                            const Integer& dd = root.d;
                            SurdMat pencil(
                                static_cast<size_t>(k),
                                std::vector<QuadExt>(static_cast<size_t>(k),
                                                     QuadExt(Rational(0),
                                                             Rational(0), dd)));
                            for (Index i = 0; i < k; ++i)
                                for (Index j = 0; j < k; ++j)
                                    pencil[static_cast<size_t>(i)]
                                          [static_cast<size_t>(j)] =
                                        QuadExt(mm(i, j), Rational(0), dd) -
                                        root * QuadExt(nn(i, j), Rational(0),
                                                       dd);
                            auto kernel = surdKernel(pencil, dd);
                            bool attained = false;
                            for (const auto& kv : kernel) {
                                for (int sgnSel : {1, -1}) {
                                    bool member = true;
                                    for (Index r2 = 0; r2 < hw.rows() && member;
                                         ++r2) {
                                        QuadExt acc(Rational(0), Rational(0),
                                                    dd);
                                        for (Index c2 = 0; c2 < k; ++c2)
                                            acc = acc +
                                                  QuadExt(hw(r2, c2) *
                                                              Rational(sgnSel),
                                                          Rational(0), dd) *
                                                      kv[static_cast<size_t>(
                                                          c2)];
                                        if (acc.signOf() > 0) member = false;
                                    }
                                    if (!member) continue;
                                    QuadExt nq(Rational(0), Rational(0), dd);
                                    for (Index i2 = 0; i2 < k; ++i2)
                                        for (Index j2 = 0; j2 < k; ++j2)
                                            nq = nq +
                                                 kv[static_cast<size_t>(i2)] *
                                                     QuadExt(nn(i2, j2),
                                                             Rational(0), dd) *
                                                     kv[static_cast<size_t>(
                                                         j2)];
                                    if (nq.signOf() != 0) attained = true;
                                    break;
                                }
                                if (attained) break;
                            }
                            if (attained) {
                                out.exact = false;
                                if (rb.second > out.hiBound)
                                    out.hiBound = rb.second;
                            }
                        }
                    } else {
                        Poly sf = squarefreePart(reduced);
                        for (auto& iv : isolateRealRoots(sf)) {
                            auto refined = refineRootInterval(
                                sf, iv.first, iv.second,
                                makeRational(1, 1 << 20));
                            if (refined.second <= out.sq) continue;
                            out.exact = false;
                            if (refined.second > out.hiBound)
                                out.hiBound = refined.second;
                        }
                    }
                }
            }
        }
        if (static_cast<Index>(current.size()) >= dim) return;
        for (Index i = start; i < h.rows(); ++i) {
            current.push_back(i);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
    if (out.hiBound < out.sq) out.hiBound = out.sq;
    return out;
}

}  // namespace

NormResult coderivativeNorm(const CoderivativeGraph& d) {
    NormResult out;
    out.sq = Rational(0);
    out.bounds = {Rational(0), Rational(0)};
    Rational hiAll(0);
    bool anyInexact = false;
    Limits lim;
    for (const auto& piece : d.pieces.pieces) {
        PieceNorm pn = pieceNormSq(piece, d.inDim, d.outDim, lim);
        if (pn.unbounded) {
            out.unbounded = true;
            return out;
        }
        if (pn.sq > out.sq) out.sq = pn.sq;
        if (!pn.exact) {
            anyInexact = true;
            if (pn.hiBound > hiAll) hiAll = pn.hiBound;
        }
    }
    if (anyInexact && hiAll > out.sq) {
        out.exact = false;
        out.bounds = {out.sq, hiAll};
    } else {
        out.exact = true;
        out.bounds = {out.sq, out.sq};
    }
    return out;
}

CoderivativeGraph mirrorCoderivative(const PLMultifunction& s,
                                     const PLSet& theta, const VecQ& xbar,
                                     const VecQ& ybar) {
    if (theta.dim != s.outDim) throw DimensionError("mirrorCoderivative");
    PLMultifunction constrained = restrictOutputs(s, theta);
    VecQ base = concat(xbar, ybar);
    if (!constrained.graph.contains(base))
        throw Error("mirrorCoderivative: point not on the constrained graph");
    const Index n = s.inDim, m = s.outDim;
    LocalConeModel model = contingentCone(constrained.graph, base);
    Limits lim;
    std::vector<VecQ> dirs = localCellDirections(model, lim);
    Rational delta = model.radius / 2;

    CoderivativeGraph d;
    d.inDim = n;
    d.outDim = m;
    d.kind = CoderivativeKind::Mirror;
    d.pieces.dim = n + m;
    for (const VecQ& dir : dirs) {
        VecQ point = base;
        if (!isZero(dir)) {
            auto bounds = sqrtBounds(squaredNorm(dir), 64);
            point = base + (delta / (2 * bounds.second)) * dir;
        }
        if (!constrained.graph.contains(point))
            throw Error("mirrorCoderivative: representative off graph");
        LocalConeModel graphModel = contingentCone(constrained.graph, point);
        LocalConeModel thetaModel = contingentCone(theta, VecQ(point.tail(m)));
        std::vector<VecQ> baseRows;
        for (const auto& piece : graphModel.tangent.pieces) {
            const MatQ& g = piece.generators();
            for (Index i = 0; i < g.rows(); ++i) {
                VecQ gen = g.row(i).transpose();
                VecQ row(n + m);
                row.head(n) = gen.head(n);
                row.tail(m) = -gen.tail(m);
                baseRows.push_back(std::move(row));
            }
        }
        for (const auto& thetaPiece : thetaModel.tangent.pieces) {
            std::vector<VecQ> rows = baseRows;
            const MatQ& h = thetaPiece.halfspaces();
            for (Index i = 0; i < h.rows(); ++i) {
                // -v* tangent to theta at the value part
                VecQ row = VecQ::Zero(n + m);
                row.tail(m) = -h.row(i).transpose();
                rows.push_back(std::move(row));
            }
            d.pieces.pieces.push_back(
                PolyCone::fromHalfspaces(n + m, matFromRows(rows, n + m), lim));
        }
    }
    d.pieces.canonicalize();
    d.note = "mirror, " + std::to_string(dirs.size()) + " strata";
    return d;
}

NormalityVerdict coderivativeNormalityCheck(const ConstrainedPoint& pt) {
    CoderivativeGraph normal =
        limitingCoderivative(pt, CoderivativeKind::LimitingNormal);
    CoderivativeGraph mixed =
        limitingCoderivative(pt, CoderivativeKind::LimitingMixed);
    if (!coneUnionEquals(normal.pieces, mixed.pieces))
        throw Error(
            "coderivativeNormalityCheck: limiting variants diverged "
            "(finite-dimensional collapse violated)");
    NormalityVerdict v;
    v.value = true;
    v.note =
        "normal and mixed limiting graphs coincide (finite-dimensional "
        "collapse; dual convergence modes agree)";
    return v;
}

NormalityVerdict psncVerdict(const ConstrainedPoint&) {
    NormalityVerdict v;
    v.value = true;
    v.note =
        "dual sequential compactness is automatic in finite dimensions "
        "(weak-star and norm convergence coincide)";
    return v;
}

}  // namespace relip
