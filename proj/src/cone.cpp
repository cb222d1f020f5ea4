#include "relip/cone.hpp"

#include <algorithm>
#include <sstream>

namespace relip {

namespace {

std::vector<VecQ> sortedPrimitiveRows(const MatQ& m) {
    std::vector<VecQ> rows;
    for (Index i = 0; i < m.rows(); ++i) {
        VecQ p = primitive(m.row(i).transpose());
        if (!isZero(p)) rows.push_back(std::move(p));
    }
    std::sort(rows.begin(), rows.end(),
              [](const VecQ& a, const VecQ& b) { return lexCompare(a, b) < 0; });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const VecQ& a, const VecQ& b) {
                               return lexCompare(a, b) == 0;
                           }),
               rows.end());
    return rows;
}

struct Ray {
    VecQ v;
    std::vector<bool> zero;  // per processed constraint
};

}  // namespace

MatQ canonicalRows(const MatQ& h) {
    auto rows = sortedPrimitiveRows(h);
    return matFromRows(rows, h.cols());
}

MatQ doubleDescription(Index dim, const MatQ& hIn, const Limits& lim) {
    if (dim > lim.dimCap)
        throw CapError("double description beyond dimension cap (" +
                       std::to_string(dim) + " > " +
                       std::to_string(lim.dimCap) + ")");
    MatQ h = hIn.rows() > 0 ? MatQ(canonicalRows(hIn)) : MatQ(0, dim);

    std::vector<VecQ> lineality;
    for (Index i = 0; i < dim; ++i) {
        VecQ e = VecQ::Zero(dim);
        e[i] = 1;
        lineality.push_back(e);
    }
    std::vector<Ray> rays;
    const Index rowCount = h.rows();

    for (Index t = 0; t < rowCount; ++t) {
        VecQ a = h.row(t).transpose();
        // lineality reduction
        Index hit = -1;
        for (size_t k = 0; k < lineality.size(); ++k) {
            if (dot(a, lineality[k]) != 0) {
                hit = static_cast<Index>(k);
                break;
            }
        }
        if (hit >= 0) {
            VecQ l0 = lineality[static_cast<size_t>(hit)];
            Rational al0 = dot(a, l0);
            lineality.erase(lineality.begin() + hit);
            for (auto& l : lineality) {
                Rational al = dot(a, l);
                if (al != 0) l -= (al / al0) * l0;
            }
            for (auto& r : rays) {
                Rational ar = dot(a, r.v);
                if (ar != 0) r.v -= (ar / al0) * l0;
                r.zero.push_back(true);
            }
            Ray r0;
            r0.v = (al0 > 0) ? VecQ(-l0) : l0;
            r0.zero.assign(static_cast<size_t>(t), true);
            r0.zero.push_back(false);
            rays.push_back(std::move(r0));
            continue;
        }
        // partition rays
        std::vector<Ray> keep;
        std::vector<size_t> plus, minus;
        std::vector<Rational> vals(rays.size());
        for (size_t k = 0; k < rays.size(); ++k) {
            vals[k] = dot(a, rays[k].v);
            if (vals[k] > 0)
                plus.push_back(k);
            else if (vals[k] < 0)
                minus.push_back(k);
        }
        if (plus.empty()) {
            for (size_t k = 0; k < rays.size(); ++k)
                rays[k].zero.push_back(vals[k] == 0);
            continue;
        }
        long combos = static_cast<long>(plus.size()) *
                      static_cast<long>(minus.size());
        if (combos > lim.enumerationBudget)
            throw BudgetError("double description ray blowup");
        std::vector<Ray> next;
        for (size_t k = 0; k < rays.size(); ++k) {
            if (vals[k] <= 0) {
                Ray r = rays[k];
                r.zero.push_back(vals[k] == 0);
                next.push_back(std::move(r));
            }
        }
        auto adjacent = [&](size_t i, size_t j) {
            std::vector<bool> common(rays[i].zero.size());
            for (size_t q = 0; q < common.size(); ++q)
                common[q] = rays[i].zero[q] && rays[j].zero[q];
            for (size_t w = 0; w < rays.size(); ++w) {
                if (w == i || w == j) continue;
                bool superset = true;
                for (size_t q = 0; q < common.size(); ++q) {
                    if (common[q] && !rays[w].zero[q]) {
                        superset = false;
                        break;
                    }
                }
                if (superset) return false;
            }
            return true;
        };
        for (size_t i : plus) {
            for (size_t j : minus) {
                if (adjacent(i, j)) {
                    Ray nr;
                    nr.v = primitive(vals[i] * rays[j].v - vals[j] * rays[i].v);
                    if (isZero(nr.v)) continue;
                    nr.zero.resize(static_cast<size_t>(t) + 1);
                    for (size_t q = 0; q < static_cast<size_t>(t); ++q)
                        nr.zero[q] = rays[i].zero[q] && rays[j].zero[q];
                    nr.zero[static_cast<size_t>(t)] = true;
                    next.push_back(std::move(nr));
                }
            }
        }
        // dedupe
        std::sort(next.begin(), next.end(), [](const Ray& x, const Ray& y) {
            return lexCompare(x.v, y.v) < 0;
        });
        next.erase(std::unique(next.begin(), next.end(),
                               [](const Ray& x, const Ray& y) {
                                   return lexCompare(x.v, y.v) == 0;
                               }),
                   next.end());
        rays = std::move(next);
    }

    std::vector<VecQ> out;
    for (const auto& r : rays) out.push_back(primitive(r.v));
    for (const auto& l : lineality) {
        VecQ p = primitive(l);
        out.push_back(p);
        out.push_back(-p);
    }
    std::sort(out.begin(), out.end(),
              [](const VecQ& a, const VecQ& b) { return lexCompare(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const VecQ& a, const VecQ& b) {
                              return lexCompare(a, b) == 0;
                          }),
              out.end());
    return matFromRows(out, dim);
}

PolyCone PolyCone::fromHalfspaces(Index dim, MatQ h, const Limits& lim) {
    PolyCone c;
    c.dim_ = dim;
    c.lim_ = lim;
    if (h.rows() > 0 && h.cols() != dim)
        throw DimensionError("PolyCone: halfspace width mismatch");
    if (h.rows() == 0) h = MatQ(0, dim);
    c.h_ = canonicalRows(h);
    return c;
}

PolyCone PolyCone::fromGenerators(Index dim, MatQ gens, const Limits& lim) {
    PolyCone c;
    c.dim_ = dim;
    c.lim_ = lim;
    if (gens.rows() > 0 && gens.cols() != dim)
        throw DimensionError("PolyCone: generator width mismatch");
    if (gens.rows() == 0) gens = MatQ(0, dim);
    c.gens_ = canonicalRows(gens);
    return c;
}

PolyCone PolyCone::fullSpace(Index dim, const Limits& lim) {
    return fromHalfspaces(dim, MatQ(0, dim), lim);
}

PolyCone PolyCone::zeroCone(Index dim, const Limits& lim) {
    return fromGenerators(dim, MatQ(0, dim), lim);
}

const MatQ& PolyCone::halfspaces() const {
    if (!h_) {
        // constraints of cone(gens) = generators of its polar
        h_ = doubleDescription(dim_, *gens_, lim_);
    }
    return *h_;
}

const MatQ& PolyCone::generators() const {
    if (!gens_) {
        gens_ = doubleDescription(dim_, *h_, lim_);
    }
    return *gens_;
}

bool PolyCone::contains(const VecQ& d) const {
    if (d.size() != dim_) throw DimensionError("PolyCone::contains");
    if (h_) {
        const MatQ& h = *h_;
        for (Index i = 0; i < h.rows(); ++i)
            if (h.row(i).transpose().dot(d) > 0) return false;
        return true;
    }
    const MatQ& h = halfspaces();
    for (Index i = 0; i < h.rows(); ++i)
        if (h.row(i).transpose().dot(d) > 0) return false;
    return true;
}

bool PolyCone::containsCone(const PolyCone& other) const {
    const MatQ& g = other.generators();
    for (Index i = 0; i < g.rows(); ++i)
        if (!contains(g.row(i).transpose())) return false;
    return true;
}

bool PolyCone::isTrivial() const { return generators().rows() == 0; }

bool PolyCone::isFullSpace() const {
    return halfspaces().rows() == 0 ||
           containsCone(fullSpace(dim_, lim_));
}

PolyCone PolyCone::polar() const {
    PolyCone p;
    p.dim_ = dim_;
    p.lim_ = lim_;
    p.h_ = generators();  // <g, v> <= 0 for all generators
    if (h_) p.gens_ = *h_;
    return p;
}

PolyCone PolyCone::intersect(const PolyCone& other) const {
    if (other.dim() != dim_) throw DimensionError("PolyCone::intersect");
    return fromHalfspaces(dim_, stackRows(halfspaces(), other.halfspaces()),
                          lim_);
}

namespace {

// Enumerate independent subsets of the rows of h, invoking f on each
// (including the empty set). f returns true to stop.
bool forEachIndependentSubset(
    const MatQ& h, Index maxSize, long budget,
    const std::function<bool(const std::vector<Index>&)>& f) {
    std::vector<Index> current;
    long visited = 0;
    std::function<bool(Index)> rec = [&](Index start) -> bool {
        if (++visited > budget)
            throw BudgetError("face enumeration budget exceeded");
        if (f(current)) return true;
        if (static_cast<Index>(current.size()) >= maxSize) return false;
        for (Index i = start; i < h.rows(); ++i) {
            current.push_back(i);
            MatQ sub(static_cast<Index>(current.size()), h.cols());
            for (size_t k = 0; k < current.size(); ++k)
                sub.row(static_cast<Index>(k)) = h.row(current[k]);
            if (rankOf(sub) == static_cast<int>(current.size())) {
                if (rec(i + 1)) return true;
            }
            current.pop_back();
        }
        return false;
    };
    return rec(0);
}

}  // namespace

PolyCone::Projection PolyCone::project(const VecQ& v) const {
    if (v.size() != dim_) throw DimensionError("PolyCone::project");
    const MatQ& h = halfspaces();
    Projection result;
    bool found = forEachIndependentSubset(
        h, std::min<Index>(dim_, h.rows()), lim_.enumerationBudget,
        [&](const std::vector<Index>& s) -> bool {
            VecQ p(dim_);
            if (s.empty()) {
                p = v;
            } else {
                MatQ as(static_cast<Index>(s.size()), dim_);
                for (size_t k = 0; k < s.size(); ++k)
                    as.row(static_cast<Index>(k)) = h.row(s[k]);
                MatQ gram = as * as.transpose();
                auto mu = solveLinear(gram, VecQ(as * v));
                if (!mu) return false;
                for (Index i = 0; i < mu->size(); ++i)
                    if ((*mu)[i] < 0) return false;
                p = v - as.transpose() * (*mu);
            }
            if (!contains(p)) return false;
            result.point = p;
            result.normSq = squaredNorm(p);
            return true;
        });
    if (!found) throw Error("cone projection failed (internal)");
    return result;
}

PolyCone PolyCone::liftFree(Index bigDim, Index offset) const {
    if (offset + dim_ > bigDim) throw DimensionError("PolyCone::liftFree");
    const MatQ& h = halfspaces();
    MatQ lifted = MatQ::Zero(h.rows(), bigDim);
    lifted.block(0, offset, h.rows(), dim_) = h;
    return fromHalfspaces(bigDim, lifted, lim_);
}

PolyCone PolyCone::embedded(Index bigDim,
                            const std::vector<Index>& map) const {
    if (static_cast<Index>(map.size()) != dim_)
        throw DimensionError("PolyCone::embedded");
    const MatQ& h = halfspaces();
    MatQ lifted = MatQ::Zero(h.rows(), bigDim);
    for (Index j = 0; j < dim_; ++j)
        lifted.col(map[static_cast<size_t>(j)]) = h.col(j);
    return fromHalfspaces(bigDim, lifted, lim_);
}

PolyCone PolyCone::permuted(const std::vector<Index>& perm) const {
    if (static_cast<Index>(perm.size()) != dim_)
        throw DimensionError("PolyCone::permuted");
    auto apply = [&](const MatQ& m) {
        MatQ out(m.rows(), dim_);
        for (Index j = 0; j < dim_; ++j) out.col(j) = m.col(perm[j]);
        return out;
    };
    PolyCone c;
    c.dim_ = dim_;
    c.lim_ = lim_;
    if (h_) c.h_ = canonicalRows(apply(*h_));
    if (gens_) c.gens_ = canonicalRows(apply(*gens_));
    return c;
}

PolyCone PolyCone::negated(const std::vector<bool>& flip) const {
    if (static_cast<Index>(flip.size()) != dim_)
        throw DimensionError("PolyCone::negated");
    auto apply = [&](const MatQ& m) {
        MatQ out = m;
        for (Index j = 0; j < dim_; ++j)
            if (flip[static_cast<size_t>(j)]) out.col(j) = -out.col(j);
        return out;
    };
    PolyCone c;
    c.dim_ = dim_;
    c.lim_ = lim_;
    if (h_) c.h_ = canonicalRows(apply(*h_));
    if (gens_) c.gens_ = canonicalRows(apply(*gens_));
    return c;
}

PolyCone PolyCone::preimage(const MatQ& l) const {
    if (l.rows() != dim_) throw DimensionError("PolyCone::preimage");
    return fromHalfspaces(l.cols(), MatQ(halfspaces() * l), lim_);
}

void PolyCone::canonicalize() const {
    if (h_) h_ = canonicalRows(*h_);
    if (gens_) gens_ = canonicalRows(*gens_);
}

bool PolyCone::setEquals(const PolyCone& other) const {
    return containsCone(other) && other.containsCone(*this);
}

std::string PolyCone::canonicalKey() const {
    const MatQ& g = generators();
    const MatQ& h = halfspaces();
    std::ostringstream os;
    os << "G";
    for (Index i = 0; i < g.rows(); ++i)
        os << vecToString(g.row(i).transpose());
    os << "|H";
    MatQ hc = canonicalRows(h);
    for (Index i = 0; i < hc.rows(); ++i)
        os << vecToString(hc.row(i).transpose());
    return os.str();
}

ConeUnion ConeUnion::single(PolyCone c) {
    ConeUnion u;
    u.dim = c.dim();
    u.pieces.push_back(std::move(c));
    return u;
}

ConeUnion ConeUnion::zero(Index dim) {
    return single(PolyCone::zeroCone(dim));
}

bool ConeUnion::member(const VecQ& d) const {
    for (const auto& p : pieces)
        if (p.contains(d)) return true;
    return pieces.empty() ? isZero(d) : false;
}

void ConeUnion::canonicalize() {
    std::vector<std::pair<std::string, PolyCone>> keyed;
    for (auto& p : pieces) keyed.emplace_back(p.canonicalKey(), std::move(p));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) {
                                return a.first == b.first;
                            }),
                keyed.end());
    pieces.clear();
    for (auto& kp : keyed) pieces.push_back(std::move(kp.second));
}

bool ConeUnion::isTrivial() const {
    for (const auto& p : pieces)
        if (!p.isTrivial()) return false;
    return true;
}

SupportValue supportOnBall(const ConeUnion& u, const VecQ& v) {
    SupportValue s{Rational(0), true};
    for (const auto& piece : u.pieces) {
        Rational sq = piece.project(v).normSq;
        if (sq > s.sq) s.sq = sq;
    }
    s.nonpositive = (s.sq == 0);
    return s;
}

namespace {

bool pieceCovered(const PolyCone& p, const std::vector<PolyCone>& covers,
                  size_t from, int depth) {
    if (depth > 64) throw BudgetError("cone covering recursion too deep");
    if (p.isTrivial()) return true;
    if (from >= covers.size()) return false;
    const PolyCone& b = covers[from];
    if (b.containsCone(p)) return true;
    const MatQ& bh = b.halfspaces();
    const MatQ& pg = p.generators();
    for (Index i = 0; i < bh.rows(); ++i) {
        VecQ hRow = bh.row(i).transpose();
        bool strictNonempty = false;
        for (Index k = 0; k < pg.rows(); ++k) {
            if (hRow.dot(pg.row(k).transpose()) > 0) {
                strictNonempty = true;
                break;
            }
        }
        if (!strictNonempty) continue;
        MatQ qh = stackRows(p.halfspaces(), MatQ((-hRow).transpose()));
        PolyCone q = PolyCone::fromHalfspaces(p.dim(), qh, p.limits());
        if (!pieceCovered(q, covers, from + 1, depth + 1)) return false;
    }
    return true;
}

std::optional<VecQ> uncoveredRay(const PolyCone& p,
                                 const std::vector<PolyCone>& covers,
                                 size_t from, int depth) {
    if (depth > 64) throw BudgetError("cone covering recursion too deep");
    const MatQ& pg = p.generators();
    if (pg.rows() == 0) return std::nullopt;
    if (from >= covers.size()) {
        for (Index k = 0; k < pg.rows(); ++k) {
            VecQ g = pg.row(k).transpose();
            if (!isZero(g)) return g;
        }
        return std::nullopt;
    }
    const PolyCone& b = covers[from];
    if (b.containsCone(p)) return std::nullopt;
    const MatQ& bh = b.halfspaces();
    for (Index i = 0; i < bh.rows(); ++i) {
        VecQ hRow = bh.row(i).transpose();
        bool strictNonempty = false;
        for (Index k = 0; k < pg.rows(); ++k) {
            if (hRow.dot(pg.row(k).transpose()) > 0) {
                strictNonempty = true;
                break;
            }
        }
        if (!strictNonempty) continue;
        MatQ qh = stackRows(p.halfspaces(), MatQ((-hRow).transpose()));
        PolyCone q = PolyCone::fromHalfspaces(p.dim(), qh, p.limits());
        if (auto w = uncoveredRay(q, covers, from + 1, depth + 1)) return w;
    }
    return std::nullopt;
}

}  // namespace

bool coneUnionIncluded(const ConeUnion& a, const ConeUnion& b) {
    if (a.dim != b.dim) throw DimensionError("coneUnionIncluded");
    // fast necessary check on generators
    for (const auto& p : a.pieces) {
        const MatQ& g = p.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            if (!b.member(g.row(i).transpose())) return false;
        }
    }
    for (const auto& p : a.pieces) {
        if (!pieceCovered(p, b.pieces, 0, 0)) return false;
    }
    return true;
}

bool coneUnionEquals(const ConeUnion& a, const ConeUnion& b) {
    return coneUnionIncluded(a, b) && coneUnionIncluded(b, a);
}

std::optional<VecQ> coneUnionWitness(const ConeUnion& a, const ConeUnion& b) {
    if (a.dim != b.dim) throw DimensionError("coneUnionWitness");
    for (const auto& p : a.pieces) {
        const MatQ& g = p.generators();
        for (Index i = 0; i < g.rows(); ++i) {
            VecQ gi = g.row(i).transpose();
            if (!b.member(gi)) return gi;
        }
    }
    for (const auto& p : a.pieces) {
        if (auto w = uncoveredRay(p, b.pieces, 0, 0)) {
            if (!b.member(*w)) return w;
        }
    }
    return std::nullopt;
}

}  // namespace relip
