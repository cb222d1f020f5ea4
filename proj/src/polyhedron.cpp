#include "relip/polyhedron.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace relip {

ConvexPolyhedron::ConvexPolyhedron(Index dim, MatQ a, VecQ b, MatQ e, VecQ f,
                                   const Limits& lim)
    : dim_(dim), a_(std::move(a)), b_(std::move(b)), e_(std::move(e)),
      f_(std::move(f)), lim_(lim) {
    if (a_.rows() != b_.size() || e_.rows() != f_.size())
        throw DimensionError("ConvexPolyhedron: rhs size mismatch");
    if ((a_.rows() > 0 && a_.cols() != dim_) ||
        (e_.rows() > 0 && e_.cols() != dim_))
        throw DimensionError("ConvexPolyhedron: row width mismatch");
    if (a_.rows() == 0) a_ = MatQ(0, dim_);
    if (e_.rows() == 0) e_ = MatQ(0, dim_);
    normalizeRows();
}

void ConvexPolyhedron::normalizeRows() {
    std::vector<VecQ> ineqs;
    for (Index i = 0; i < a_.rows(); ++i) {
        VecQ joint(dim_ + 1);
        joint.head(dim_) = a_.row(i).transpose();
        joint[dim_] = b_[i];
        if (isZero(VecQ(joint.head(dim_)))) {
            if (b_[i] < 0) {
                // trivially infeasible row: keep a canonical marker
                VecQ marker = VecQ::Zero(dim_ + 1);
                marker[dim_] = -1;
                ineqs.push_back(std::move(marker));
            }
            continue;  // 0 <= b trivially true
        }
        ineqs.push_back(primitive(joint));
    }
    std::sort(ineqs.begin(), ineqs.end(),
              [](const VecQ& x, const VecQ& y) { return lexCompare(x, y) < 0; });
    ineqs.erase(std::unique(ineqs.begin(), ineqs.end(),
                            [](const VecQ& x, const VecQ& y) {
                                return lexCompare(x, y) == 0;
                            }),
                ineqs.end());
    std::vector<VecQ> eqs;
    for (Index i = 0; i < e_.rows(); ++i) {
        VecQ joint(dim_ + 1);
        joint.head(dim_) = e_.row(i).transpose();
        joint[dim_] = f_[i];
        if (isZero(VecQ(joint.head(dim_)))) {
            if (f_[i] != 0) {
                VecQ marker = VecQ::Zero(dim_ + 1);
                marker[dim_] = -1;
                ineqs.push_back(std::move(marker));
            }
            continue;
        }
        eqs.push_back(primitiveSigned(joint));
    }
    std::sort(eqs.begin(), eqs.end(),
              [](const VecQ& x, const VecQ& y) { return lexCompare(x, y) < 0; });
    eqs.erase(std::unique(eqs.begin(), eqs.end(),
                          [](const VecQ& x, const VecQ& y) {
                              return lexCompare(x, y) == 0;
                          }),
              eqs.end());

    a_ = MatQ(static_cast<Index>(ineqs.size()), dim_);
    b_ = VecQ(static_cast<Index>(ineqs.size()));
    for (size_t i = 0; i < ineqs.size(); ++i) {
        a_.row(static_cast<Index>(i)) = ineqs[i].head(dim_).transpose();
        b_[static_cast<Index>(i)] = ineqs[i][dim_];
    }
    e_ = MatQ(static_cast<Index>(eqs.size()), dim_);
    f_ = VecQ(static_cast<Index>(eqs.size()));
    for (size_t i = 0; i < eqs.size(); ++i) {
        e_.row(static_cast<Index>(i)) = eqs[i].head(dim_).transpose();
        f_[static_cast<Index>(i)] = eqs[i][dim_];
    }
}

ConvexPolyhedron ConvexPolyhedron::full(Index dim, const Limits& lim) {
    return ConvexPolyhedron(dim, MatQ(0, dim), VecQ(0), MatQ(0, dim), VecQ(0),
                            lim);
}

ConvexPolyhedron ConvexPolyhedron::fromInequalities(Index dim, MatQ a, VecQ b,
                                                    const Limits& lim) {
    return ConvexPolyhedron(dim, std::move(a), std::move(b), MatQ(0, dim),
                            VecQ(0), lim);
}

ConvexPolyhedron ConvexPolyhedron::singleton(const VecQ& x, const Limits& lim) {
    Index d = x.size();
    MatQ e = MatQ::Identity(d, d);
    return ConvexPolyhedron(d, MatQ(0, d), VecQ(0), e, x, lim);
}

ConvexPolyhedron ConvexPolyhedron::box(const VecQ& center,
                                       const Rational& radius,
                                       const Limits& lim) {
    Index d = center.size();
    MatQ a(2 * d, d);
    VecQ b(2 * d);
    a.setZero();
    for (Index i = 0; i < d; ++i) {
        a(2 * i, i) = 1;
        b[2 * i] = center[i] + radius;
        a(2 * i + 1, i) = -1;
        b[2 * i + 1] = radius - center[i];
    }
    return ConvexPolyhedron(d, std::move(a), std::move(b), MatQ(0, d), VecQ(0),
                            lim);
}

ConvexPolyhedron ConvexPolyhedron::product(const ConvexPolyhedron& p,
                                           const ConvexPolyhedron& q) {
    Index d = p.dim() + q.dim();
    MatQ a = MatQ::Zero(p.a_.rows() + q.a_.rows(), d);
    VecQ b(p.a_.rows() + q.a_.rows());
    a.block(0, 0, p.a_.rows(), p.dim()) = p.a_;
    b.head(p.a_.rows()) = p.b_;
    a.block(p.a_.rows(), p.dim(), q.a_.rows(), q.dim()) = q.a_;
    b.tail(q.a_.rows()) = q.b_;
    MatQ e = MatQ::Zero(p.e_.rows() + q.e_.rows(), d);
    VecQ f(p.e_.rows() + q.e_.rows());
    e.block(0, 0, p.e_.rows(), p.dim()) = p.e_;
    f.head(p.e_.rows()) = p.f_;
    e.block(p.e_.rows(), p.dim(), q.e_.rows(), q.dim()) = q.e_;
    f.tail(q.e_.rows()) = q.f_;
    return ConvexPolyhedron(d, std::move(a), std::move(b), std::move(e),
                            std::move(f), p.lim_);
}

bool ConvexPolyhedron::contains(const VecQ& x) const {
    if (x.size() != dim_) throw DimensionError("ConvexPolyhedron::contains");
    for (Index i = 0; i < a_.rows(); ++i)
        if (a_.row(i).transpose().dot(x) > b_[i]) return false;
    for (Index i = 0; i < e_.rows(); ++i)
        if (e_.row(i).transpose().dot(x) != f_[i]) return false;
    return true;
}

bool ConvexPolyhedron::isEmpty() const {
    if (!empty_) empty_ = !feasiblePoint(dim_, a_, b_, e_, f_).has_value();
    return *empty_;
}

std::optional<VecQ> ConvexPolyhedron::somePoint() const {
    auto p = feasiblePoint(dim_, a_, b_, e_, f_);
    empty_ = !p.has_value();
    return p;
}

ConvexPolyhedron ConvexPolyhedron::intersect(
    const ConvexPolyhedron& other) const {
    if (other.dim_ != dim_) throw DimensionError("ConvexPolyhedron::intersect");
    return ConvexPolyhedron(dim_, stackRows(a_, other.a_), concat(b_, other.b_),
                            stackRows(e_, other.e_), concat(f_, other.f_),
                            lim_);
}

ConvexPolyhedron ConvexPolyhedron::liftFree(Index bigDim, Index offset) const {
    if (offset + dim_ > bigDim) throw DimensionError("liftFree");
    MatQ a = MatQ::Zero(a_.rows(), bigDim);
    a.block(0, offset, a_.rows(), dim_) = a_;
    MatQ e = MatQ::Zero(e_.rows(), bigDim);
    e.block(0, offset, e_.rows(), dim_) = e_;
    return ConvexPolyhedron(bigDim, std::move(a), b_, std::move(e), f_, lim_);
}

ConvexPolyhedron ConvexPolyhedron::embedded(
    Index bigDim, const std::vector<Index>& map) const {
    if (static_cast<Index>(map.size()) != dim_)
        throw DimensionError("embedded: map size mismatch");
    MatQ a = MatQ::Zero(a_.rows(), bigDim);
    MatQ e = MatQ::Zero(e_.rows(), bigDim);
    for (Index j = 0; j < dim_; ++j) {
        a.col(map[static_cast<size_t>(j)]) = a_.col(j);
        e.col(map[static_cast<size_t>(j)]) = e_.col(j);
    }
    return ConvexPolyhedron(bigDim, std::move(a), b_, std::move(e), f_, lim_);
}

ConvexPolyhedron ConvexPolyhedron::translated(const VecQ& t) const {
    if (t.size() != dim_) throw DimensionError("translated");
    return ConvexPolyhedron(dim_, a_, VecQ(b_ + a_ * t), e_, VecQ(f_ + e_ * t),
                            lim_);
}

ConvexPolyhedron ConvexPolyhedron::permuted(
    const std::vector<Index>& perm) const {
    if (static_cast<Index>(perm.size()) != dim_)
        throw DimensionError("permuted");
    MatQ a(a_.rows(), dim_), e(e_.rows(), dim_);
    for (Index j = 0; j < dim_; ++j) {
        a.col(j) = a_.col(perm[j]);
        e.col(j) = e_.col(perm[j]);
    }
    return ConvexPolyhedron(dim_, std::move(a), b_, std::move(e), f_, lim_);
}

ConvexPolyhedron ConvexPolyhedron::sliceFix(const std::vector<Index>& coords,
                                            const VecQ& values) const {
    if (static_cast<Index>(coords.size()) != values.size())
        throw DimensionError("sliceFix: value count mismatch");
    std::vector<Index> rest;
    std::vector<bool> fixed(static_cast<size_t>(dim_), false);
    for (Index c : coords) fixed[static_cast<size_t>(c)] = true;
    for (Index j = 0; j < dim_; ++j)
        if (!fixed[static_cast<size_t>(j)]) rest.push_back(j);
    Index nd = static_cast<Index>(rest.size());
    MatQ a(a_.rows(), nd), e(e_.rows(), nd);
    VecQ b = b_, f = f_;
    for (size_t k = 0; k < coords.size(); ++k) {
        b -= values[static_cast<Index>(k)] * a_.col(coords[k]);
        f -= values[static_cast<Index>(k)] * e_.col(coords[k]);
    }
    for (size_t j = 0; j < rest.size(); ++j) {
        a.col(static_cast<Index>(j)) = a_.col(rest[j]);
        e.col(static_cast<Index>(j)) = e_.col(rest[j]);
    }
    return ConvexPolyhedron(nd, std::move(a), std::move(b), std::move(e),
                            std::move(f), lim_);
}

namespace {

struct RowSystem {
    std::vector<VecQ> ineq;  // (a | b)
    std::vector<VecQ> eq;    // (e | f)
    Index dim;
};

void dedupeRows(std::vector<VecQ>& rows) {
    std::sort(rows.begin(), rows.end(),
              [](const VecQ& x, const VecQ& y) { return lexCompare(x, y) < 0; });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const VecQ& x, const VecQ& y) {
                               return lexCompare(x, y) == 0;
                           }),
               rows.end());
}

// Eliminates column `col` in place; rows carry the rhs as the last entry.
void eliminateColumn(RowSystem& sys, Index col) {
    const Index w = sys.dim + 1;
    // prefer an equality pivot
    Index pivotEq = -1;
    for (size_t i = 0; i < sys.eq.size(); ++i) {
        if (sys.eq[i][col] != 0) {
            pivotEq = static_cast<Index>(i);
            break;
        }
    }
    auto dropCol = [&](const VecQ& row) {
        VecQ out(w - 1);
        Index t = 0;
        for (Index j = 0; j < w; ++j) {
            if (j == col) continue;
            out[t++] = row[j];
        }
        return out;
    };
    std::vector<VecQ> nIneq, nEq;
    if (pivotEq >= 0) {
        VecQ pivot = sys.eq[static_cast<size_t>(pivotEq)];
        Rational pc = pivot[col];
        for (size_t i = 0; i < sys.eq.size(); ++i) {
            if (static_cast<Index>(i) == pivotEq) continue;
            VecQ r = sys.eq[i];
            if (r[col] != 0) r -= (r[col] / pc) * pivot;
            nEq.push_back(dropCol(r));
        }
        for (const VecQ& rr : sys.ineq) {
            VecQ r = rr;
            if (r[col] != 0) r -= (r[col] / pc) * pivot;
            nIneq.push_back(dropCol(r));
        }
    } else {
        std::vector<const VecQ*> pos, neg, zero;
        for (const VecQ& r : sys.ineq) {
            if (r[col] > 0)
                pos.push_back(&r);
            else if (r[col] < 0)
                neg.push_back(&r);
            else
                zero.push_back(&r);
        }
        for (const VecQ* r : zero) nIneq.push_back(dropCol(*r));
        for (const VecQ* p : pos) {
            for (const VecQ* n : neg) {
                VecQ combined = (-(*n)[col]) * (*p) + (*p)[col] * (*n);
                nIneq.push_back(dropCol(combined));
            }
        }
        for (const VecQ& r : sys.eq) nEq.push_back(dropCol(r));
    }
    sys.ineq = std::move(nIneq);
    sys.eq = std::move(nEq);
    sys.dim -= 1;
    // normalize rows, drop trivial
    std::vector<VecQ> keptIneq;
    for (VecQ& r : sys.ineq) {
        VecQ head = r.head(sys.dim);
        if (isZero(head)) {
            if (r[sys.dim] < 0) {
                VecQ marker = VecQ::Zero(sys.dim + 1);
                marker[sys.dim] = -1;
                keptIneq.push_back(std::move(marker));
            }
            continue;
        }
        keptIneq.push_back(primitive(r));
    }
    dedupeRows(keptIneq);
    sys.ineq = std::move(keptIneq);
    std::vector<VecQ> keptEq;
    for (VecQ& r : sys.eq) {
        VecQ head = r.head(sys.dim);
        if (isZero(head)) {
            if (r[sys.dim] != 0) {
                VecQ marker = VecQ::Zero(sys.dim + 1);
                marker[sys.dim] = -1;
                sys.ineq.push_back(std::move(marker));
            }
            continue;
        }
        keptEq.push_back(primitiveSigned(r));
    }
    dedupeRows(keptEq);
    sys.eq = std::move(keptEq);
}

}  // namespace

ConvexPolyhedron ConvexPolyhedron::eliminateKeep(const std::vector<Index>& keep,
                                                 bool prune) const {
    std::vector<bool> keepMask(static_cast<size_t>(dim_), false);
    for (Index k : keep) {
        if (k < 0 || k >= dim_) throw DimensionError("eliminateKeep: index");
        keepMask[static_cast<size_t>(k)] = true;
    }
    RowSystem sys;
    sys.dim = dim_;
    for (Index i = 0; i < a_.rows(); ++i) {
        VecQ r(dim_ + 1);
        r.head(dim_) = a_.row(i).transpose();
        r[dim_] = b_[i];
        sys.ineq.push_back(std::move(r));
    }
    for (Index i = 0; i < e_.rows(); ++i) {
        VecQ r(dim_ + 1);
        r.head(dim_) = e_.row(i).transpose();
        r[dim_] = f_[i];
        sys.eq.push_back(std::move(r));
    }
    std::vector<Index> labels(static_cast<size_t>(dim_));
    for (Index j = 0; j < dim_; ++j) labels[static_cast<size_t>(j)] = j;

    while (true) {
        // choose next column to eliminate: prefer equality pivots, then
        // fewest pos*neg products
        Index chosen = -1;
        bool chosenEq = false;
        long chosenCost = 0;
        for (Index j = 0; j < sys.dim; ++j) {
            if (keepMask[static_cast<size_t>(labels[static_cast<size_t>(j)])])
                continue;
            bool hasEq = false;
            for (const VecQ& r : sys.eq)
                if (r[j] != 0) {
                    hasEq = true;
                    break;
                }
            long pos = 0, neg = 0;
            for (const VecQ& r : sys.ineq) {
                if (r[j] > 0) ++pos;
                if (r[j] < 0) ++neg;
            }
            long cost = hasEq ? -1 : pos * neg - (pos + neg);
            if (chosen < 0 || (hasEq && !chosenEq) ||
                (hasEq == chosenEq && cost < chosenCost)) {
                chosen = j;
                chosenEq = hasEq;
                chosenCost = cost;
            }
        }
        if (chosen < 0) break;
        eliminateColumn(sys, chosen);
        labels.erase(labels.begin() + chosen);
        if (static_cast<long>(sys.ineq.size()) > lim_.enumerationBudget)
            throw BudgetError("elimination blowup");
    }

    // reorder remaining columns to ascending original index
    std::vector<size_t> order(labels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return labels[x] < labels[y]; });
    Index nd = static_cast<Index>(labels.size());
    MatQ a(static_cast<Index>(sys.ineq.size()), nd);
    VecQ b(static_cast<Index>(sys.ineq.size()));
    for (size_t i = 0; i < sys.ineq.size(); ++i) {
        for (Index j = 0; j < nd; ++j)
            a(static_cast<Index>(i), j) = sys.ineq[i][static_cast<Index>(order[static_cast<size_t>(j)])];
        b[static_cast<Index>(i)] = sys.ineq[i][nd];
    }
    MatQ e(static_cast<Index>(sys.eq.size()), nd);
    VecQ f(static_cast<Index>(sys.eq.size()));
    for (size_t i = 0; i < sys.eq.size(); ++i) {
        for (Index j = 0; j < nd; ++j)
            e(static_cast<Index>(i), j) = sys.eq[i][static_cast<Index>(order[static_cast<size_t>(j)])];
        f[static_cast<Index>(i)] = sys.eq[i][nd];
    }
    ConvexPolyhedron out(nd, std::move(a), std::move(b), std::move(e),
                         std::move(f), lim_);
    return prune ? out.pruned() : out;
}

LPResult ConvexPolyhedron::support(const VecQ& c) const {
    return solveLP(c, a_, b_, e_, f_);
}

std::optional<ConvexPolyhedron::DistResult> ConvexPolyhedron::distanceSq(
    const VecQ& p) const {
    if (p.size() != dim_) throw DimensionError("distanceSq");
    if (isEmpty()) return std::nullopt;
    // minimal equality system (the stored one may carry dependent rows)
    MatQ eMin(0, dim_);
    VecQ fMin(0);
    if (e_.rows() > 0) {
        MatQ aug(e_.rows(), dim_ + 1);
        aug.leftCols(dim_) = e_;
        aug.col(dim_) = f_;
        Rref rr = rowReduce(std::move(aug));
        eMin = MatQ(rr.rank, dim_);
        fMin = VecQ(rr.rank);
        for (int i = 0; i < rr.rank; ++i) {
            eMin.row(i) = rr.R.row(i).head(dim_);
            fMin[i] = rr.R(i, dim_);
        }
    }
    DistResult result;
    bool found = false;
    Rational best;
    // enumerate independent active sets: all equalities plus a subset of
    // inequalities
    std::vector<Index> current;
    long visited = 0;
    std::function<void(Index)> rec = [&](Index start) {
        if (++visited > lim_.enumerationBudget)
            throw BudgetError("distance face enumeration");
        MatQ rows(eMin.rows() + static_cast<Index>(current.size()), dim_);
        VecQ rhs(rows.rows());
        rows.topRows(eMin.rows()) = eMin;
        rhs.head(eMin.rows()) = fMin;
        for (size_t k = 0; k < current.size(); ++k) {
            rows.row(eMin.rows() + static_cast<Index>(k)) = a_.row(current[k]);
            rhs[eMin.rows() + static_cast<Index>(k)] = b_[current[k]];
        }
        if (rankOf(rows) == rows.rows()) {
            do {
                if (rows.rows() == 0) {
                    if (contains(p)) {
                        result.distSq = Rational(0);
                        result.closest = p;
                        found = true;
                        best = Rational(0);
                    }
                    break;
                }
                MatQ gram = rows * rows.transpose();
                auto mu = solveLinear(gram, VecQ(rows * p - rhs));
                if (!mu) break;
                // multipliers for inequality rows must be nonnegative:
                // x = p - rows^T mu, p - x = rows^T mu
                bool ok = true;
                for (size_t k = 0; k < current.size(); ++k) {
                    if ((*mu)[eMin.rows() + static_cast<Index>(k)] < 0) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
                VecQ x = p - rows.transpose() * (*mu);
                if (!contains(x)) break;
                Rational d = squaredNorm(VecQ(x - p));
                if (!found || d < best) {
                    best = d;
                    result.distSq = d;
                    result.closest = x;
                    found = true;
                }
            } while (false);
        } else {
            return;  // dependent set; supersets also dependent-prone, skip
        }
        if (static_cast<Index>(current.size()) >= dim_) return;
        for (Index i = start; i < a_.rows(); ++i) {
            current.push_back(i);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
    if (!found) throw Error("distanceSq: no KKT face found (internal)");
    return result;
}

PolyCone ConvexPolyhedron::tangentConeAt(const VecQ& x) const {
    if (!contains(x)) throw Error("tangentConeAt: point not in polyhedron");
    std::vector<VecQ> rows;
    for (Index i = 0; i < a_.rows(); ++i) {
        if (a_.row(i).transpose().dot(x) == b_[i])
            rows.push_back(a_.row(i).transpose());
    }
    for (Index i = 0; i < e_.rows(); ++i) {
        rows.push_back(e_.row(i).transpose());
        rows.push_back(-e_.row(i).transpose());
    }
    return PolyCone::fromHalfspaces(dim_, matFromRows(rows, dim_), lim_);
}

std::optional<Rational> ConvexPolyhedron::inactiveSlackSq(const VecQ& x) const {
    std::optional<Rational> best;
    for (Index i = 0; i < a_.rows(); ++i) {
        Rational slack = b_[i] - a_.row(i).transpose().dot(x);
        if (slack > 0) {
            Rational s2 = slack * slack / squaredNorm(VecQ(a_.row(i).transpose()));
            if (!best || s2 < *best) best = s2;
        }
    }
    return best;
}

ConvexPolyhedron::VRep ConvexPolyhedron::vrep() const {
    Limits lifted = lim_;
    lifted.dimCap = std::max(lifted.dimCap, static_cast<int>(dim_) + 1);
    // homogenization cone in dim+1
    std::vector<VecQ> rows;
    for (Index i = 0; i < a_.rows(); ++i) {
        VecQ r(dim_ + 1);
        r.head(dim_) = a_.row(i).transpose();
        r[dim_] = -b_[i];
        rows.push_back(std::move(r));
    }
    for (Index i = 0; i < e_.rows(); ++i) {
        VecQ r(dim_ + 1);
        r.head(dim_) = e_.row(i).transpose();
        r[dim_] = -f_[i];
        rows.push_back(r);
        rows.push_back(-r);
    }
    VecQ tRow = VecQ::Zero(dim_ + 1);
    tRow[dim_] = -1;
    rows.push_back(std::move(tRow));
    MatQ gens = doubleDescription(dim_ + 1, matFromRows(rows, dim_ + 1), lifted);
    std::vector<VecQ> verts, rays;
    for (Index i = 0; i < gens.rows(); ++i) {
        VecQ g = gens.row(i).transpose();
        Rational t = g[dim_];
        if (t > 0) {
            verts.push_back(VecQ(g.head(dim_) / t));
        } else if (t == 0) {
            VecQ ray = g.head(dim_);
            if (!isZero(ray)) rays.push_back(primitive(ray));
        }
    }
    VRep out;
    out.vertices = matFromRows(verts, dim_);
    out.rays = matFromRows(rays, dim_);
    return out;
}

bool ConvexPolyhedron::includedIn(const ConvexPolyhedron& other) const {
    if (other.dim_ != dim_) throw DimensionError("includedIn");
    if (isEmpty()) return true;
    for (Index i = 0; i < other.a_.rows(); ++i) {
        LPResult r = support(VecQ(other.a_.row(i).transpose()));
        if (r.status == LPStatus::Unbounded) return false;
        if (r.status == LPStatus::Optimal && r.value > other.b_[i]) return false;
    }
    for (Index i = 0; i < other.e_.rows(); ++i) {
        VecQ c = other.e_.row(i).transpose();
        LPResult hi = support(c);
        if (hi.status != LPStatus::Optimal || hi.value != other.f_[i])
            return false;
        LPResult lo = support(VecQ(-c));
        if (lo.status != LPStatus::Optimal || -lo.value != other.f_[i])
            return false;
    }
    return true;
}

bool ConvexPolyhedron::setEquals(const ConvexPolyhedron& other) const {
    return includedIn(other) && other.includedIn(*this);
}

ConvexPolyhedron ConvexPolyhedron::pruned() const {
    if (isEmpty()) {
        // canonical empty representation
        MatQ a = MatQ::Zero(1, dim_);
        VecQ b(1);
        b[0] = -1;
        ConvexPolyhedron out(dim_, std::move(a), std::move(b), MatQ(0, dim_),
                             VecQ(0), lim_);
        out.empty_ = true;
        return out;
    }
    // minimal equality system
    MatQ eAug(e_.rows(), dim_ + 1);
    if (e_.rows() > 0) {
        eAug.leftCols(dim_) = e_;
        eAug.col(dim_) = f_;
    }
    Rref rr = rowReduce(eAug);
    std::vector<VecQ> eqRows;
    for (int i = 0; i < rr.rank; ++i)
        eqRows.push_back(rr.R.row(i).transpose());
    MatQ e(static_cast<Index>(eqRows.size()), dim_);
    VecQ f(static_cast<Index>(eqRows.size()));
    for (size_t i = 0; i < eqRows.size(); ++i) {
        e.row(static_cast<Index>(i)) = eqRows[i].head(dim_).transpose();
        f[static_cast<Index>(i)] = eqRows[i][dim_];
    }
    // drop redundant inequalities one at a time
    std::vector<bool> keep(static_cast<size_t>(a_.rows()), true);
    for (Index i = 0; i < a_.rows(); ++i) {
        std::vector<VecQ> rows;
        std::vector<Rational> rhs;
        for (Index j = 0; j < a_.rows(); ++j) {
            if (j == i || !keep[static_cast<size_t>(j)]) continue;
            rows.push_back(a_.row(j).transpose());
            rhs.push_back(b_[j]);
        }
        MatQ restA = matFromRows(rows, dim_);
        VecQ restB(static_cast<Index>(rhs.size()));
        for (size_t k = 0; k < rhs.size(); ++k)
            restB[static_cast<Index>(k)] = rhs[k];
        LPResult r = solveLP(VecQ(a_.row(i).transpose()), restA, restB, e, f);
        if (r.status == LPStatus::Optimal && r.value <= b_[i])
            keep[static_cast<size_t>(i)] = false;
    }
    std::vector<VecQ> rows;
    std::vector<Rational> rhs;
    for (Index i = 0; i < a_.rows(); ++i) {
        if (keep[static_cast<size_t>(i)]) {
            rows.push_back(a_.row(i).transpose());
            rhs.push_back(b_[i]);
        }
    }
    MatQ a = matFromRows(rows, dim_);
    VecQ b(static_cast<Index>(rhs.size()));
    for (size_t k = 0; k < rhs.size(); ++k) b[static_cast<Index>(k)] = rhs[k];
    ConvexPolyhedron out(dim_, std::move(a), std::move(b), std::move(e),
                         std::move(f), lim_);
    out.empty_ = false;
    return out;
}

std::string ConvexPolyhedron::describe() const {
    std::ostringstream os;
    os << "{dim " << dim_ << "; " << a_.rows() << " ineq, " << e_.rows()
       << " eq}";
    return os.str();
}

}  // namespace relip
