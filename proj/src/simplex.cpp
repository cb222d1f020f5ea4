#include "relip/simplex.hpp"

#include <vector>

namespace relip {

namespace {

// Dense tableau simplex over the rationals. Structural variables are
// nonnegative; the caller has already split free variables.
class Tableau {
  public:
    Tableau(const MatQ& rows, const VecQ& rhs, Index structurals)
        : nStruct_(structurals), nRows_(rows.rows()) {
        nCols_ = nStruct_ + nRows_ + 2;  // + aux column + rhs
        auxCol_ = nStruct_ + nRows_;
        rhsCol_ = auxCol_ + 1;
        t_ = MatQ::Zero(nRows_, nCols_);
        t_.block(0, 0, nRows_, nStruct_) = rows;
        for (Index i = 0; i < nRows_; ++i) {
            t_(i, nStruct_ + i) = 1;
            t_(i, auxCol_) = -1;
            t_(i, rhsCol_) = rhs[i];
            basis_.push_back(nStruct_ + i);
        }
        auxBanned_ = false;
    }

    // Returns false when infeasible.
    bool phase1() {
        Index worst = -1;
        for (Index i = 0; i < nRows_; ++i) {
            if (t_(i, rhsCol_) < 0 && (worst < 0 || t_(i, rhsCol_) < t_(worst, rhsCol_)))
                worst = i;
        }
        if (worst < 0) {
            auxBanned_ = true;
            return true;
        }
        pivot(worst, auxCol_);
        VecQ obj = VecQ::Zero(nCols_ - 1);
        obj[auxCol_] = -1;
        runSimplex(obj);
        Rational auxValue(0);
        for (Index i = 0; i < nRows_; ++i)
            if (basis_[i] == auxCol_) auxValue = t_(i, rhsCol_);
        if (auxValue > 0) return false;
        // drive the aux variable out of the basis if needed
        for (Index i = 0; i < nRows_; ++i) {
            if (basis_[i] != auxCol_) continue;
            Index enter = -1;
            for (Index j = 0; j < auxCol_; ++j) {
                if (t_(i, j) != 0) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) {
                pivot(i, enter);
            } else {
                // redundant zero row; park the aux variable at zero
                basis_[i] = auxCol_;
            }
        }
        auxBanned_ = true;
        return true;
    }

    // Bland simplex for max obj.x; returns false on unboundedness.
    bool runSimplex(const VecQ& objCoeffs) {
        VecQ red = objCoeffs;
        for (Index i = 0; i < nRows_; ++i) {
            if (red[basis_[i]] != 0)
                red -= red[basis_[i]] * t_.row(i).head(nCols_ - 1).transpose();
        }
        while (true) {
            Index enter = -1;
            for (Index j = 0; j < nCols_ - 1; ++j) {
                if (auxBanned_ && j == auxCol_) continue;
                if (red[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            Index leave = -1;
            Rational bestRatio(0);
            for (Index i = 0; i < nRows_; ++i) {
                if (t_(i, enter) <= 0) continue;
                Rational ratio = t_(i, rhsCol_) / t_(i, enter);
                if (leave < 0 || ratio < bestRatio ||
                    (ratio == bestRatio && basis_[i] < basis_[leave])) {
                    leave = i;
                    bestRatio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
            if (red[enter] != 0)
                red -= red[enter] * t_.row(leave).head(nCols_ - 1).transpose();
        }
    }

    VecQ structuralValues() const {
        VecQ z = VecQ::Zero(nStruct_);
        for (Index i = 0; i < nRows_; ++i)
            if (basis_[i] < nStruct_) z[basis_[i]] = t_(i, rhsCol_);
        return z;
    }

  private:
    void pivot(Index r, Index s) {
        Rational inv = Rational(1) / t_(r, s);
        t_.row(r) *= inv;
        for (Index i = 0; i < nRows_; ++i) {
            if (i != r && t_(i, s) != 0) t_.row(i) -= t_(i, s) * t_.row(r);
        }
        basis_[r] = s;
    }

    Index nStruct_, nRows_, nCols_, auxCol_, rhsCol_;
    MatQ t_;
    std::vector<Index> basis_;
    bool auxBanned_;
};

}  // namespace

LPResult solveLP(const VecQ& c, const MatQ& a, const VecQ& b, const MatQ& e,
                 const VecQ& f) {
    const Index d = c.size();
    if ((a.rows() > 0 && a.cols() != d) || (e.rows() > 0 && e.cols() != d) ||
        a.rows() != b.size() || e.rows() != f.size())
        throw DimensionError("solveLP: dimension mismatch");

    const Index mA = a.rows(), mE = e.rows();
    const Index rows = mA + 2 * mE;
    const Index nv = 2 * d;  // x = u - v
    MatQ tab = MatQ::Zero(rows, nv);
    VecQ rhs = VecQ::Zero(rows);
    for (Index i = 0; i < mA; ++i) {
        for (Index j = 0; j < d; ++j) {
            tab(i, j) = a(i, j);
            tab(i, d + j) = -a(i, j);
        }
        rhs[i] = b[i];
    }
    for (Index i = 0; i < mE; ++i) {
        for (Index j = 0; j < d; ++j) {
            tab(mA + 2 * i, j) = e(i, j);
            tab(mA + 2 * i, d + j) = -e(i, j);
            tab(mA + 2 * i + 1, j) = -e(i, j);
            tab(mA + 2 * i + 1, d + j) = e(i, j);
        }
        rhs[mA + 2 * i] = f[i];
        rhs[mA + 2 * i + 1] = -f[i];
    }

    Tableau t(tab, rhs, nv);
    LPResult res;
    if (!t.phase1()) {
        res.status = LPStatus::Infeasible;
        return res;
    }
    VecQ obj = VecQ::Zero(nv + rows + 1);
    for (Index j = 0; j < d; ++j) {
        obj[j] = c[j];
        obj[d + j] = -c[j];
    }
    bool bounded = t.runSimplex(obj);
    VecQ z = t.structuralValues();
    VecQ x(d);
    for (Index j = 0; j < d; ++j) x[j] = z[j] - z[d + j];
    if (!bounded) {
        res.status = LPStatus::Unbounded;
        res.point = x;
        return res;
    }
    res.status = LPStatus::Optimal;
    res.point = x;
    res.value = c.dot(x);
    return res;
}

std::optional<VecQ> feasiblePoint(Index dim, const MatQ& a, const VecQ& b,
                                  const MatQ& e, const VecQ& f) {
    if (a.rows() == 0 && e.rows() == 0) return VecQ::Zero(dim);
    LPResult r = solveLP(VecQ::Zero(dim), a, b, e, f);
    if (r.status == LPStatus::Infeasible) return std::nullopt;
    return r.point;
}

}  // namespace relip
