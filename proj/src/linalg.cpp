#include "relip/linalg.hpp"

namespace relip {

Rref rowReduce(MatQ a) {
    Rref out;
    const Index rows = a.rows(), cols = a.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index pivot = -1;
        for (Index i = r; i < rows; ++i) {
            if (a(i, c) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != r) a.row(pivot).swap(a.row(r));
        Rational inv = Rational(1) / a(r, c);
        a.row(r) *= inv;
        for (Index i = 0; i < rows; ++i) {
            if (i != r && a(i, c) != 0) a.row(i) -= a(i, c) * a.row(r);
        }
        out.pivotCols.push_back(c);
        ++r;
    }
    out.rank = static_cast<int>(r);
    out.R = std::move(a);
    return out;
}

int rankOf(const MatQ& a) { return rowReduce(a).rank; }

Rational determinant(MatQ a) {
    const Index n = a.rows();
    if (n != a.cols()) throw DimensionError("determinant: non-square");
    Rational det(1);
    for (Index c = 0; c < n; ++c) {
        Index pivot = -1;
        for (Index i = c; i < n; ++i) {
            if (a(i, c) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) return Rational(0);
        if (pivot != c) {
            a.row(pivot).swap(a.row(c));
            det = -det;
        }
        det *= a(c, c);
        Rational inv = Rational(1) / a(c, c);
        for (Index i = c + 1; i < n; ++i) {
            if (a(i, c) != 0) a.row(i) -= (a(i, c) * inv) * a.row(c);
        }
    }
    return det;
}

std::optional<VecQ> solveLinear(const MatQ& a, const VecQ& b) {
    if (a.rows() != b.size()) throw DimensionError("solveLinear: rows mismatch");
    MatQ aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    Rref rr = rowReduce(std::move(aug));
    VecQ x = VecQ::Zero(a.cols());
    for (size_t k = 0; k < rr.pivotCols.size(); ++k) {
        if (rr.pivotCols[k] == a.cols()) return std::nullopt;  // 0 = 1 row
        x[rr.pivotCols[k]] = rr.R(static_cast<Index>(k), a.cols());
    }
    return x;
}

MatQ nullspaceBasis(const MatQ& a) {
    Rref rr = rowReduce(a);
    const Index cols = a.cols();
    std::vector<Index> freeCols;
    {
        size_t p = 0;
        for (Index c = 0; c < cols; ++c) {
            if (p < rr.pivotCols.size() && rr.pivotCols[p] == c) {
                ++p;
            } else {
                freeCols.push_back(c);
            }
        }
    }
    MatQ basis = MatQ::Zero(cols, static_cast<Index>(freeCols.size()));
    for (size_t j = 0; j < freeCols.size(); ++j) {
        Index fc = freeCols[j];
        basis(fc, static_cast<Index>(j)) = 1;
        for (size_t k = 0; k < rr.pivotCols.size(); ++k) {
            basis(rr.pivotCols[k], static_cast<Index>(j)) =
                -rr.R(static_cast<Index>(k), fc);
        }
    }
    return basis;
}

std::optional<VecQ> projectOntoAffine(const VecQ& p, const MatQ& a,
                                      const VecQ& b) {
    if (a.rows() == 0) return p;
    MatQ gram = a * a.transpose();
    VecQ rhs = a * p - b;
    auto mu = solveLinear(gram, rhs);
    if (!mu) return std::nullopt;
    VecQ x = p - a.transpose() * (*mu);
    if (a * x != b) return std::nullopt;  // A x = b inconsistent
    return x;
}

std::optional<VecQ> rowSpaceCoefficients(const MatQ& a, const VecQ& r) {
    // solve A^T mu = r
    return solveLinear(MatQ(a.transpose()), r);
}

MatQ stackRows(const MatQ& top, const MatQ& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols())
        throw DimensionError("stackRows: column mismatch");
    MatQ out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

MatQ matFromRows(const std::vector<VecQ>& rows, Index cols) {
    MatQ out(static_cast<Index>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionError("matFromRows: row size mismatch");
        out.row(static_cast<Index>(i)) = rows[i].transpose();
    }
    return out;
}

std::vector<VecQ> rowsOf(const MatQ& m) {
    std::vector<VecQ> out;
    out.reserve(static_cast<size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
    return out;
}

}  // namespace relip
