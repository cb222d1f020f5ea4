#pragma once

#include "relip/rational.hpp"

namespace relip {

struct Rref {
    MatQ R;
    std::vector<Index> pivotCols;
    int rank = 0;
};

// Reduced row echelon form with first-nonzero pivoting (exact field, no
// magnitude concerns).
Rref rowReduce(MatQ a);

int rankOf(const MatQ& a);

Rational determinant(MatQ a);

// One solution of A x = b, if any.
std::optional<VecQ> solveLinear(const MatQ& a, const VecQ& b);

// Columns span the kernel of A.
MatQ nullspaceBasis(const MatQ& a);

// Orthogonal projection of p onto the affine set {x : A x = b}; nullopt when
// the set is empty.
std::optional<VecQ> projectOntoAffine(const VecQ& p, const MatQ& a,
                                      const VecQ& b);

// Coefficients mu with r = A^T mu when r lies in the row space of A.
std::optional<VecQ> rowSpaceCoefficients(const MatQ& a, const VecQ& r);

MatQ stackRows(const MatQ& top, const MatQ& bottom);

MatQ matFromRows(const std::vector<VecQ>& rows, Index cols);

std::vector<VecQ> rowsOf(const MatQ& m);

}  // namespace relip
