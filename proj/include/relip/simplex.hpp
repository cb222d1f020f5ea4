#pragma once

#include "relip/rational.hpp"

namespace relip {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;  // objective value when Optimal
    VecQ point;      // a maximizer (Optimal) or feasible point
};

// maximize c.x  subject to  A x <= b,  E x = f,  x free.
// Exact rational simplex, Bland pivoting (no cycling).
LPResult solveLP(const VecQ& c, const MatQ& a, const VecQ& b, const MatQ& e,
                 const VecQ& f);

std::optional<VecQ> feasiblePoint(Index dim, const MatQ& a, const VecQ& b,
                                  const MatQ& e, const VecQ& f);

}  // namespace relip
