#pragma once

#include "relip/multifunction.hpp"
#include "relip/realroots.hpp"

namespace relip {

enum class CoderivativeKind { LimitingNormal, LimitingMixed, Mirror };

// Dual-space graph stored in applied coordinates (u*, v*): u* belongs to the
// value at v*. The defining pairs carry (u*, -v*); the sign flip lives at
// this module's boundary only.
struct CoderivativeGraph {
    Index inDim = 0;   // dual of the input space (u* block, first)
    Index outDim = 0;  // dual of the output space (v* block, second)
    CoderivativeKind kind = CoderivativeKind::LimitingMixed;
    ConeUnion pieces;
    std::string note;
};

struct Stratum {
    VecQ point;                 // representative on the restricted graph
    VecQ direction;             // cell direction from the base point
    LocalConeModel graphModel;  // local structure of gph S|_Omega there
    PolyCone omegaTangent;      // tangent of Omega at the x-part
    bool isBase = false;
    bool adheresToBase = true;  // conical cells always adhere
};

struct StratumCatalog {
    VecQ base;
    Rational delta;     // effective radius actually used
    bool deltaShrunk = false;
    std::vector<Stratum> strata;
};

// Finitely many constant-structure cells of the restricted graph around the
// base point; every cell adheres to it.
StratumCatalog stratify(const ConstrainedPoint& pt, const Rational& delta);

// Relaxed dual pair test at the base point itself:
// (x*, -y*) is an eps-relaxed regular normal of gph S|_Omega and x* is
// tangent to Omega at xbar.
bool epsConicCoderivativeMember(const ConstrainedPoint& pt, const VecQ& xstar,
                                const VecQ& ystar, const Rational& eps);

// Limit of the relaxed coderivatives along graph points and vanishing
// relaxation; the per-cell collapse is exact for polyhedral data. The
// normal and mixed variants coincide here and the construction checks that.
CoderivativeGraph limitingCoderivative(const ConstrainedPoint& pt,
                                       CoderivativeKind kind);

// Value of the dual graph at v*: a union of polyhedra in u*-space (an affine
// slice of the cone pieces, conic only at v* = 0).
PLSet applyCoderivative(const CoderivativeGraph& d, const VecQ& vstar);

// Slice at v* = 0 stays conic.
ConeUnion coderivativeKernel(const CoderivativeGraph& d);

struct NormResult {
    bool unbounded = false;
    bool exact = true;
    Rational sq;                        // exact squared norm when exact
    std::pair<Rational, Rational> bounds;  // certified when not exact
};

// sup{|u*| : u* in D(v*), |v*| <= 1} piece by piece: exact quadratic
// optimization over faces (pencil eigenstructure), +inf flag when a piece
// carries (u*, 0) rays with u* != 0.
NormResult coderivativeNorm(const CoderivativeGraph& d);

// Same construction for the output-constrained mapping x => S(x) ∩ Theta,
// with the tangent condition placed on the output coordinate: the defining
// pairs (u*, -v*) satisfy -v* tangent to Theta at the value part.
CoderivativeGraph mirrorCoderivative(const PLMultifunction& s,
                                     const PLSet& theta, const VecQ& xbar,
                                     const VecQ& ybar);

struct NormalityVerdict {
    bool value = true;
    std::string note;
};

// Norm agreement of the two limiting variants; the graphs are built by the
// same collapse and the check fails loudly if they ever diverge.
NormalityVerdict coderivativeNormalityCheck(const ConstrainedPoint& pt);

// Dual sequential compactness holds automatically in finite dimensions.
NormalityVerdict psncVerdict(const ConstrainedPoint& pt);

// Shared helper: cells of constant local structure around a base point of a
// piecewise-polyhedral set, returned as directions (zero = base cell).
std::vector<VecQ> localCellDirections(const LocalConeModel& model,
                                      const Limits& lim);

}  // namespace relip
