#pragma once

#include "relip/plset.hpp"

#include <functional>

namespace relip {

// Set-valued map given by its graph, a finite union of convex polyhedra in
// the product of input and output coordinates (inputs first).
struct PLMultifunction {
    Index inDim = 0;
    Index outDim = 0;
    PLSet graph;

    static PLMultifunction identity(Index dim, const Limits& lim = Limits{});
    static PLMultifunction linear(const MatQ& m, const Limits& lim = Limits{});
    static PLMultifunction constant(Index inDim, const VecQ& value,
                                    const Limits& lim = Limits{});
    static PLMultifunction fromGraph(Index inDim, Index outDim, PLSet graph);
};

struct ConstrainedPoint {
    PLMultifunction mapping;
    ConvexPolyhedron omega;
    VecQ x;
    VecQ y;

    ConstrainedPoint(PLMultifunction s, ConvexPolyhedron om, VecQ x_, VecQ y_);
    VecQ pair() const { return concat(x, y); }
};

PLMultifunction restrict(const PLMultifunction& s,
                         const ConvexPolyhedron& omega);
// Intersects values with theta: x => S(x) ∩ theta.
PLMultifunction restrictOutputs(const PLMultifunction& s, const PLSet& theta);
PLMultifunction invert(const PLMultifunction& s);
PLMultifunction sum(const PLMultifunction& s1, const PLMultifunction& s2);
PLMultifunction compose(const PLMultifunction& s1, const PLMultifunction& s2);
PLSet evaluate(const PLMultifunction& s, const VecQ& x);
PLSet domain(const PLMultifunction& s);

// {y : (x, y) in gph S1, (y, z) in gph S2}
PLSet chainIntermediate(const PLMultifunction& s1, const PLMultifunction& s2,
                        const VecQ& x, const VecQ& z);

// {(y1, y2) : y1 in S1(x), y2 in S2(x), y1 + y2 = y}
PLSet sumIntermediate(const PLMultifunction& s1, const PLMultifunction& s2,
                      const VecQ& x, const VecQ& y);

struct ProbeResult {
    bool inner = false;
    bool emptySliceSeen = false;
    Rational worstSlopeSq;  // max dist^2 / |x - base|^2 over the grid
    long samples = 0;
};

// Grid probe of inner semicontinuity of a slice provider relative to a
// constraint set: measures how far the designated value drifts from the
// slices at nearby feasible grid points. Numerical evidence, not a proof.
ProbeResult innerSemicontinuityProbe(
    const std::function<PLSet(const VecQ&)>& slices,
    const ConvexPolyhedron& constraintSet, const VecQ& baseInput,
    const VecQ& designatedValue, const Rational& gridStep,
    const Rational& radius, const Limits& lim = Limits{});

// Enumerates lattice points center + step * k, |k_i * step| <= radius.
void forEachLatticePoint(const VecQ& center, const Rational& radius,
                         const Rational& step, long budget,
                         const std::function<void(const VecQ&)>& f);

}  // namespace relip
