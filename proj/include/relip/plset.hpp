#pragma once

#include "relip/polyhedron.hpp"

namespace relip {

// Closed finite union of convex polyhedra sharing a dimension.
struct PLSet {
    Index dim = 0;
    std::vector<ConvexPolyhedron> pieces;

    static PLSet single(ConvexPolyhedron p);
    static PLSet fullSpace(Index dim, const Limits& lim = Limits{});

    bool contains(const VecQ& x) const;
    bool isEmpty() const;
    // min over nonempty pieces; nullopt when the set is empty
    std::optional<ConvexPolyhedron::DistResult> distanceSq(const VecQ& p) const;
    PLSet dropEmptyPieces() const;
    PLSet intersectWith(const ConvexPolyhedron& p) const;
    PLSet translated(const VecQ& t) const;
};

// Exact inclusion of finite unions of polyhedra (recursive halfspace
// splitting; convexity makes the closure bookkeeping exact).
bool plsetIncluded(const PLSet& a, const PLSet& b);
bool plsetEquals(const PLSet& a, const PLSet& b);

// Convex hull of the union through vertex/ray enumeration; throws on an
// empty set, refuses beyond the dimension cap.
ConvexPolyhedron convexHull(const PLSet& s);

// Within the ball of radius `radius` around `base`, the set equals
// base + tangent. radius is a positive rational chosen strictly below half
// the nearest structural slack.
struct LocalConeModel {
    VecQ base;
    ConeUnion tangent;
    Rational radius;
    bool radiusUnbounded = false;  // set is conical around base at any scale
};

LocalConeModel contingentCone(const PLSet& s, const VecQ& x);

inline VecQ dualityMap(const VecQ& v) { return v; }

bool epsRegularNormalMember(const PLSet& s, const VecQ& x, const VecQ& v,
                            const Rational& eps);

bool epsNormalSetMember(const PLSet& s, const VecQ& x, const VecQ& v,
                        const Rational& eps);

PolyCone regularNormalCone(const PLSet& s, const VecQ& x);
PolyCone regularNormalConeOfModel(const LocalConeModel& model);

struct JtStability {
    Rational delta;
    bool unbounded = false;  // any radius works
    int strataChecked = 0;
};

// Radius below which the tangent cone of a convex polyhedron can only grow:
// T(xbar; Omega) is contained in T(x; Omega) for all x in Omega within delta.
// Verified exactly on the face strata reachable near xbar.
JtStability jtStabilityCheck(const ConvexPolyhedron& omega, const VecQ& xbar,
                             const Rational& eps);

}  // namespace relip
