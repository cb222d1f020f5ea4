#pragma once

#include "relip/cone.hpp"
#include "relip/simplex.hpp"

namespace relip {

// {x : A x <= b, E x = f} with exact rational data. Emptiness is decided by
// exact LP and cached after the first query.
class ConvexPolyhedron {
  public:
    ConvexPolyhedron() : dim_(0), a_(0, 0), e_(0, 0) {}
    ConvexPolyhedron(Index dim, MatQ a, VecQ b, MatQ e, VecQ f,
                     const Limits& lim = Limits{});

    static ConvexPolyhedron full(Index dim, const Limits& lim = Limits{});
    static ConvexPolyhedron fromInequalities(Index dim, MatQ a, VecQ b,
                                             const Limits& lim = Limits{});
    static ConvexPolyhedron singleton(const VecQ& x,
                                      const Limits& lim = Limits{});
    static ConvexPolyhedron box(const VecQ& center, const Rational& radius,
                                const Limits& lim = Limits{});
    static ConvexPolyhedron product(const ConvexPolyhedron& p,
                                    const ConvexPolyhedron& q);

    Index dim() const { return dim_; }
    const MatQ& ineqA() const { return a_; }
    const VecQ& ineqB() const { return b_; }
    const MatQ& eqE() const { return e_; }
    const VecQ& eqF() const { return f_; }
    const Limits& limits() const { return lim_; }

    bool contains(const VecQ& x) const;
    bool isEmpty() const;
    std::optional<VecQ> somePoint() const;

    ConvexPolyhedron intersect(const ConvexPolyhedron& other) const;
    // {y in R^bigDim : y[offset..offset+dim) in this}, other coords free
    ConvexPolyhedron liftFree(Index bigDim, Index offset) const;
    // {y in R^bigDim : (y[map[0]], ..., y[map[dim-1]]) in this}
    ConvexPolyhedron embedded(Index bigDim, const std::vector<Index>& map) const;
    ConvexPolyhedron translated(const VecQ& t) const;
    ConvexPolyhedron permuted(const std::vector<Index>& perm) const;

    // Substitutes fixed values for the listed coordinates (sorted unique);
    // result lives on the remaining coordinates in their original order.
    ConvexPolyhedron sliceFix(const std::vector<Index>& coords,
                              const VecQ& values) const;

    // Exact shadow on the kept coordinates (sorted unique). FM elimination
    // with redundancy pruning by exact LP.
    ConvexPolyhedron eliminateKeep(const std::vector<Index>& keep,
                                   bool prune = true) const;

    LPResult support(const VecQ& c) const;  // max c.x over the set

    struct DistResult {
        Rational distSq;
        VecQ closest;
    };
    std::optional<DistResult> distanceSq(const VecQ& p) const;

    // Exact tangent cone at a member point (active inequalities + equalities).
    PolyCone tangentConeAt(const VecQ& x) const;
    // Slack of the nearest inactive inequality at x, as squared distance
    // slack^2/|a|^2; nullopt when every inequality is active or none exist.
    std::optional<Rational> inactiveSlackSq(const VecQ& x) const;

    struct VRep {
        MatQ vertices;  // rows
        MatQ rays;      // rows
    };
    VRep vrep() const;

    bool includedIn(const ConvexPolyhedron& other) const;
    bool setEquals(const ConvexPolyhedron& other) const;

    ConvexPolyhedron pruned() const;  // canonical, redundancy-free

    std::string describe() const;

  private:
    Index dim_;
    MatQ a_;
    VecQ b_;
    MatQ e_;
    VecQ f_;
    Limits lim_;
    mutable std::optional<bool> empty_;

    void normalizeRows();
};

}  // namespace relip
