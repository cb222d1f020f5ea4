#pragma once

#include "relip/linalg.hpp"

#include <functional>

namespace relip {

// Convex polyhedral cone {d : H d <= 0} containing the origin. Keeps both
// descriptions; either may be materialized lazily through the double
// description method (lineality exported as +/- generator pairs).
class PolyCone {
  public:
    PolyCone() : dim_(0) {}

    static PolyCone fromHalfspaces(Index dim, MatQ h,
                                   const Limits& lim = Limits{});
    static PolyCone fromGenerators(Index dim, MatQ gens,
                                   const Limits& lim = Limits{});
    static PolyCone fullSpace(Index dim, const Limits& lim = Limits{});
    static PolyCone zeroCone(Index dim, const Limits& lim = Limits{});

    Index dim() const { return dim_; }
    const Limits& limits() const { return lim_; }

    const MatQ& halfspaces() const;  // materializes if needed
    const MatQ& generators() const;  // materializes if needed
    bool hasHalfspaces() const { return h_.has_value(); }
    bool hasGenerators() const { return gens_.has_value(); }

    bool contains(const VecQ& d) const;
    bool containsCone(const PolyCone& other) const;
    bool isTrivial() const;  // equals {0}
    bool isFullSpace() const;

    PolyCone polar() const;
    PolyCone intersect(const PolyCone& other) const;

    // Euclidean projection onto the cone and its exact squared norm.
    struct Projection {
        VecQ point;
        Rational normSq;
    };
    Projection project(const VecQ& v) const;

    // {d in R^bigDim : (d[offset..offset+dim)) in this}, other coords free.
    PolyCone liftFree(Index bigDim, Index offset) const;
    // {d in R^bigDim : (d[map[0]], ..., d[map[dim-1]]) in this}
    PolyCone embedded(Index bigDim, const std::vector<Index>& map) const;
    PolyCone permuted(const std::vector<Index>& perm) const;  // d' = d(perm)
    PolyCone negated(const std::vector<bool>& flip) const;
    // Preimage under linear map w -> L w (L maps R^newDim to R^dim).
    PolyCone preimage(const MatQ& l) const;

    void canonicalize() const;
    bool setEquals(const PolyCone& other) const;

    // Deterministic key for sorting/deduplication of pieces.
    std::string canonicalKey() const;

  private:
    Index dim_;
    Limits lim_;
    mutable std::optional<MatQ> h_;
    mutable std::optional<MatQ> gens_;
};

// Rows of generator matrix for cone {d : H d <= 0}. Lineality is returned as
// +/- pairs. Rows are primitive and lexicographically sorted.
MatQ doubleDescription(Index dim, const MatQ& h, const Limits& lim);

// Canonicalize a zero-offset constraint matrix: primitive rows, dedupe, sort.
MatQ canonicalRows(const MatQ& h);

// Finite union of polyhedral cones sharing a dimension.
struct ConeUnion {
    Index dim = 0;
    std::vector<PolyCone> pieces;

    static ConeUnion single(PolyCone c);
    static ConeUnion zero(Index dim);

    bool member(const VecQ& d) const;
    void canonicalize();
    bool isTrivial() const;
};

struct SupportValue {
    Rational sq;       // max over pieces of |proj|^2
    bool nonpositive;  // sup over unit directions of <v,d> is <= 0
};

// Realizes sup_{d in U, |d|<=1} <v,d> through exact cone projections.
SupportValue supportOnBall(const ConeUnion& u, const VecQ& v);

bool coneUnionIncluded(const ConeUnion& a, const ConeUnion& b);

bool coneUnionEquals(const ConeUnion& a, const ConeUnion& b);

// Witness ray in a \ b when inclusion fails.
std::optional<VecQ> coneUnionWitness(const ConeUnion& a, const ConeUnion& b);

}  // namespace relip
