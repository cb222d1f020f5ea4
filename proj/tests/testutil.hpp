#pragma once

#include "relip/polyhedron.hpp"

#include <random>

namespace relip::testutil {

inline Rational q(long num, long den = 1) { return makeRational(num, den); }

inline VecQ vec(std::initializer_list<Rational> xs) {
    VecQ v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (const auto& x : xs) v[i++] = x;
    return v;
}

inline VecQ vecl(std::initializer_list<long> xs) {
    VecQ v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (long x : xs) v[i++] = Rational(x);
    return v;
}

inline MatQ mat(Index rows, Index cols, std::initializer_list<long> xs) {
    MatQ m(rows, cols);
    auto it = xs.begin();
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
    return m;
}

// Deterministic rational fuzz source.
class Rng {
  public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(gen_);
    }

    Rational rational(long span = 6, long maxDen = 5) {
        return makeRational(integer(-span, span), integer(1, maxDen));
    }

    VecQ vector(Index dim, long span = 6, long maxDen = 5) {
        VecQ v(dim);
        for (Index i = 0; i < dim; ++i) v[i] = rational(span, maxDen);
        return v;
    }

  private:
    std::mt19937 gen_;
};

// graph of the identity restricted to [0,1]: {(t,t) : t in [0,1]}
inline ConvexPolyhedron diagonalSegment() {
    MatQ a(2, 2);
    a << Rational(-1), Rational(0), Rational(1), Rational(0);
    VecQ b(2);
    b[0] = Rational(0);
    b[1] = Rational(1);
    MatQ e(1, 2);
    e << Rational(1), Rational(-1);
    VecQ f(1);
    f[0] = Rational(0);
    return ConvexPolyhedron(2, a, b, e, f);
}

// graph {(x,y) : x = |y|, x <= 1} as two polyhedral branches
inline std::vector<ConvexPolyhedron> absValueGraphPieces() {
    std::vector<ConvexPolyhedron> pieces;
    {
        MatQ a(2, 2);
        a << Rational(0), Rational(-1), Rational(1), Rational(0);
        VecQ b(2);
        b[0] = Rational(0);
        b[1] = Rational(1);
        MatQ e(1, 2);
        e << Rational(1), Rational(-1);
        VecQ f(1);
        f[0] = Rational(0);
        pieces.emplace_back(2, a, b, e, f);
    }
    {
        MatQ a(2, 2);
        a << Rational(0), Rational(1), Rational(1), Rational(0);
        VecQ b(2);
        b[0] = Rational(0);
        b[1] = Rational(1);
        MatQ e(1, 2);
        e << Rational(1), Rational(1);
        VecQ f(1);
        f[0] = Rational(0);
        pieces.emplace_back(2, a, b, e, f);
    }
    return pieces;
}

// interval [lo, hi] in 1-D
inline ConvexPolyhedron interval(const Rational& lo, const Rational& hi) {
    MatQ a(2, 1);
    a(0, 0) = Rational(-1);
    a(1, 0) = Rational(1);
    VecQ b(2);
    b[0] = -lo;
    b[1] = hi;
    return ConvexPolyhedron::fromInequalities(1, a, b);
}

inline ConvexPolyhedron halfLine1d(bool nonnegative) {
    MatQ a(1, 1);
    a(0, 0) = nonnegative ? Rational(-1) : Rational(1);
    VecQ b(1);
    b[0] = Rational(0);
    return ConvexPolyhedron::fromInequalities(1, a, b);
}

}  // namespace relip::testutil
