#pragma once

#include "relip/rational.hpp"

namespace relip {

// Coefficients low-degree first; invariant: no trailing zero coefficient
// (the zero polynomial has empty coefficient list).
struct Poly {
    std::vector<Rational> c;

    static Poly zero() { return Poly{}; }
    static Poly constant(const Rational& a);
    static Poly fromCoeffs(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool isZero() const { return c.empty(); }
    Rational eval(const Rational& x) const;
    Poly derivative() const;
    void normalize();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Rational& s, const Poly& p);

// Remainder of a / b (b nonzero).
Poly polyRem(const Poly& a, const Poly& b);
Poly polyGcd(Poly a, Poly b);   // monic gcd
Poly squarefreePart(const Poly& p);

// Exactly one real root of `p` in each returned open interval (lo, hi),
// p(lo) != 0 != p(hi); covers all real roots. p must be squarefree.
std::vector<std::pair<Rational, Rational>> isolateRealRoots(const Poly& p);

// Bisect an isolating interval until hi - lo <= width.
std::pair<Rational, Rational> refineRootInterval(const Poly& p, Rational lo,
                                                 Rational hi,
                                                 const Rational& width);

// Rational roots found by small-divisor search; each root is deflated out of
// the polynomial. Returns nullopt when coefficients are too large to factor
// within the trial bound (callers fall back to interval answers).
std::optional<std::vector<Rational>> rationalRoots(Poly& p,
                                                   unsigned long trialBound =
                                                       1'000'000);

// Characteristic polynomial det(M - t N) via interpolation.
Poly pencilCharPoly(const MatQ& m, const MatQ& n);

// Quadratic surd a + b*sqrt(d) with d a nonnegative integer (not necessarily
// squarefree). Forms a field for fixed d; supports exact sign queries.
struct QuadExt {
    Rational a;
    Rational b;
    Integer d;

    QuadExt() : a(0), b(0), d(0) {}
    QuadExt(Rational a_, Rational b_, Integer d_)
        : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}
    static QuadExt rationalValue(const Rational& r) {
        return QuadExt(r, Rational(0), Integer(0));
    }

    int signOf() const;
    bool isZero() const { return signOf() == 0; }
};

QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator*(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x);
QuadExt inverse(const QuadExt& x);
QuadExt operator/(const QuadExt& x, const QuadExt& y);

QuadExt evalAt(const Poly& p, const QuadExt& x);

// Roots of a quadratic (or lower-degree) polynomial as exact surds.
std::vector<QuadExt> quadraticRoots(const Poly& p);

}  // namespace relip
