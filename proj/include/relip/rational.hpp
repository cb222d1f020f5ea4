#pragma once

#include <gmpxx.h>
#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace Eigen {

// Exact rational scalar support for dense types.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    static inline Real epsilon() { return mpq_class(0); }
    static inline Real dummy_precision() { return mpq_class(0); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 150,
        MulCost = 120
    };
};

}  // namespace Eigen

namespace relip {

using Rational = mpq_class;
using Integer = mpz_class;

using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class DimensionError : public Error {
  public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Raised when an operation would exceed the configured dimension cap.
class CapError : public Error {
  public:
    explicit CapError(const std::string& what) : Error(what) {}
};

class BudgetError : public Error {
  public:
    explicit BudgetError(const std::string& what) : Error(what) {}
};

struct Limits {
    int dimCap = 8;
    long enumerationBudget = 2'000'000;  // subset/pair enumeration guard
    long gridBudget = 4'000'000;         // lattice points in grid oracles
    // Ratio ceiling above which the brute-force oracle reports "unbounded".
    Rational ratioCeilingSq = Rational(1'000'000) * Rational(1'000'000);
};

inline Rational makeRational(const Integer& num, const Integer& den) {
    if (den == 0) throw ParseError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rational parseRational(const std::string& text);

std::string toString(const Rational& q);

// Fixed-point decimal rendering, round-half-away-from-zero, `digits`
// fractional digits (defaults to 12). Deterministic.
std::string toDecimalString(const Rational& q, int digits = 12);

inline int sign(const Rational& q) { return sgn(q); }

bool isPerfectSquare(const Rational& q);

// Exact square root when q is a perfect square of a rational.
std::optional<Rational> exactSqrt(const Rational& q);

// lo <= sqrt(q) <= hi with hi - lo <= 2^-precBits * max(1, sqrt(q)).
std::pair<Rational, Rational> sqrtBounds(const Rational& q, int precBits = 64);

inline Rational squaredNorm(const VecQ& v) { return v.dot(v); }

inline Rational dot(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
    return a.dot(b);
}

// Scales a direction by a positive rational so that entries become coprime
// integers. The zero vector is returned unchanged.
VecQ primitive(const VecQ& v);

// Like primitive() but also flips sign so the first nonzero entry is
// positive. Suitable for normalizing equality rows and lines.
VecQ primitiveSigned(const VecQ& v);

int lexCompare(const VecQ& a, const VecQ& b);

bool isZero(const VecQ& v);

VecQ zeroVec(Index n);

VecQ concat(const VecQ& a, const VecQ& b);

std::string vecToString(const VecQ& v);

}  // namespace relip
