#pragma once

#include "relip/stability.hpp"

namespace relip {

enum class ChainVariant { Mixed, Normal, StrictDerivative };
enum class SumVariant { Mixed, Normal };

struct RuleVerdict {
    bool qualificationHolds = false;
    bool hypothesesMet = false;
    bool included = false;
    CoderivativeGraph lhs;
    ConeUnion rhs;
    std::optional<VecQ> counterexample;  // ray in lhs \ rhs when not included
    ProbeResult probe;
    std::string note;
};

// zero-slice intersection of the unconstrained dual graph of s2 with the
// negated mirror slice of the inverse of s1
bool chainQualification(const PLMultifunction& s1, const PLMultifunction& s2,
                        const ConvexPolyhedron& omega, const VecQ& xbar,
                        const VecQ& ybar, const VecQ& zbar);

RuleVerdict chainRuleCheck(const PLMultifunction& s1, const PLMultifunction& s2,
                           const ConvexPolyhedron& omega, const VecQ& xbar,
                           const VecQ& ybar, const VecQ& zbar,
                           ChainVariant variant);

bool sumQualification(const PLMultifunction& s1, const PLMultifunction& s2,
                      const ConvexPolyhedron& omega, const VecQ& xbar,
                      const VecQ& y1bar, const VecQ& y2bar);

RuleVerdict sumRuleCheck(const PLMultifunction& s1, const PLMultifunction& s2,
                         const ConvexPolyhedron& omega, const VecQ& xbar,
                         const VecQ& ybar, const VecQ& y1bar,
                         const VecQ& y2bar, SumVariant variant);

// relaxed normals of an inverse image lift to the product set with a zero
// output component; verified on generating directions plus seeded samples
bool inverseImageInclusionCheck(const PLMultifunction& f, const PLSet& theta,
                                const VecQ& xbar, const Rational& eps);

struct ShiftVerdict {
    bool extremal = false;
    std::vector<bool> emptyPerShift;
};

// Decides exactly whether the shifted first set separates from the second
// inside the window (default: unit box around the point).
ShiftVerdict extremalDetect(const PLSet& l1, const PLSet& l2,
                            const ConvexPolyhedron& omega, const VecQ& point,
                            const std::vector<VecQ>& shifts,
                            const ConvexPolyhedron* window = nullptr);

struct WitnessRecord {
    bool success = false;
    std::vector<VecQ> points;
    std::vector<VecQ> covectors;
    std::vector<Rational> residualSq;     // exact per-condition residuals
    Rational lambda;                      // intersection-rule multiplier
    Rational normalizationSlackSq;        // 0 when the normalization is exact
    std::string note;
};

// Separating covector pair built from the exact minimizer of the shifted
// distance between the sets: opposite covectors, unit total norm.
WitnessRecord extremalWitness(const PLSet& l1, const PLSet& l2,
                              const ConvexPolyhedron& omega, const VecQ& point,
                              const Rational& eps,
                              const std::vector<VecQ>& shifts,
                              const ConvexPolyhedron* window = nullptr);

// Splits a relaxed normal of an intersection into per-set regular normals
// with a multiplier, meeting the stated inflation and normalization.
WitnessRecord fuzzyIntersectionWitness(const PLSet& t1, const PLSet& t2,
                                       const ConvexPolyhedron& omega,
                                       const VecQ& point, const VecQ& covector,
                                       const Rational& eps, const Rational& nu);

}  // namespace relip
