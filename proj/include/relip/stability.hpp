#pragma once

#include "relip/coderivative.hpp"

namespace relip {

enum class Verdict { True, False, Undecided };

struct OracleResult {
    bool unbounded = false;
    Rational loSq;      // exact max sampled ratio^2
    Rational hiSq;      // (upper(sqrt(loSq)) + C h / delta)^2
    Rational slopeC;    // discretization constant C
    long pairs = 0;
    std::string note;
};

// Direct grid evaluation of the graphical Lipschitz ratio around the
// reference pair; the independent oracle for every criterion below.
OracleResult bruteForceLip(const ConstrainedPoint& pt, const Rational& delta,
                           const Rational& gridStep);

struct CriterionResult {
    Verdict verdict = Verdict::Undecided;
    bool exact = false;
    Rational thresholdSq;  // per-catalog directional threshold (when exact)
    std::string note;
};

// Only the zero input covector pairs with the zero output covector in the
// relaxed normal cone over every stratum near the reference pair.
CriterionResult neighborhoodCriterion(const ConstrainedPoint& pt,
                                      const Rational& eps,
                                      const Rational& delta);

// Same shape with the constant-bound relaxation: scaling kills it whenever
// the constraint tangent is nontrivial, so the verdict is structural.
bool constantBoundCriterion(const ConstrainedPoint& pt, const Rational& eps,
                            const Rational& delta);

// |x*| <= kappa |y*| over the gamma-relaxed dual pairs at every stratum.
CriterionResult kappaCondition(const ConstrainedPoint& pt,
                               const Rational& kappa, const Rational& gamma,
                               const Rational& delta);

// Zero slice of the limiting dual graph is trivial.
bool pointbasedCriterion(const ConstrainedPoint& pt);

struct BoundScan {
    bool unbounded = false;
    bool exact = true;
    Rational epsStarSq;  // supremal relaxation threshold (squared)
    Rational modulusSq;  // 1/epsStarSq - 1
};

// Largest relaxation below which the neighborhood condition holds, computed
// in closed form from the per-stratum thresholds; the bound is
// sqrt(1/eps*^2 - 1), reported as an exact square.
BoundScan exactBoundScan(const ConstrainedPoint& pt, const Rational& delta);

struct LipschitzReport {
    OracleResult oracle;
    NormResult normMixed;
    NormResult normNormal;
    BoundScan scan;
    bool pointbased = false;
    bool coderivativelyNormal = true;
    bool consistent = false;
    std::string notes;
};

LipschitzReport boundEstimates(const ConstrainedPoint& pt);
LipschitzReport boundEstimates(const ConstrainedPoint& pt,
                               const Rational& delta, const Rational& gridStep);

struct MetricRegularity {
    Verdict verdict = Verdict::Undecided;
    NormResult modulus;
    bool imageConvex = true;
    bool pointbased = false;
    std::string note;
};

// Inverse-side well-posedness through the stated equivalence: the inverse of
// the constrained mapping is analyzed at (ybar, xbar) with the constraint
// transported to the image set.
MetricRegularity metricRegularityCheck(const ConstrainedPoint& pt);

}  // namespace relip
