#include "relip/calculus.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace relip;
using namespace relip::testutil;

namespace {

PLMultifunction absInverse() {
    PLSet g;
    g.dim = 2;
    g.pieces = absValueGraphPieces();
    return PLMultifunction::fromGraph(1, 1, g);
}

// graph x = -|y|: slices of the dual graph fill the other half-line
PLMultifunction negAbsInverse() {
    PLSet g;
    g.dim = 2;
    for (auto& piece : absValueGraphPieces()) {
        MatQ a = piece.ineqA();
        VecQ b = piece.ineqB();
        MatQ e = -piece.eqE();
        // x = -|y|: negate the x coefficient of the equality only
        e = piece.eqE();
        e.col(0) = -e.col(0);
        MatQ a2 = piece.ineqA();
        a2.col(0) = -a2.col(0);
        g.pieces.emplace_back(2, a2, b, e, VecQ(-piece.eqF()));
    }
    g.dim = 2;
    return PLMultifunction::fromGraph(1, 1, g);
}

PLMultifunction doubling() {
    MatQ m(1, 1);
    m(0, 0) = Rational(2);
    return PLMultifunction::linear(m);
}

PLMultifunction negId() {
    MatQ m(1, 1);
    m(0, 0) = Rational(-1);
    return PLMultifunction::linear(m);
}

PLMultifunction pointDomainId() {
    // graph {(0, 0)}: identity with a one-point domain
    return PLMultifunction::fromGraph(
        1, 1, PLSet::single(ConvexPolyhedron::singleton(vecl({0, 0}))));
}

PLSet lowerHalfPlane() {
    MatQ a = mat(1, 2, {0, 1});
    return PLSet::single(ConvexPolyhedron::fromInequalities(2, a, vecl({0})));
}

PLSet upperHalfPlane() {
    MatQ a = mat(1, 2, {0, -1});
    return PLSet::single(ConvexPolyhedron::fromInequalities(2, a, vecl({0})));
}

}  // namespace

TEST_CASE("chain qualification on linear and identity data") {
    // affine second mapping: unconstrained dual kernel is trivial
    CHECK(chainQualification(restrict(PLMultifunction::identity(1),
                                      interval(q(0), q(1))),
                             doubling(), interval(q(0), q(1)), vecl({0}),
                             vecl({0}), vecl({0})));
    CHECK(chainQualification(PLMultifunction::identity(1),
                             PLMultifunction::identity(1),
                             interval(q(0), q(1)), vecl({0}), vecl({0}),
                             vecl({0})));
}

TEST_CASE("chain qualification failure fixture") {
    // constant first mapping: the mirror kernel fills the whole dual line;
    // kinked second graph contributes a half-line at zero
    PLMultifunction s1 = PLMultifunction::constant(1, vecl({0}));
    PLMultifunction s2 = absInverse();
    CHECK(!chainQualification(s1, s2, ConvexPolyhedron::full(1), vecl({0}),
                              vecl({0}), vecl({0})));
}

TEST_CASE("chain rule with an affine second mapping") {
    PLMultifunction s1 = restrict(PLMultifunction::identity(1),
                                  interval(q(0), q(1)));
    PLMultifunction s2 = doubling();
    ConvexPolyhedron omega = interval(q(0), q(1));
    RuleVerdict v = chainRuleCheck(s1, s2, omega, vecl({0}), vecl({0}),
                                   vecl({0}), ChainVariant::StrictDerivative);
    CHECK(v.qualificationHolds);
    CHECK(v.probe.inner);
    CHECK(v.hypothesesMet);
    CHECK(v.included);
    // the value of the left graph at z* = 1 is [0, 2]
    PLSet lhsAt1 = applyCoderivative(v.lhs, vecl({1}));
    CHECK(plsetEquals(lhsAt1, PLSet::single(interval(q(0), q(2)))));
    // and the right composite contains it
    PLSet rhsAt1;
    rhsAt1.dim = 1;
    {
        CoderivativeGraph asGraph;
        asGraph.inDim = 1;
        asGraph.outDim = 1;
        asGraph.pieces = v.rhs;
        rhsAt1 = applyCoderivative(asGraph, vecl({1}));
    }
    CHECK(plsetIncluded(lhsAt1, rhsAt1));

    // kinked second mapping is rejected for this variant
    CHECK_THROWS_AS(chainRuleCheck(s1, absInverse(), omega, vecl({0}),
                                   vecl({0}), vecl({0}),
                                   ChainVariant::StrictDerivative),
                    Error);
}

TEST_CASE("chain rule with the identity second mapping is an equality") {
    PLMultifunction s1 = restrict(PLMultifunction::identity(1),
                                  interval(q(0), q(1)));
    PLMultifunction s2 = PLMultifunction::identity(1);
    ConvexPolyhedron omega = interval(q(0), q(1));
    for (ChainVariant variant : {ChainVariant::Mixed, ChainVariant::Normal}) {
        RuleVerdict v = chainRuleCheck(s1, s2, omega, vecl({0}), vecl({0}),
                                       vecl({0}), variant);
        CHECK(v.qualificationHolds);
        CHECK(v.included);
        CHECK(coneUnionEquals(v.lhs.pieces, v.rhs));
    }
}

TEST_CASE("chain rule on a degenerate composition") {
    // constant first map into a one-point-domain identity: the composition
    // is the constant zero map and both sides collapse
    PLMultifunction s1 = PLMultifunction::constant(1, vecl({0}));
    PLMultifunction s2 = pointDomainId();
    ConvexPolyhedron omega = interval(q(0), q(1));
    RuleVerdict v = chainRuleCheck(s1, s2, omega, vecl({0}), vecl({0}),
                                   vecl({0}), ChainVariant::Mixed);
    CHECK(v.included);
    PLSet lhsAt1 = applyCoderivative(v.lhs, vecl({1}));
    CHECK(plsetEquals(lhsAt1,
                      PLSet::single(ConvexPolyhedron::singleton(vecl({0})))));
}

TEST_CASE("sum qualification") {
    ConvexPolyhedron omega = interval(q(0), q(1));
    CHECK(sumQualification(PLMultifunction::identity(1), negId(), omega,
                           vecl({0}), vecl({0}), vecl({0})));
    CHECK(sumQualification(PLMultifunction::identity(1),
                           PLMultifunction::identity(1), omega, vecl({0}),
                           vecl({0}), vecl({0})));
    // opposite kinked graphs: the dual kernels are opposite half-lines
    CHECK(!sumQualification(absInverse(), negAbsInverse(),
                            ConvexPolyhedron::full(1), vecl({0}), vecl({0}),
                            vecl({0})));
}

TEST_CASE("sum rule on identity plus negated identity") {
    ConvexPolyhedron omega = interval(q(0), q(1));
    PLMultifunction s1 = PLMultifunction::identity(1);
    PLMultifunction s2 = negId();
    for (SumVariant variant : {SumVariant::Mixed, SumVariant::Normal}) {
        RuleVerdict v = sumRuleCheck(s1, s2, omega, vecl({0}), vecl({0}),
                                     vecl({0}), vecl({0}), variant);
        CHECK(v.qualificationHolds);
        CHECK(v.probe.inner);
        CHECK(v.hypothesesMet);
        CHECK(v.included);
        // left slice at every probe value stays {0}; right slice at 1 spans
        // [-1, 0]
        CoderivativeGraph rhsGraph;
        rhsGraph.inDim = 1;
        rhsGraph.outDim = 1;
        rhsGraph.pieces = v.rhs;
        PLSet lhsAt1 = applyCoderivative(v.lhs, vecl({1}));
        CHECK(plsetEquals(lhsAt1, PLSet::single(
                                      ConvexPolyhedron::singleton(vecl({0})))));
        PLSet rhsAt1 = applyCoderivative(rhsGraph, vecl({1}));
        CHECK(plsetEquals(rhsAt1, PLSet::single(interval(q(-1), q(0)))));
    }
    CHECK_THROWS_AS(sumRuleCheck(s1, s2, omega, vecl({0}), vecl({0}),
                                 vecl({1}), vecl({0}), SumVariant::Mixed),
                    Error);
}

TEST_CASE("sum rule reduces to an equality against the zero map") {
    ConvexPolyhedron omega = interval(q(0), q(1));
    PLMultifunction s1 = PLMultifunction::identity(1);
    PLMultifunction zero = PLMultifunction::constant(1, vecl({0}));
    RuleVerdict v = sumRuleCheck(s1, zero, omega, vecl({0}), vecl({0}),
                                 vecl({0}), vecl({0}), SumVariant::Mixed);
    CHECK(v.qualificationHolds);
    CHECK(v.included);
    CoderivativeGraph rhsGraph;
    rhsGraph.inDim = 1;
    rhsGraph.outDim = 1;
    rhsGraph.pieces = v.rhs;
    PLSet lhsAt1 = applyCoderivative(v.lhs, vecl({1}));
    PLSet rhsAt1 = applyCoderivative(rhsGraph, vecl({1}));
    CHECK(plsetIncluded(lhsAt1, rhsAt1));
}

TEST_CASE("sum rule on two copies of the identity") {
    ConvexPolyhedron omega = interval(q(0), q(1));
    PLMultifunction s1 = PLMultifunction::identity(1);
    RuleVerdict v = sumRuleCheck(s1, s1, omega, vecl({0}), vecl({0}),
                                 vecl({0}), vecl({0}), SumVariant::Mixed);
    CHECK(v.qualificationHolds);
    CHECK(v.included);
}

TEST_CASE("sum qualification follows from one-sided stability") {
    // whenever one summand passes the pointbased criterion, the
    // qualification condition holds
    ConvexPolyhedron omega = interval(q(0), q(1));
    struct Pair {
        PLMultifunction s1, s2;
    };
    std::vector<Pair> pairs = {
        {PLMultifunction::identity(1), negId()},
        {PLMultifunction::identity(1), PLMultifunction::constant(1, vecl({0}))},
        {PLMultifunction::constant(1, vecl({0})), doubling()},
    };
    for (const auto& pr : pairs) {
        ConstrainedPoint p1(pr.s1, omega, vecl({0}), vecl({0}));
        ConstrainedPoint p2(pr.s2, omega, vecl({0}), vecl({0}));
        bool oneStable = pointbasedCriterion(p1) || pointbasedCriterion(p2);
        if (oneStable) {
            CHECK(sumQualification(pr.s1, pr.s2, omega, vecl({0}), vecl({0}),
                                   vecl({0})));
        }
    }
}

TEST_CASE("chain qualification follows from one-sided well-posedness") {
    ConvexPolyhedron omega = interval(q(0), q(1));
    PLMultifunction s1 = restrict(PLMultifunction::identity(1), omega);
    PLMultifunction s2 = doubling();
    ConstrainedPoint p1(s1, omega, vecl({0}), vecl({0}));
    ConstrainedPoint p2(s2, ConvexPolyhedron::full(1), vecl({0}), vecl({0}));
    bool wellPosed = metricRegularityCheck(p1).verdict == Verdict::True ||
                     pointbasedCriterion(p2);
    CHECK(wellPosed);
    CHECK(chainQualification(s1, s2, omega, vecl({0}), vecl({0}), vecl({0})));
}

TEST_CASE("inverse image inclusion") {
    PLMultifunction f = PLMultifunction::identity(1);
    PLSet theta = PLSet::single(interval(q(0), q(1)));
    CHECK(inverseImageInclusionCheck(f, theta, vecl({0}), q(1, 4)));

    // full target space: the inclusion trivializes
    CHECK(inverseImageInclusionCheck(f, PLSet::fullSpace(1), vecl({0}),
                                     q(1, 4)));

    PLMultifunction dbl = doubling();
    PLSet halfLine = PLSet::single(halfLine1d(true));
    CHECK(inverseImageInclusionCheck(dbl, halfLine, vecl({0}), q(1, 3)));
}

TEST_CASE("inverse image inclusion holds on random piecewise data") {
    Rng rng(333);
    int cases = 0;
    while (cases < 40) {
        // random continuous piecewise-linear map on the line: two slopes
        long a = rng.integer(-3, 3), b = rng.integer(-3, 3);
        PLSet g;
        g.dim = 2;
        {
            MatQ ineq = mat(1, 2, {1, 0});
            MatQ e(1, 2);
            e << Rational(a), Rational(-1);
            g.pieces.emplace_back(2, ineq, vecl({0}), e, vecl({0}));
        }
        {
            MatQ ineq = mat(1, 2, {-1, 0});
            MatQ e(1, 2);
            e << Rational(b), Rational(-1);
            g.pieces.emplace_back(2, ineq, vecl({0}), e, vecl({0}));
        }
        PLMultifunction f = PLMultifunction::fromGraph(1, 1, g);
        Rational lo = rng.rational(2, 2), hi = lo + abs(rng.rational(3, 2)) + 1;
        PLSet theta = PLSet::single(interval(lo, hi));
        if (!theta.contains(vecl({0}))) continue;
        Rational eps = makeRational(1 + rng.integer(0, 3), 5);
        CHECK(inverseImageInclusionCheck(f, theta, vecl({0}), eps));
        ++cases;
    }
}

TEST_CASE("extremal detection on the half-plane system") {
    PLSet l1 = lowerHalfPlane();
    PLSet l2 = upperHalfPlane();
    ConvexPolyhedron omega = ConvexPolyhedron::full(1);
    std::vector<VecQ> down, up;
    for (long k = 1; k <= 4; ++k) {
        down.push_back(vec({makeRational(-1, k)}));
        up.push_back(vec({makeRational(1, k)}));
    }
    ShiftVerdict sep = extremalDetect(l1, l2, omega, vecl({0, 0}), down);
    CHECK(sep.extremal);
    for (bool e : sep.emptyPerShift) CHECK(e);
    ShiftVerdict overlap = extremalDetect(l1, l2, omega, vecl({0, 0}), up);
    CHECK(!overlap.extremal);
    for (bool e : overlap.emptyPerShift) CHECK(!e);

    PLSet whole = PLSet::fullSpace(2);
    ShiftVerdict full = extremalDetect(whole, whole, omega, vecl({0, 0}),
                                       down);
    CHECK(!full.extremal);

    // projection condition violated
    MatQ a = mat(1, 2, {0, 1});
    PLSet l1b = lowerHalfPlane();
    CHECK_THROWS_AS(extremalDetect(l1b, l2, interval(q(0), q(1)), vecl({0, 0}),
                                   down),
                    Error);
}

TEST_CASE("extremal witness on the half-plane system") {
    PLSet l1 = lowerHalfPlane();
    PLSet l2 = upperHalfPlane();
    ConvexPolyhedron omega = ConvexPolyhedron::full(1);
    std::vector<VecQ> shifts = {vec({q(-1, 2)}), vec({q(-1, 4)}),
                                vec({q(-1, 1024)})};
    WitnessRecord w = extremalWitness(l1, l2, omega, vecl({0, 0}), q(1, 10),
                                      shifts);
    REQUIRE(w.success);
    CHECK(w.covectors.size() == 2);
    CHECK(w.covectors[0] == vec({q(0), q(1, 2)}));
    CHECK(w.covectors[1] == vec({q(0), q(-1, 2)}));
    CHECK(w.normalizationSlackSq == Rational(0));
    for (const Rational& r : w.residualSq) CHECK(r == Rational(0));
    CHECK(w.covectors[0] + w.covectors[1] == zeroVec(2));

    // half-plane projections fill the whole line, so a bounded constraint
    // set violates the projection precondition
    CHECK_THROWS_AS(extremalWitness(l1, l2, interval(q(-1), q(1)),
                                    vecl({0, 0}), q(1, 10), shifts),
                    Error);

    // a constrained input side works once the sets respect the projection
    PLSet l1c = PLSet::single(
        l1.pieces.front().intersect(ConvexPolyhedron::box(vecl({0, 0}), q(1))));
    PLSet l2c = PLSet::single(
        l2.pieces.front().intersect(ConvexPolyhedron::box(vecl({0, 0}), q(1))));
    WitnessRecord w2 = extremalWitness(l1c, l2c, interval(q(-1), q(1)),
                                       vecl({0, 0}), q(1, 10), shifts);
    REQUIRE(w2.success);
    CHECK(w2.covectors[0] == vec({q(0), q(1, 2)}));

    // no admissible shift: explicit failure
    WitnessRecord bad = extremalWitness(l1, l2, omega, vecl({0, 0}), q(1, 10),
                                        {vec({q(1, 2)})});
    CHECK(!bad.success);
    CHECK(!bad.note.empty());
}

TEST_CASE("fuzzy intersection witness on the half-plane system") {
    PLSet t1 = lowerHalfPlane();
    PLSet t2 = upperHalfPlane();
    ConvexPolyhedron omega = ConvexPolyhedron::full(1);
    WitnessRecord w = fuzzyIntersectionWitness(t1, t2, omega, vecl({0, 0}),
                                               vecl({0, 1}), q(1, 2), q(1, 8));
    REQUIRE(w.success);
    CHECK(w.lambda == Rational(1));
    CHECK(w.covectors[0] == vecl({0, 1}));
    CHECK(w.covectors[1] == vecl({0, 0}));
    CHECK(w.residualSq[0] == Rational(0));

    // zero covector: an opposing unit pair from the two normal cones
    WitnessRecord z = fuzzyIntersectionWitness(t1, t2, omega, vecl({0, 0}),
                                               vecl({0, 0}), q(1, 2), q(1, 8));
    REQUIRE(z.success);
    CHECK(z.lambda == Rational(0));
    CHECK(squaredNorm(z.covectors[0]) == Rational(1));
    CHECK(z.covectors[0] + z.covectors[1] == zeroVec(2));

    // precondition violation
    CHECK_THROWS_AS(fuzzyIntersectionWitness(t1, t2, omega, vecl({0, 0}),
                                             vecl({5, 0}), q(1, 2), q(1, 8)),
                    Error);
}
