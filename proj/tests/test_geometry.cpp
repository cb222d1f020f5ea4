#include "relip/polyhedron.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace relip;
using namespace relip::testutil;

namespace {

PolyCone rayCone(std::initializer_list<long> dir) {
    return PolyCone::fromGenerators(static_cast<Index>(dir.size()),
                                    matFromRows({vecl(dir)}, static_cast<Index>(dir.size())));
}

// independent oracle: least squares of v against a single generator
VecQ projectOntoRayBrute(const VecQ& g, const VecQ& v) {
    Rational t = dot(g, v) / squaredNorm(g);
    if (t < 0) t = 0;
    return t * g;
}

}  // namespace

TEST_CASE("double description on simple cones") {
    // nonnegative quadrant from halfspaces
    MatQ h = mat(2, 2, {-1, 0, 0, -1});
    MatQ gens = doubleDescription(2, h, Limits{});
    CHECK(gens.rows() == 2);
    PolyCone quad = PolyCone::fromHalfspaces(2, h);
    CHECK(quad.contains(vecl({3, 5})));
    CHECK(!quad.contains(vecl({-1, 0})));

    // full plane
    PolyCone full = PolyCone::fullSpace(2);
    CHECK(full.generators().rows() == 4);  // +/- basis pairs

    // a line {x + y = 0}
    PolyCone line = PolyCone::fromHalfspaces(2, mat(2, 2, {1, 1, -1, -1}));
    CHECK(line.generators().rows() == 2);
    CHECK(line.contains(vecl({2, -2})));
    CHECK(!line.contains(vecl({1, 0})));

    // {0}
    PolyCone zero = PolyCone::fromHalfspaces(
        2, mat(4, 2, {1, 0, -1, 0, 0, 1, 0, -1}));
    CHECK(zero.isTrivial());
}

TEST_CASE("polar cones") {
    PolyCone quad = PolyCone::fromHalfspaces(2, mat(2, 2, {-1, 0, 0, -1}));
    PolyCone polar = quad.polar();
    CHECK(polar.contains(vecl({-1, -2})));
    CHECK(!polar.contains(vecl({1, 0})));

    CHECK(PolyCone::fullSpace(3).polar().isTrivial());

    // polar of ray (1,1) is {(a,b) : a + b <= 0}
    PolyCone diag = rayCone({1, 1});
    PolyCone dp = diag.polar();
    PolyCone expected = PolyCone::fromHalfspaces(2, mat(1, 2, {1, 1}));
    CHECK(dp.setEquals(expected));

    // involution on a batch of random cones
    Rng rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        Index d = 2 + iter % 3;
        Index rows = 1 + rng.integer(0, 3);
        MatQ h(rows, d);
        for (Index i = 0; i < rows; ++i)
            h.row(i) = rng.vector(d, 3, 2).transpose();
        PolyCone c = PolyCone::fromHalfspaces(d, h);
        CHECK(c.polar().polar().setEquals(c));
    }
}

TEST_CASE("cone projection matches one-parameter least squares") {
    PolyCone diag = rayCone({1, 1});
    auto pr = diag.project(vecl({1, 0}));
    CHECK(pr.point == vec({q(1, 2), q(1, 2)}));
    CHECK(pr.normSq == q(1, 2));
    CHECK(pr.point == projectOntoRayBrute(vecl({1, 1}), vecl({1, 0})));

    // member point projects to itself
    auto self = diag.project(vecl({3, 3}));
    CHECK(self.point == vecl({3, 3}));
    CHECK(self.normSq == Rational(18));

    // zero cone absorbs everything
    PolyCone zero = PolyCone::zeroCone(3);
    auto z = zero.project(vecl({4, -5, 6}));
    CHECK(isZero(z.point));
    CHECK(z.normSq == Rational(0));
}

TEST_CASE("Moreau decomposition holds exactly on random cones") {
    Rng rng(23);
    int cases = 0;
    while (cases < 1000) {
        Index d = 2 + cases % 3;
        Index rows = 1 + rng.integer(0, 3);
        MatQ h(rows, d);
        for (Index i = 0; i < rows; ++i)
            h.row(i) = rng.vector(d, 3, 2).transpose();
        PolyCone c = PolyCone::fromHalfspaces(d, h);
        VecQ v = rng.vector(d, 5, 4);
        auto pr = c.project(v);
        VecQ w = v - pr.point;
        CHECK(c.contains(pr.point));
        CHECK(c.polar().contains(w));
        CHECK(dot(pr.point, w) == Rational(0));
        ++cases;
    }
}

TEST_CASE("support over the unit ball of a cone union") {
    ConeUnion diag = ConeUnion::single(rayCone({1, 1}));
    SupportValue s = supportOnBall(diag, vecl({1, 0}));
    CHECK(s.sq == q(1, 2));
    CHECK(!s.nonpositive);

    ConeUnion full = ConeUnion::single(PolyCone::fullSpace(2));
    SupportValue sf = supportOnBall(full, vecl({3, 4}));
    CHECK(sf.sq == Rational(25));

    SupportValue sz = supportOnBall(diag, vec({Rational(1), Rational(-1)}));
    CHECK(sz.sq == Rational(0));
    CHECK(sz.nonpositive);
}

TEST_CASE("support bounds random directions inside the union") {
    Rng rng(37);
    ConeUnion u;
    u.dim = 2;
    u.pieces.push_back(rayCone({1, 1}));
    u.pieces.push_back(PolyCone::fromHalfspaces(2, mat(2, 2, {-1, 0, 0, -1})));
    int checked = 0;
    while (checked < 1000) {
        VecQ v = rng.vector(2, 5, 3);
        SupportValue s = supportOnBall(u, v);
        // random direction inside the union: nonnegative combo of quadrant
        VecQ d(2);
        d[0] = abs(rng.rational(4, 3));
        d[1] = abs(rng.rational(4, 3));
        if (isZero(d)) continue;
        Rational ip = dot(v, d);
        if (ip > 0) CHECK(ip * ip <= s.sq * squaredNorm(d));
        if (s.nonpositive) CHECK(ip <= 0);
        ++checked;
    }
    // equality is attained at the projection direction
    VecQ v = vecl({2, -1});
    SupportValue s = supportOnBall(u, v);
    Rational bestAttained(0);
    for (const auto& piece : u.pieces) {
        auto pr = piece.project(v);
        if (pr.normSq == 0) continue;
        Rational attained = dot(v, pr.point) * dot(v, pr.point) /
                            squaredNorm(pr.point);
        if (attained > bestAttained) bestAttained = attained;
    }
    CHECK(bestAttained == s.sq);
}

TEST_CASE("cone union inclusion") {
    ConeUnion a = ConeUnion::single(rayCone({1, 1}));
    ConeUnion quad = ConeUnion::single(
        PolyCone::fromHalfspaces(2, mat(2, 2, {-1, 0, 0, -1})));
    CHECK(coneUnionIncluded(a, quad));
    CHECK(!coneUnionIncluded(quad, a));
    auto w = coneUnionWitness(quad, a);
    REQUIRE(w.has_value());
    CHECK(quad.member(*w));
    CHECK(!a.member(*w));

    // same pieces, permuted
    ConeUnion u1, u2;
    u1.dim = u2.dim = 2;
    u1.pieces = {rayCone({1, 0}), rayCone({0, 1})};
    u2.pieces = {rayCone({0, 1}), rayCone({1, 0})};
    CHECK(coneUnionEquals(u1, u2));

    // union covering: quadrant covered by its two halves
    PolyCone lower = PolyCone::fromHalfspaces(2, mat(3, 2, {-1, 0, 0, -1, -1, 1}));
    PolyCone upper = PolyCone::fromHalfspaces(2, mat(3, 2, {-1, 0, 0, -1, 1, -1}));
    ConeUnion halves;
    halves.dim = 2;
    halves.pieces = {lower, upper};
    ConeUnion quadOnly = ConeUnion::single(
        PolyCone::fromHalfspaces(2, mat(2, 2, {-1, 0, 0, -1})));
    CHECK(coneUnionIncluded(quadOnly, halves));
    CHECK(coneUnionIncluded(halves, quadOnly));
    ConeUnion lowerOnly = ConeUnion::single(lower);
    CHECK(!coneUnionIncluded(quadOnly, lowerOnly));
}

TEST_CASE("cone union inclusion agrees with dense ray sampling") {
    Rng rng(101);
    for (int iter = 0; iter < 25; ++iter) {
        ConeUnion a, b;
        a.dim = b.dim = 2;
        int na = 1 + rng.integer(0, 1), nb = 1 + rng.integer(0, 2);
        for (int i = 0; i < na; ++i) {
            MatQ h(1 + rng.integer(0, 2), 2);
            for (Index r = 0; r < h.rows(); ++r)
                h.row(r) = rng.vector(2, 3, 2).transpose();
            a.pieces.push_back(PolyCone::fromHalfspaces(2, h));
        }
        for (int i = 0; i < nb; ++i) {
            MatQ h(1 + rng.integer(0, 2), 2);
            for (Index r = 0; r < h.rows(); ++r)
                h.row(r) = rng.vector(2, 3, 2).transpose();
            b.pieces.push_back(PolyCone::fromHalfspaces(2, h));
        }
        bool included = coneUnionIncluded(a, b);
        bool sampledOk = true;
        for (int s = 0; s < 400 && sampledOk; ++s) {
            const PolyCone& piece =
                a.pieces[static_cast<size_t>(rng.integer(0, na - 1))];
            const MatQ& g = piece.generators();
            if (g.rows() == 0) continue;
            VecQ d = VecQ::Zero(2);
            for (Index r = 0; r < g.rows(); ++r)
                d += abs(rng.rational(3, 2)) * g.row(r).transpose();
            if (isZero(d)) continue;
            if (!b.member(d)) sampledOk = false;
        }
        if (included) CHECK(sampledOk);
        if (!sampledOk) CHECK(!included);
    }
}

TEST_CASE("representation conversion refuses beyond the dimension cap") {
    Limits tight;
    tight.dimCap = 3;
    MatQ h = MatQ::Identity(4, 4);
    CHECK_THROWS_AS(doubleDescription(4, h, tight), CapError);
    PolyCone c = PolyCone::fromHalfspaces(4, h, tight);
    CHECK_THROWS_AS(c.generators(), CapError);
    // membership through the stored halfspaces still works
    CHECK(c.contains(vecl({-1, -1, -1, -1})));
}

TEST_CASE("polyhedron membership and emptiness") {
    ConvexPolyhedron seg = interval(q(0), q(1));
    CHECK(seg.contains(vecl({0})));
    CHECK(seg.contains(vec({q(1, 2)})));
    CHECK(!seg.contains(vecl({2})));
    CHECK(!seg.isEmpty());

    // {x >= 0, -x >= 1} is empty
    MatQ a = mat(2, 1, {-1, 1});
    ConvexPolyhedron empty =
        ConvexPolyhedron::fromInequalities(1, a, vecl({0, -1}));
    CHECK(empty.isEmpty());
    CHECK(!empty.contains(vecl({0})));

    ConvexPolyhedron point = ConvexPolyhedron::singleton(vecl({2, 3}));
    CHECK(point.contains(vecl({2, 3})));
    CHECK(!point.contains(vecl({2, 4})));
}

TEST_CASE("tangent cones of polyhedra") {
    ConvexPolyhedron seg = interval(q(0), q(1));
    PolyCone t0 = seg.tangentConeAt(vecl({0}));
    CHECK(t0.contains(vecl({1})));
    CHECK(!t0.contains(vecl({-1})));
    PolyCone tmid = seg.tangentConeAt(vec({q(1, 2)}));
    CHECK(tmid.contains(vecl({1})));
    CHECK(tmid.contains(vecl({-1})));
    CHECK_THROWS_AS(seg.tangentConeAt(vecl({5})), Error);

    ConvexPolyhedron square = ConvexPolyhedron::box(vec({q(1, 2), q(1, 2)}),
                                                    q(1, 2));
    PolyCone corner = square.tangentConeAt(vecl({0, 0}));
    CHECK(corner.contains(vecl({1, 2})));
    CHECK(!corner.contains(vecl({-1, 0})));
}

TEST_CASE("variable elimination shadows") {
    // {(x,y,z) : y = x, z = 2y} keep (x,z) -> {z = 2x}
    MatQ e = mat(2, 3, {1, -1, 0, 0, 2, -1});
    ConvexPolyhedron p(3, MatQ(0, 3), VecQ(0), e, vecl({0, 0}));
    ConvexPolyhedron shadow = p.eliminateKeep({0, 2});
    CHECK(shadow.contains(vecl({1, 2})));
    CHECK(shadow.contains(vec({q(-1, 2), Rational(-1)})));
    CHECK(!shadow.contains(vecl({1, 3})));

    // unit square keep first coordinate -> [0,1]
    ConvexPolyhedron square = ConvexPolyhedron::box(vec({q(1, 2), q(1, 2)}),
                                                    q(1, 2));
    ConvexPolyhedron side = square.eliminateKeep({0});
    CHECK(side.setEquals(interval(q(0), q(1))));

    // triangle {x + y <= 1, x >= 0, y >= 0} keep x -> [0,1]
    MatQ a = mat(3, 2, {1, 1, -1, 0, 0, -1});
    ConvexPolyhedron tri =
        ConvexPolyhedron::fromInequalities(2, a, vecl({1, 0, 0}));
    CHECK(tri.eliminateKeep({0}).setEquals(interval(q(0), q(1))));
}

TEST_CASE("elimination agrees with vertex-enumeration shadow") {
    Rng rng(53);
    for (int iter = 0; iter < 30; ++iter) {
        Index d = 2 + iter % 3;  // up to 4
        ConvexPolyhedron p = ConvexPolyhedron::box(rng.vector(d, 2, 2), q(2));
        int cuts = rng.integer(0, 2);
        for (int cidx = 0; cidx < cuts; ++cidx) {
            MatQ row(1, d);
            row.row(0) = rng.vector(d, 2, 2).transpose();
            VecQ rhs(1);
            rhs[0] = rng.rational(4, 1) + 2;
            p = p.intersect(ConvexPolyhedron::fromInequalities(d, row, rhs));
        }
        if (p.isEmpty()) continue;
        std::vector<Index> keep;
        for (Index j = 0; j < d - 1; ++j) keep.push_back(j);
        ConvexPolyhedron shadow = p.eliminateKeep(keep);
        auto vr = p.vrep();
        for (Index i = 0; i < vr.vertices.rows(); ++i) {
            VecQ proj = vr.vertices.row(i).transpose().head(d - 1);
            CHECK(shadow.contains(proj));
        }
        auto svr = shadow.vrep();
        for (Index i = 0; i < svr.vertices.rows(); ++i) {
            VecQ sx = svr.vertices.row(i).transpose();
            std::vector<Index> coords;
            for (Index j = 0; j < d - 1; ++j) coords.push_back(j);
            ConvexPolyhedron fiber = p.sliceFix(coords, sx);
            CHECK(!fiber.isEmpty());
        }
    }
}

TEST_CASE("distance to polyhedra") {
    ConvexPolyhedron seg = interval(q(0), q(1));
    auto d = seg.distanceSq(vecl({3}));
    REQUIRE(d.has_value());
    CHECK(d->distSq == Rational(4));
    CHECK(d->closest == vecl({1}));

    ConvexPolyhedron square = ConvexPolyhedron::box(vec({q(1, 2), q(1, 2)}),
                                                    q(1, 2));
    auto d2 = square.distanceSq(vecl({2, 2}));
    CHECK(d2->distSq == Rational(2));
    auto inside = square.distanceSq(vec({q(1, 2), q(1, 4)}));
    CHECK(inside->distSq == Rational(0));

    MatQ a = mat(2, 1, {-1, 1});
    ConvexPolyhedron empty =
        ConvexPolyhedron::fromInequalities(1, a, vecl({0, -1}));
    CHECK(!empty.distanceSq(vecl({0})).has_value());
}

TEST_CASE("polyhedron inclusion and pruning") {
    ConvexPolyhedron seg = interval(q(0), q(1));
    ConvexPolyhedron wide = interval(q(-1), q(2));
    CHECK(seg.includedIn(wide));
    CHECK(!wide.includedIn(seg));

    MatQ a = mat(3, 1, {1, -1, 1});
    ConvexPolyhedron redundant =
        ConvexPolyhedron::fromInequalities(1, a, vecl({1, 0, 5}));
    ConvexPolyhedron pruned = redundant.pruned();
    CHECK(pruned.ineqA().rows() == 2);
    CHECK(pruned.setEquals(seg));
}
