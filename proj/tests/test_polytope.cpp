#include <doctest.h>

#include <cmath>

#include "parc/lp.hpp"
#include "parc/polytope.hpp"
#include "test_helpers.hpp"

using namespace parc;
using parc::testing::TestRng;
using parc::testing::random_polytope;
using parc::testing::unit_triangle;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

HPolytope square(double half) { return HPolytope::box(v2(-half, -half), v2(half, half)); }

// Regular octagon with vertices at the given radius.
HPolytope octagon(double radius) {
    Mat A(8, 2);
    Vec b(8);
    for (int k = 0; k < 8; ++k) {
        const double ang = M_PI / 8 + k * M_PI / 4;
        A(k, 0) = std::cos(ang);
        A(k, 1) = std::sin(ang);
        b(k) = radius * std::cos(M_PI / 8);
    }
    return HPolytope(A, b);
}

std::vector<Vec> octagon_vertices(double radius) {
    std::vector<Vec> v;
    for (int k = 0; k < 8; ++k) v.push_back(v2(radius * std::cos(k * M_PI / 4), radius * std::sin(k * M_PI / 4)));
    return v;
}

// Membership of x in P (+) Q by LP feasibility of a decomposition x = p + q.
bool minkowski_member_lp(const HPolytope& P, const HPolytope& Q, const Vec& x) {
    Mat A(P.num_constraints() + Q.num_constraints(), P.dim());
    Vec b(A.rows());
    A.topRows(P.num_constraints()) = P.A();
    b.head(P.num_constraints()) = P.b();
    A.bottomRows(Q.num_constraints()) = -Q.A();
    b.tail(Q.num_constraints()) = Q.b() - Q.A() * x;
    return lp_feasible(A, b);
}

// Membership of x in conv(P, Q) through the lifted convex-combination system
// (y1, y2, lambda) with x = y1 + y2, A1 y1 <= l b1, A2 y2 <= (1-l) b2.
bool hull_member_lp(const HPolytope& P, const HPolytope& Q, const Vec& x) {
    const int n = P.dim();
    const int m1 = P.num_constraints(), m2 = Q.num_constraints();
    // variables: y1 (n), lambda (1); y2 = x - y1
    Mat A(m1 + m2 + 2, n + 1);
    Vec b(m1 + m2 + 2);
    A.setZero();
    A.topLeftCorner(m1, n) = P.A();
    A.block(0, n, m1, 1) = -P.b();
    b.head(m1).setZero();
    A.block(m1, 0, m2, n) = -Q.A();
    A.block(m1, n, m2, 1) = Q.b();
    b.segment(m1, m2) = Q.b() - Q.A() * x;
    A(m1 + m2, n) = 1.0;
    b(m1 + m2) = 1.0;
    A(m1 + m2 + 1, n) = -1.0;
    b(m1 + m2 + 1) = 0.0;
    return lp_feasible(A, b);
}

}  // namespace

TEST_CASE("intersect: box overlap, identity, disjoint") {
    const HPolytope P = square(1.0);
    const HPolytope Q = HPolytope::box(v2(0, 0), v2(2, 2));
    const HPolytope R = intersect(P, Q);
    CHECK(R.num_constraints() == 8);
    CHECK(contains_point(R, v2(0.5, 0.5)));
    CHECK(contains_point(R, v2(0, 0)));
    CHECK(!contains_point(R, v2(-0.5, 0.5)));
    CHECK(support(R, v2(1, 0)) == doctest::Approx(1.0));
    CHECK(support(R, v2(-1, 0)) == doctest::Approx(0.0));

    const HPolytope full(2);
    const HPolytope Rid = intersect(P, full);
    CHECK(Rid.num_constraints() == P.num_constraints());
    CHECK((Rid.A() - P.A()).cwiseAbs().maxCoeff() == 0.0);

    Mat A1(2, 1), A2(2, 1);
    A1 << 1, -1;
    A2 << 1, -1;
    Vec b1(2), b2(2);
    b1 << 0, 1;   // [-1, 0]
    b2 << 2, -1;  // [1, 2]
    CHECK(is_empty(intersect(HPolytope(A1, b1), HPolytope(A2, b2))));
}

TEST_CASE("intersect: dimension mismatch") {
    CHECK_THROWS_AS(intersect(square(1.0), HPolytope(3)), DimensionError);
}

TEST_CASE("minkowski_sum: box sum forced") {
    const HPolytope R = minkowski_sum(square(1.0), square(0.25));
    for (const Vec& d : {v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)})
        CHECK(support(R, d) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(contains_point(R, v2(1.25, 1.25)));
    CHECK(!contains_point(R, v2(1.26, 0)));
}

TEST_CASE("minkowski_sum: identity element") {
    const HPolytope P = unit_triangle();
    const HPolytope R = minkowski_sum(P, HPolytope::point(Vec::Zero(2)));
    TestRng rng(7);
    for (int i = 0; i < 300; ++i) {
        const Vec x = rng.vec(2, -0.3, 1.3);
        CHECK(contains_point(P, x, 1e-7) == contains_point(R, x, 1e-7));
    }
}

TEST_CASE("minkowski_sum: triangle + box vs grid LP oracle") {
    const HPolytope P = unit_triangle();
    const HPolytope Q = square(0.1);
    const HPolytope R = minkowski_sum(P, Q);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const Vec x = v2(-0.3 + 1.7 * i / 99.0, -0.3 + 1.7 * j / 99.0);
            const bool oracle = minkowski_member_lp(P, Q, x);
            const bool got = contains_point(R, x, 1e-7);
            // skip the tolerance band around the boundary
            const double margin = (R.A() * x - R.b()).maxCoeff();
            if (std::abs(margin) < 1e-6) continue;
            CHECK(oracle == got);
            ++checked;
        }
    }
    CHECK(checked > 9000);
}

TEST_CASE("minkowski_sum: lifted projection route agrees") {
    const HPolytope P = unit_triangle();
    const HPolytope Q = square(0.1);
    const HPolytope R1 = minkowski_sum(P, Q);
    const HPolytope R2 = minkowski_sum(P, Q, default_tol(), MinkowskiRoute::LiftedProjection);
    TestRng rng(3);
    for (int i = 0; i < 500; ++i) {
        const Vec x = rng.vec(2, -0.4, 1.4);
        const double m1 = (R1.A() * x - R1.b()).maxCoeff();
        const double m2 = (R2.A() * x - R2.b()).maxCoeff();
        if (std::abs(m1) < 1e-6 || std::abs(m2) < 1e-6) continue;
        CHECK((m1 <= 0) == (m2 <= 0));
    }
}

TEST_CASE("minkowski_sum: empty and unbounded inputs") {
    CHECK(is_empty(minkowski_sum(square(1.0), HPolytope::empty_set(2))));
    Mat A(1, 2);
    A << 1, 0;
    Vec b(1);
    b << 1;
    CHECK_THROWS_AS(minkowski_sum(HPolytope(A, b), square(1.0)), UnboundedError);
}

TEST_CASE("pontryagin_diff: box difference forced") {
    Mat A(2, 1);
    A << 1, -1;
    Vec b2(2), b1(2);
    b2 << 2, 2;  // [-2, 2]
    b1 << 1, 1;  // [-1, 1]
    const HPolytope R = pontryagin_diff(HPolytope(A, b2), HPolytope(A, b1));
    CHECK(R.b()(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(R.b()(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pontryagin_diff: identity element and empty Q") {
    const HPolytope P = square(1.0);
    const HPolytope R = pontryagin_diff(P, HPolytope::point(Vec::Zero(2)));
    CHECK((R.b() - P.b()).cwiseAbs().maxCoeff() <= 1e-12);
    const HPolytope R2 = pontryagin_diff(P, HPolytope::empty_set(2));
    CHECK((R2.b() - P.b()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pontryagin_diff: octagon vertex-shift oracle") {
    const HPolytope P = square(1.0);
    const HPolytope Q = octagon(0.5);
    const HPolytope R = pontryagin_diff(P, Q);
    const auto samples = sample_interior(R, 200, 11);
    for (const auto& x : samples)
        for (const auto& q : octagon_vertices(0.5)) CHECK(contains_point(P, x + q, 1e-7));
}

TEST_CASE("cartesian_product: boxes, zero-dim identity, prism") {
    Mat A(2, 1);
    A << 1, -1;
    Vec ba(2), bb(2);
    ba << 1, 0;   // [0,1]
    bb << 3, -2;  // [2,3]
    const HPolytope R = cartesian_product(HPolytope(A, ba), HPolytope(A, bb));
    CHECK(R.dim() == 2);
    CHECK(contains_point(R, v2(0.5, 2.5)));
    CHECK(!contains_point(R, v2(0.5, 1.5)));

    const HPolytope unit0(0);
    const HPolytope P = square(1.0);
    const HPolytope Rid = cartesian_product(P, unit0);
    CHECK(Rid.dim() == 2);
    CHECK((Rid.A() - P.A()).cwiseAbs().maxCoeff() == 0.0);

    const HPolytope prism = cartesian_product(unit_triangle(), HPolytope(A, Vec(ba)));
    const VRep verts = vertex_enumeration(prism);
    CHECK(verts.vertices.size() == 6);
}

TEST_CASE("convex_hull_pair: interval hull") {
    Mat A(2, 1);
    A << 1, -1;
    Vec b1(2), b2(2);
    b1 << 0, 1;   // [-1, 0]
    b2 << 3, -2;  // [2, 3]
    const HPolytope R = convex_hull_pair(HPolytope(A, b1), HPolytope(A, b2));
    CHECK(support(R, Vec::Ones(1)) == doctest::Approx(3.0));
    CHECK(support(R, -Vec::Ones(1)) == doctest::Approx(1.0));
    CHECK(contains_point(R, Vec::Constant(1, 1.5)));
}

TEST_CASE("convex_hull_pair: idempotence") {
    TestRng rng(5);
    const HPolytope P = random_polytope(rng, 3, 4);
    const HPolytope R = convex_hull_pair(P, P);
    for (const auto& x : sample_interior(P, 200, 1)) CHECK(contains_point(R, x, 1e-7));
    for (const auto& x : sample_interior(R, 200, 2)) CHECK(contains_point(P, x, 1e-6));
}

TEST_CASE("convex_hull_pair: shifted squares make a hexagon") {
    const HPolytope P = HPolytope::box(v2(0, 0), v2(1, 1));
    const HPolytope Q = HPolytope::box(v2(3, 3), v2(4, 4));
    const HPolytope R = convex_hull_pair(P, Q);
    CHECK(remove_redundancy(R).num_constraints() == 6);
    CHECK(contains_point(R, v2(2, 2)));
    CHECK(!contains_point(R, v2(0, 3)));
    CHECK(hull_member_lp(P, Q, v2(2, 2)));
    CHECK(!hull_member_lp(P, Q, v2(0, 3)));
    // hull result vs the convex-combination LP on a grid
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const Vec x = v2(-0.5 + 5.0 * i / 19.0, -0.5 + 5.0 * j / 19.0);
            const double margin = (R.A() * x - R.b()).maxCoeff();
            if (std::abs(margin) < 1e-6) continue;
            CHECK(hull_member_lp(P, Q, x) == contains_point(R, x, 1e-7));
        }
    }
}

TEST_CASE("convex_hull_pair: empty operand passthrough") {
    const HPolytope P = square(1.0);
    const HPolytope R = convex_hull_pair(P, HPolytope::empty_set(2));
    CHECK((R.b() - P.b()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("project: axis-aligned box") {
    const Vec w3 = Vec::Constant(3, 1.0);
    const HPolytope P = HPolytope::box(-w3, w3);
    const HPolytope R = project(P, 1, 2);
    CHECK(R.dim() == 2);
    CHECK(support(R, v2(1, 0)) == doctest::Approx(1.0));
    CHECK(support(R, v2(0, 1)) == doctest::Approx(1.0));
    CHECK(support(R, v2(-1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("project: rotated square onto an axis") {
    // vertices (+-1, 0), (0, +-1): |x| + |y| <= 1
    Mat A(4, 2);
    A << 1, 1, 1, -1, -1, 1, -1, -1;
    Vec b = Vec::Ones(4);
    const HPolytope R = project(HPolytope(A, b), 1, 1);
    CHECK(R.dim() == 1);
    CHECK(support(R, Vec::Ones(1)) == doctest::Approx(1.0));
    CHECK(support(R, -Vec::Ones(1)) == doctest::Approx(1.0));
}

TEST_CASE("project: random 4-D vertex-projection oracle") {
    TestRng rng(17);
    const HPolytope P = random_polytope(rng, 4, 5);
    const HPolytope R = project(P, 1, 2);
    const VRep vp = vertex_enumeration(P);
    REQUIRE(!vp.vertices.empty());
    // every vertex of the result is near some projected vertex of P
    const VRep vr = vertex_enumeration(R);
    for (const auto& u : vr.vertices) {
        double best = 1e9;
        for (const auto& w : vp.vertices) best = std::min(best, (u - w.head(2)).norm());
        CHECK(best < 1e-6);
    }
    // and the projection of every vertex of P lies inside the result
    for (const auto& w : vp.vertices) CHECK(contains_point(R, w.head(2), 1e-6));
}

TEST_CASE("project: empty input") {
    CHECK(is_empty(project(HPolytope::empty_set(3), 1, 2)));
}

TEST_CASE("inverse_affine_map: identity") {
    const HPolytope P = square(1.0);
    const HPolytope R = inverse_affine_map(P, AffineMap::identity(2));
    CHECK((R.A() - P.A()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((R.b() - P.b()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inverse_affine_map: scaling, membership grid oracle") {
    Mat A(2, 1);
    A << 1, -1;
    Vec b(2);
    b << 1, 1;
    const HPolytope P(A, b);
    const AffineMap M(Mat::Constant(1, 1, 2.0), Vec::Zero(1));
    const HPolytope R = inverse_affine_map(P, M);
    for (int i = 0; i < 1000; ++i) {
        const Vec x = Vec::Constant(1, -1.0 + 2.0 * i / 999.0);
        CHECK(contains_point(R, x) == contains_point(P, M.apply(x)));
    }
    CHECK(support(R, Vec::Ones(1)) == doctest::Approx(0.5));
}

TEST_CASE("inverse_affine_map: singular map gives a slab") {
    Mat C(2, 2);
    C << 0, 1, 0, 0;
    const AffineMap M(C, Vec::Zero(2));
    const HPolytope P = square(1.0);
    const HPolytope R = inverse_affine_map(P, M);
    CHECK(R.has_degenerate_rows());  // rows of the collapsed coordinate
    TestRng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const Vec x = rng.vec(2, -3.0, 3.0);
        CHECK(contains_point(R, x) == contains_point(P, M.apply(x)));
    }
}

TEST_CASE("is_empty: basics and chebyshev radius") {
    Mat A(2, 1);
    A << 1, -1;
    Vec b(2);
    b << 1, 1;
    CHECK(!is_empty(HPolytope(A, b)));
    b << -1, -1;
    CHECK(is_empty(HPolytope(A, b)));

    TestRng rng(29);
    const HPolytope P = random_polytope(rng, 3, 3);
    const auto [center, radius] = chebyshev_center(P);
    CHECK(!is_empty(P));
    CHECK(radius > 0.0);
    CHECK(contains_point(P, center));
}

TEST_CASE("contains_point: interior, exterior, boundary band") {
    const HPolytope P = square(1.0);
    CHECK(contains_point(P, v2(0, 0)));
    CHECK(!contains_point(P, v2(2, 0)));
    CHECK(contains_point(P, v2(1.0 + 1e-10, 0), 1e-9));
}

TEST_CASE("support: box and triangle directions") {
    const HPolytope P = square(1.0);
    CHECK(support(P, v2(1, 0)) == doctest::Approx(1.0));
    CHECK(support(P, v2(1, 1)) == doctest::Approx(2.0));
    CHECK(support(unit_triangle(), v2(1, 2)) == doctest::Approx(2.0));
}

TEST_CASE("vertex_enumeration: box, simplex, degenerate") {
    const VRep vb = vertex_enumeration(square(1.0));
    REQUIRE(vb.vertices.size() == 4);
    CHECK(vb.vertices[0](0) == doctest::Approx(-1.0));  // lexicographic order

    Mat A(4, 3);
    A << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 1, 1;
    Vec b(4);
    b << 0, 0, 0, 1;
    CHECK(vertex_enumeration(HPolytope(A, b)).vertices.size() == 4);

    // zero-width box: a segment in 3-D
    Vec lo(3), hi(3);
    lo << 0, -1, 0.5;
    hi << 0, 1, 0.5;
    const VRep vs = vertex_enumeration(HPolytope::box(lo, hi));
    CHECK(vs.vertices.size() == 2);
}

TEST_CASE("vertex_enumeration: random 4-D against constraint-subset oracle") {
    TestRng rng(31);
    const HPolytope P0 = random_polytope(rng, 4, 4);
    const HPolytope P = remove_redundancy(P0);
    const VRep got = vertex_enumeration(P);

    // brute force: all 4-subsets of rows, solve, keep feasible solutions
    std::vector<Vec> brute;
    const int m = P.num_constraints();
    for (int a = 0; a < m; ++a)
        for (int b2 = a + 1; b2 < m; ++b2)
            for (int c = b2 + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d) {
                    Mat S(4, 4);
                    S << P.A().row(a), P.A().row(b2), P.A().row(c), P.A().row(d);
                    Vec r(4);
                    r << P.b()(a), P.b()(b2), P.b()(c), P.b()(d);
                    Eigen::FullPivLU<Mat> lu(S);
                    if (!lu.isInvertible()) continue;
                    const Vec x = lu.solve(r);
                    if (contains_point(P, x, 1e-7)) {
                        bool dup = false;
                        for (const auto& y : brute)
                            if ((x - y).norm() < 1e-6) dup = true;
                        if (!dup) brute.push_back(x);
                    }
                }
    REQUIRE(!brute.empty());
    CHECK(got.vertices.size() == brute.size());
    for (const auto& x : brute) {
        double best = 1e9;
        for (const auto& y : got.vertices) best = std::min(best, (x - y).norm());
        CHECK(best < 1e-6);
    }
}

TEST_CASE("vertex_enumeration: unbounded throws, empty returns nothing") {
    Mat A(1, 2);
    A << 1, 0;
    Vec b(1);
    b << 1;
    CHECK_THROWS_AS(vertex_enumeration(HPolytope(A, b)), UnboundedError);
    CHECK(vertex_enumeration(HPolytope::empty_set(2)).vertices.empty());
}

TEST_CASE("sample_interior: containment, determinism, singleton") {
    Mat A(2, 1);
    A << 1, -1;
    Vec b(2);
    b << 1, 1;
    const HPolytope P(A, b);
    const auto s = sample_interior(P, 3, 0);
    REQUIRE(s.size() == 3);
    for (const auto& x : s) CHECK(contains_point(P, x));

    const auto s2 = sample_interior(P, 3, 0);
    for (int i = 0; i < 3; ++i) CHECK(s[i](0) == s2[i](0));  // bit-identical

    const HPolytope single = HPolytope::point(v2(0.3, -0.7));
    const auto ss = sample_interior(single, 5, 42);
    for (const auto& x : ss) {
        CHECK(x(0) == doctest::Approx(0.3).epsilon(1e-9));
        CHECK(x(1) == doctest::Approx(-0.7).epsilon(1e-9));
    }

    CHECK_THROWS_AS(sample_interior(HPolytope::empty_set(2), 1, 0), EmptySetError);
}

TEST_CASE("segment_intersects: crossing, disjoint, grazing sweep oracle") {
    const HPolytope P = square(1.0);
    CHECK(segment_intersects(P, Segment(v2(-2, 0), v2(2, 0))));
    CHECK(!segment_intersects(P, Segment(v2(2, 2), v2(3, 3))));

    // grazing the corner region
    const Segment graze(v2(-2, 1.0), v2(2, 1.0));
    CHECK(segment_intersects(P, graze));

    TestRng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const HPolytope Q = random_polytope(rng, 2, 3);
        const Segment s(rng.vec(2, -3, 3), rng.vec(2, -3, 3));
        const bool got = segment_intersects(Q, s);
        bool oracle = false;
        double closest = 1e9;
        for (int i = 0; i <= 10000; ++i) {
            const Vec x = s.x + (s.y - s.x) * (i / 10000.0);
            const double margin = (Q.A() * x - Q.b()).maxCoeff();
            closest = std::min(closest, margin);
            if (margin <= 0) {
                oracle = true;
                break;
            }
        }
        if (std::abs(closest) < 1e-6) continue;  // boundary band
        CHECK(got == oracle);
    }
}

TEST_CASE("remove_redundancy: duplicates, minimal, loose rows") {
    const HPolytope P = square(1.0);
    const HPolytope dup = intersect(P, P);
    CHECK(remove_redundancy(dup).num_constraints() == 4);
    CHECK(remove_redundancy(P).num_constraints() == 4);

    // hexagon plus loose constraints
    Mat A(6, 2);
    Vec b(6);
    for (int k = 0; k < 6; ++k) {
        A(k, 0) = std::cos(k * M_PI / 3);
        A(k, 1) = std::sin(k * M_PI / 3);
        b(k) = 1.0;
    }
    HPolytope hex(A, b);
    TestRng rng(41);
    Mat A2(16, 2);
    Vec b2(16);
    A2.topRows(6) = A;
    b2.head(6) = b;
    for (int i = 0; i < 10; ++i) {
        Vec a = rng.vec(2);
        a.normalize();
        A2.row(6 + i) = a.transpose();
        b2(6 + i) = rng.uniform(2.0, 5.0);  // strictly outside the hexagon
    }
    const HPolytope cleaned = remove_redundancy(HPolytope(A2, b2));
    CHECK(cleaned.num_constraints() == 6);

    // same set: membership identical over 1000 random points
    for (int i = 0; i < 1000; ++i) {
        const Vec x = rng.vec(2, -2, 2);
        CHECK(contains_point(hex, x, 1e-9) == contains_point(cleaned, x, 1e-9));
    }
}

TEST_CASE("remove_redundancy: degenerate pairs survive") {
    const HPolytope P = HPolytope::point(v2(0.5, 0.5));
    const HPolytope R = remove_redundancy(P);
    CHECK(R.num_constraints() == 4);
    CHECK(contains_point(R, v2(0.5, 0.5)));
    CHECK(!contains_point(R, v2(0.5001, 0.5)));
}

// ---- invariants & properties ----

TEST_CASE("property: one-step preimage equivalence on random triples") {
    TestRng rng(43);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next() % 3);
        const HPolytope P = random_polytope(rng, dim, 3);
        Mat C(dim, dim);
        for (int i = 0; i < dim; ++i) C.row(i) = rng.vec(dim).transpose();
        if (trial % 4 == 0) C.row(0).setZero();  // exercise singular maps
        const AffineMap M(C, rng.vec(dim, -0.5, 0.5));
        const HPolytope R = inverse_affine_map(P, M);
        for (int i = 0; i < 250; ++i) {
            const Vec x = rng.vec(dim, -2, 2);
            const double m1 = (R.A() * x - R.b()).maxCoeff();
            if (std::abs(m1) < 1e-7) continue;
            CHECK(contains_point(R, x, 1e-8) == contains_point(P, M.apply(x), 1e-8));
            ++checked;
        }
    }
    CHECK(checked > 8000);
}

TEST_CASE("property: erosion then dilation stays inside") {
    TestRng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next() % 2);
        const HPolytope P = random_polytope(rng, dim, 3);
        const HPolytope Q = HPolytope::box(Vec::Constant(dim, -0.2), Vec::Constant(dim, 0.2));
        const HPolytope E = pontryagin_diff(P, Q);
        if (is_empty(E)) continue;
        const HPolytope S = minkowski_sum(E, Q);
        for (const auto& x : sample_interior(S, 100, trial)) CHECK(contains_point(P, x, 1e-6));
    }
    // equality for axis-aligned boxes
    const HPolytope B = square(1.0);
    const HPolytope Q = square(0.3);
    const HPolytope S = minkowski_sum(pontryagin_diff(B, Q), Q);
    for (const Vec& d : {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)})
        CHECK(support(S, d) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("property: hull contains both operands") {
    TestRng rng(53);
    for (int trial = 0; trial < 8; ++trial) {
        const HPolytope P = random_polytope(rng, 3, 3);
        HPolytope Q = random_polytope(rng, 3, 3);
        Q = HPolytope(Q.A(), Q.b() + Q.A() * Vec::Constant(3, 1.0));  // shifted copy
        const HPolytope H = convex_hull_pair(P, Q);
        for (const auto& x : sample_interior(P, 60, trial)) CHECK(contains_point(H, x, 1e-6));
        for (const auto& x : sample_interior(Q, 60, trial + 100)) CHECK(contains_point(H, x, 1e-6));
    }
}

TEST_CASE("property: projection soundness and lift feasibility") {
    TestRng rng(59);
    const HPolytope P = random_polytope(rng, 4, 4);
    const HPolytope R = project(P, 1, 2);
    for (const auto& x : sample_interior(P, 200, 9)) CHECK(contains_point(R, x.head(2), 1e-6));
    for (const auto& y : sample_interior(R, 100, 10)) {
        // lift: exists x in P with x_{1:2} = y
        Mat A(P.num_constraints() + 4, 4);
        Vec b(A.rows());
        A.topRows(P.num_constraints()) = P.A();
        b.head(P.num_constraints()) = P.b();
        A.bottomRows(4).setZero();
        A(P.num_constraints(), 0) = 1;
        A(P.num_constraints() + 1, 0) = -1;
        A(P.num_constraints() + 2, 1) = 1;
        A(P.num_constraints() + 3, 1) = -1;
        b(P.num_constraints()) = y(0) + 1e-7;
        b(P.num_constraints() + 1) = -y(0) + 1e-7;
        b(P.num_constraints() + 2) = y(1) + 1e-7;
        b(P.num_constraints() + 3) = -y(1) + 1e-7;
        CHECK(lp_feasible(A, b));
    }
}

TEST_CASE("property: operations are pure") {
    TestRng rng(61);
    const HPolytope P = random_polytope(rng, 3, 4);
    const HPolytope Q = random_polytope(rng, 3, 2);
    const HPolytope H1 = convex_hull_pair(P, Q);
    const HPolytope H2 = convex_hull_pair(P, Q);
    CHECK((H1.A() - H2.A()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((H1.b() - H2.b()).cwiseAbs().maxCoeff() == 0.0);
    const VRep v1 = vertex_enumeration(P);
    const VRep v2r = vertex_enumeration(P);
    REQUIRE(v1.vertices.size() == v2r.vertices.size());
    for (size_t i = 0; i < v1.vertices.size(); ++i)
        CHECK((v1.vertices[i] - v2r.vertices[i]).cwiseAbs().maxCoeff() == 0.0);
}
