#include "doctest.h"

#include "ballpoly/geometry.hpp"
#include "test_support.hpp"

using namespace ballpoly;
using testsupport::Rng;

namespace {

const Tolerance kTol{};

// Chord-plane oracle for three centers in the z = 0 plane.
std::vector<Point3> planar_triple_oracle(const Point3& c1, const Point3& c2, const Point3& c3, double r) {
    const double a11 = 2 * (c2.x - c1.x), a12 = 2 * (c2.y - c1.y);
    const double a21 = 2 * (c3.x - c1.x), a22 = 2 * (c3.y - c1.y);
    const double b1 = norm2(c2) - norm2(c1), b2 = norm2(c3) - norm2(c1);
    const double det = a11 * a22 - a12 * a21;
    const double x = (b1 * a22 - a12 * b2) / det;
    const double y = (a11 * b2 - a21 * b1) / det;
    const double z2 = r * r - (x - c1.x) * (x - c1.x) - (y - c1.y) * (y - c1.y);
    if (z2 < 0) return {};
    return {{x, y, std::sqrt(z2)}, {x, y, -std::sqrt(z2)}};
}

}  // namespace

TEST_CASE("sphere triple intersection of an equilateral triangle") {
    const double h = 1.0 / std::sqrt(3.0);
    const Point3 c1{h, 0, 0}, c2{-h / 2, 0.5, 0}, c3{-h / 2, -0.5, 0};
    const auto pts = sphere_triple_intersection(c1, c2, c3, 1.0, kTol);
    const auto oracle = planar_triple_oracle(c1, c2, c3, 1.0);
    REQUIRE(pts.size() == 2);
    REQUIRE(oracle.size() == 2);
    CHECK(std::abs(oracle[0].z - std::sqrt(2.0 / 3.0)) < 1e-12);
    for (int i = 0; i < 2; ++i) CHECK(distance(pts[i], oracle[i]) < 1e-12);
}

TEST_CASE("sphere triple intersection degenerate inputs") {
    SUBCASE("pairwise tangent balls do not share a point") {
        const Point3 c1{0, 0, 0}, c2{2, 0, 0}, c3{1, std::sqrt(3.0), 0};
        CHECK(sphere_triple_intersection(c1, c2, c3, 1.0, kTol).size() <= 1);
    }
    SUBCASE("tangential case yields one point") {
        // Circumradius of a right triangle with hypotenuse 2 is 1.
        const Point3 c1{-1, 0, 0}, c2{1, 0, 0}, c3{0, 1, 0};
        const auto pts = sphere_triple_intersection(c1, c2, c3, 1.0, kTol);
        REQUIRE(pts.size() == 1);
        CHECK(norm(pts[0]) < 1e-12);
    }
    SUBCASE("collinear centers") {
        try {
            sphere_triple_intersection({0, 0, 0}, {0.5, 0, 0}, {1, 0, 0}, 1.0, kTol);
            FAIL("expected CollinearCenters");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CollinearCenters);
        }
    }
}

TEST_CASE("sphere triple intersection property") {
    Rng rng(11);
    for (int it = 0; it < 500; ++it) {
        const Point3 c1 = rng.in_cube(0.6), c2 = rng.in_cube(0.6), c3 = rng.in_cube(0.6);
        if (norm(cross(c2 - c1, c3 - c1)) < 1e-3) continue;
        const auto pts = sphere_triple_intersection(c1, c2, c3, 1.0, kTol);
        for (const auto& p : pts) {
            CHECK(std::abs(distance(p, c1) - 1.0) < kTol.eps_len);
            CHECK(std::abs(distance(p, c2) - 1.0) < kTol.eps_len);
            CHECK(std::abs(distance(p, c3) - 1.0) < kTol.eps_len);
        }
        if (pts.size() == 2) {
            // Mirror images across the plane of the centers.
            const Vec3 n = normalized(cross(c2 - c1, c3 - c1));
            const Point3 mid = (pts[0] + pts[1]) * 0.5;
            CHECK(std::abs(dot(mid - c1, n)) < kTol.eps_len);
            CHECK(norm(cross(pts[0] - pts[1], n)) < kTol.eps_len);
        }
    }
}

TEST_CASE("circumsphere") {
    auto oracle = [](const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4) {
        const Point3 ps[3] = {p2, p3, p4};
        double a[3][3], b[3];
        for (int i = 0; i < 3; ++i) {
            const Vec3 d = ps[i] - p1;
            a[i][0] = 2 * d.x;
            a[i][1] = 2 * d.y;
            a[i][2] = 2 * d.z;
            b[i] = norm2(ps[i]) - norm2(p1);
        }
        return testsupport::solve3(a, b);
    };
    SUBCASE("regular tetrahedron") {
        const auto t = testsupport::regular_tetrahedron(1.0);
        const Sphere s = circumsphere(t[0], t[1], t[2], t[3], kTol);
        const Point3 c = oracle(t[0], t[1], t[2], t[3]);
        CHECK(std::abs(s.radius - std::sqrt(3.0 / 8.0)) < 1e-12);
        CHECK(std::abs(distance(c, t[0]) - std::sqrt(3.0 / 8.0)) < 1e-12);
        CHECK(distance(s.center, c) < 1e-12);
    }
    SUBCASE("cube-inscribed tetrahedron") {
        const Point3 p1{0, 0, 0}, p2{1, 1, 0}, p3{1, 0, 1}, p4{0, 1, 1};
        const Sphere s = circumsphere(p1, p2, p3, p4, kTol);
        const Point3 c = oracle(p1, p2, p3, p4);
        CHECK(distance(c, {0.5, 0.5, 0.5}) < 1e-12);
        CHECK(distance(s.center, c) < 1e-12);
        CHECK(std::abs(s.radius - std::sqrt(3.0) / 2.0) < 1e-12);
    }
    SUBCASE("coplanar points") {
        try {
            circumsphere({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, kTol);
            FAIL("expected CoplanarPoints");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CoplanarPoints);
        }
    }
    SUBCASE("center lies on all perpendicular bisector planes") {
        Rng rng(5);
        for (int it = 0; it < 200; ++it) {
            Point3 p[4];
            for (auto& q : p) q = rng.in_cube(1.0);
            if (std::abs(triple(p[1] - p[0], p[2] - p[0], p[3] - p[0])) < 1e-2) continue;
            const Sphere s = circumsphere(p[0], p[1], p[2], p[3], kTol);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    const Vec3 n = normalized(p[j] - p[i]);
                    CHECK(std::abs(dot(s.center - (p[i] + p[j]) * 0.5, n)) < kTol.eps_len);
                }
        }
    }
}

TEST_CASE("dihedral angle from center distance") {
    // Supporting half-spaces at an explicit edge point; the wedge they cut out
    // has angle pi minus the angle between the outer normals.
    auto oracle = [](double d) {
        const Point3 x1{0, 0, 0}, x2{d, 0, 0};
        const Point3 p{d / 2, std::sqrt(1 - d * d / 4), 0};
        return kPi - angle_between(p - x1, p - x2);
    };
    CHECK(std::abs(dihedral_from_center_distance(1.0) - 2 * kPi / 3) < 1e-12);
    CHECK(std::abs(oracle(1.0) - 2 * kPi / 3) < 1e-12);
    CHECK(std::abs(dihedral_from_center_distance(std::sqrt(2.0)) - kPi / 2) < 1e-12);
    CHECK(std::abs(oracle(std::sqrt(2.0)) - kPi / 2) < 1e-12);
    CHECK(dihedral_from_center_distance(2.0 - 1e-12) < 1e-5);

    for (double bad : {0.0, -1.0, 2.0, 2.5}) {
        try {
            dihedral_from_center_distance(bad);
            FAIL("expected OutOfRange");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::OutOfRange);
        }
    }

    Rng rng(3);
    double prev_d = 0.0, prev_a = kPi;
    for (int i = 1; i < 2000; ++i) {
        const double d = 2.0 * i / 2000.0;
        const double a = dihedral_from_center_distance(d);
        CHECK(a < prev_a);
        CHECK(std::abs(std::sin(a / 2) - std::sqrt(1 - d * d / 4)) < 1e-12);
        CHECK(std::abs(center_distance_from_dihedral(a) - d) < 1e-12);
        CHECK(std::abs(a - (kPi - std::acos(1 - d * d / 2))) < 1e-7);
        prev_d = d;
        prev_a = a;
    }
    (void)prev_d;
}

TEST_CASE("minimum enclosing ball matches subset enumeration") {
    Rng rng(17);
    for (int it = 0; it < 60; ++it) {
        const int n = rng.integer(2, 9);
        std::vector<Point3> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.in_cube(1.0));
        // Brute force: smallest ball determined by 2, 3 or 4 points that contains all.
        double best = 1e18;
        auto consider = [&](const Sphere& s) {
            for (const auto& p : pts)
                if (distance(p, s.center) > s.radius + 1e-10) return;
            best = std::min(best, s.radius);
        };
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                consider({(pts[a] + pts[b]) * 0.5, distance(pts[a], pts[b]) / 2});
                for (int c = b + 1; c < n; ++c) {
                    if (norm(cross(pts[b] - pts[a], pts[c] - pts[a])) > 1e-9) {
                        const Point3 q = circumcenter(pts[a], pts[b], pts[c]);
                        consider({q, distance(q, pts[a])});
                    }
                    for (int d = c + 1; d < n; ++d) {
                        if (std::abs(triple(pts[b] - pts[a], pts[c] - pts[a], pts[d] - pts[a])) < 1e-9) continue;
                        consider(circumsphere(pts[a], pts[b], pts[c], pts[d], kTol));
                    }
                }
            }
        const Sphere s = min_enclosing_ball(pts);
        CHECK(std::abs(s.radius - best) < 1e-9);
        for (const auto& p : pts) CHECK(distance(p, s.center) <= s.radius + 1e-9);
    }
}

TEST_CASE("fit_isometry") {
    Rng rng(23);
    std::vector<Point3> src;
    for (int i = 0; i < 6; ++i) src.push_back(rng.in_cube(1.0));

    SUBCASE("identity") {
        const Isometry g = fit_isometry(src, src, kTol);
        CHECK(g.orientation == Orientation::Preserving);
        CHECK(g.max_residual < 1e-12);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(std::abs(g.rotation.m[i][j] - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
    SUBCASE("random rotations and reflections round-trip") {
        for (int it = 0; it < 100; ++it) {
            const bool reflect = it % 2 == 1;
            const Mat3 r = testsupport::random_orthogonal(rng, reflect);
            const Vec3 t = rng.in_cube(3.0);
            std::vector<Point3> dst;
            for (const auto& p : src) dst.push_back(r * p + t);
            const Isometry g = fit_isometry(src, dst, kTol);
            CHECK(g.orientation == (reflect ? Orientation::Reversing : Orientation::Preserving));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(std::abs(g.rotation.m[i][j] - r.m[i][j]) < kTol.eps_len);
            // Inverse fit composed with g is the identity on the source.
            const Isometry back = fit_isometry(dst, src, kTol);
            for (const auto& p : src) CHECK(distance(back.apply(g.apply(p)), p) < kTol.eps_len);
        }
    }
    SUBCASE("altered distance is not congruent") {
        std::vector<Point3> dst = src;
        dst[0] += normalized(dst[0] - dst[1]) * 0.1;
        try {
            fit_isometry(src, dst, kTol);
            FAIL("expected NotCongruent");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotCongruent);
        }
    }
    SUBCASE("collinear source is flagged") {
        const std::vector<Point3> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
        const Isometry g = fit_isometry(line, line, kTol);
        CHECK(g.degenerate);
    }
}
