#include "doctest.h"

#include <set>

#include "ballpoly/ball_polyhedron.hpp"
#include "test_support.hpp"

using namespace ballpoly;
using testsupport::Rng;

namespace {

const Tolerance kTol{};

BallPolyhedron build_reduced(const std::vector<Point3>& centers) {
    return build(reduce_family(centers, kTol).family, kTol);
}

// Random instances of varying shape, all reduced.
std::vector<BallPolyhedron> corpus(std::uint64_t seed, int count) {
    Rng rng(seed);
    std::vector<BallPolyhedron> out;
    while (int(out.size()) < count) {
        const int n = rng.integer(4, 10);
        std::vector<Point3> pts = rng.integer(0, 1) ? testsupport::sphere_points(rng, n, rng.uniform(0.3, 0.75), 0.05)
                                                    : testsupport::general_position_points(rng, n, 0.45);
        try {
            out.push_back(build_reduced(pts));
        } catch (const Error& e) {
            // Near-degenerate draws are rejected by the library; skip them.
            if (e.kind() != ErrorKind::DegenerateVertex && e.kind() != ErrorKind::EmptyInterior) throw;
        }
    }
    return out;
}

Point3 random_point_on_sphere(Rng& rng, const Point3& c) { return c + rng.unit(); }

}  // namespace

TEST_CASE("regular tetrahedron ball-polyhedron") {
    const auto t = testsupport::regular_tetrahedron(1.0);
    const BallPolyhedron p = build({t}, kTol);
    CHECK(p.vertices.size() == 4);
    CHECK(p.edges.size() == 6);
    CHECK(p.faces.size() == 4);
    const auto oracle = testsupport::brute_force_ball_vertices(t);
    REQUIRE(oracle.size() == 4);
    for (const auto& q : oracle) {
        double best = 1e9;
        for (const auto& v : p.vertices) best = std::min(best, distance(v.point, q));
        CHECK(best < 1e-12);
    }
    for (double a : p.angles.dihedral) CHECK(std::abs(a - 2 * kPi / 3) < 1e-12);
    for (double len : p.angles.edge_length) CHECK(std::abs(len - p.angles.edge_length[0]) < 1e-12);
    for (const auto& f : p.faces) {
        REQUIRE(f.cycles.size() == 1);
        CHECK(f.cycles[0].edges.size() == 3);
    }
    const auto cert = is_standard(p);
    CHECK(cert.standard);
    CHECK(cert.reason.empty());
    CHECK(is_simplicial(p));
}

TEST_CASE("two balls give a lens") {
    const BallPolyhedron p = build({{{0, 0, 0}, {1, 0, 0}}}, kTol);
    CHECK(p.vertices.empty());
    REQUIRE(p.edges.size() == 1);
    CHECK(p.edges[0].kind == EdgeKind::FullCircle);
    CHECK(std::abs(p.edges[0].circle_radius - std::sqrt(0.75)) < 1e-15);
    CHECK(p.faces.size() == 2);
    CHECK_FALSE(is_standard(p).standard);
    CHECK_FALSE(is_simplicial(p));
    CHECK(face_cap_representation(p, 0).size() == 1);
    CHECK_THROWS_AS(vertex_figure(p, 0), Error);
    try {
        medial_graph(p);
        FAIL("expected NotStandard");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotStandard);
    }
}

TEST_CASE("three balls are never standard") {
    const BallPolyhedron p = build({{{0, 0, 0}, {1, 0, 0}, {0.5, 0.8, 0}}}, kTol);
    CHECK(p.vertices.size() == 2);
    CHECK(p.edges.size() == 3);
    const auto cert = is_standard(p);
    CHECK_FALSE(cert.standard);
    CHECK_THROWS_AS(spherical_convex_hull(p, 0), Error);
}

TEST_CASE("build rejects bad families") {
    SUBCASE("empty interior") {
        try {
            build({{{0, 0, 0}, {2.0, 0, 0}}}, kTol);
            FAIL("expected EmptyInterior");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EmptyInterior);
        }
    }
    SUBCASE("interior center is not reduced") {
        auto c = testsupport::regular_tetrahedron(1.0);
        c.push_back({0.01, 0.02, -0.01});
        try {
            build({c}, kTol);
            FAIL("expected NotReduced");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotReduced);
        }
    }
    SUBCASE("four concurrent spheres") {
        // Centers on a circle of the unit sphere around the origin: the
        // origin is a boundary point on four spheres.
        std::vector<Point3> c;
        for (int i = 0; i < 4; ++i) c.push_back({0.6 * std::cos(i * kPi / 2), 0.6 * std::sin(i * kPi / 2), 0.8});
        try {
            build({c}, kTol);
            FAIL("expected DegenerateVertex");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DegenerateVertex);
        }
    }
}

TEST_CASE("reduce_family") {
    SUBCASE("already reduced is the identity") {
        const auto t = testsupport::regular_tetrahedron(1.0);
        const auto r = reduce_family(t, kTol);
        CHECK(r.removed.empty());
        CHECK(r.kept == std::vector<int>{0, 1, 2, 3});
    }
    SUBCASE("near-twin center") {
        auto c = testsupport::regular_tetrahedron(1.0);
        c.push_back(c[0] + normalized(c[0]) * 1e-3);
        const auto r = reduce_family(c, kTol);
        REQUIRE(r.removed.size() == 1);
        CHECK((r.removed[0] == 0 || r.removed[0] == 4));
        // Membership oracle: the reduced family defines the same body.
        Rng rng(5);
        for (int i = 0; i < 20000; ++i) {
            const Point3 x = rng.in_cube(0.6);
            bool full = true, reduced = true;
            for (const auto& y : c) full = full && distance(x, y) <= 1.0;
            for (const auto& y : r.family.centers) reduced = reduced && distance(x, y) <= 1.0;
            CHECK(full == reduced);
        }
    }
    SUBCASE("far apart centers") {
        try {
            reduce_family(std::vector<Point3>{{0, 0, 0}, {2.5, 0, 0}, {0, 1, 0}}, kTol);
            FAIL("expected EmptyInterior");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EmptyInterior);
        }
    }
    SUBCASE("random clouds: removed balls never touch the boundary") {
        Rng rng(77);
        for (int it = 0; it < 20; ++it) {
            std::vector<Point3> c;
            for (int i = 0; i < 12; ++i) c.push_back(rng.in_cube(0.3));
            const auto r = reduce_family(c, kTol);
            CHECK(r.kept.size() + r.removed.size() == c.size());
            for (int i = 0; i < 4000; ++i) {
                const Point3 x = rng.in_cube(0.8);
                bool full = true, reduced = true;
                for (const auto& y : c) full = full && distance(x, y) <= 1.0;
                for (const auto& y : r.family.centers) reduced = reduced && distance(x, y) <= 1.0;
                CHECK(full == reduced);
            }
            // Every kept ball reaches the boundary.
            const auto p = build(r.family, kTol);
            for (const auto& f : p.faces) CHECK_FALSE(f.edges.empty());
        }
    }
}

TEST_CASE("vertices match the brute-force oracle") {
    for (const auto& p : corpus(3, 40)) {
        const auto oracle = testsupport::brute_force_ball_vertices(p.family.centers);
        CHECK(oracle.size() == p.vertices.size());
        for (const auto& q : oracle) {
            double best = 1e9;
            for (const auto& v : p.vertices) best = std::min(best, distance(v.point, q));
            CHECK(best < 1e-9);
        }
    }
}

TEST_CASE("edge radius identity and arc lengths") {
    for (const auto& p : corpus(4, 40)) {
        for (std::size_t e = 0; e < p.edges.size(); ++e) {
            const auto& edge = p.edges[e];
            const double d = distance(p.center(edge.faces[0]), p.center(edge.faces[1]));
            CHECK(std::abs(edge.circle_radius - std::sin(p.angles.dihedral[e] / 2)) < 1e-9);
            CHECK(std::abs(edge.circle_radius - std::sqrt(1 - d * d / 4)) < 1e-12);
            if (edge.kind != EdgeKind::Arc) continue;
            // Arc length against a polyline refinement.
            const Point3 a = p.vertices[edge.from].point;
            const Point3 b = p.vertices[edge.to].point;
            CHECK(std::abs(distance(a, edge.circle_center) - edge.circle_radius) < 1e-9);
            CHECK(std::abs(distance(b, edge.circle_center) - edge.circle_radius) < 1e-9);
            const Vec3 u0 = normalized(a - edge.circle_center);
            const Vec3 w0 = cross(edge.axis, u0);
            double poly = 0;
            Point3 prev = a;
            const int steps = 4000;
            for (int s = 1; s <= steps; ++s) {
                const double th = edge.sweep * s / steps;
                const Point3 q = edge.circle_center + (u0 * std::cos(th) + w0 * std::sin(th)) * edge.circle_radius;
                poly += distance(prev, q);
                prev = q;
            }
            CHECK(distance(prev, b) < 1e-9);
            CHECK(std::abs(poly - p.angles.edge_length[e]) < 1e-6);
        }
    }
}

TEST_CASE("Euler relation and poset consistency on standard instances") {
    int standard = 0;
    for (const auto& p : corpus(5, 60)) {
        for (const auto& v : p.vertices) {
            std::set<int> fs(v.faces.begin(), v.faces.end());
            CHECK(fs.size() == 3);
        }
        if (!is_standard(p).standard) continue;
        ++standard;
        CHECK(int(p.vertices.size()) - int(p.edges.size()) + int(p.faces.size()) == 2);
        if (is_simplicial(p)) CHECK(is_standard(p).standard);
        for (int e = 0; e < int(p.edges.size()); ++e) {
            int count = 0;
            for (const auto& f : p.faces) count += int(std::count(f.edges.begin(), f.edges.end(), e));
            CHECK(count == 2);
        }
    }
    CHECK(standard > 30);
}

TEST_CASE("face angles: tangent route agrees with the cap route") {
    for (const auto& p : corpus(6, 40)) {
        for (const auto& [key, beta] : p.angles.face_angle) {
            CHECK(beta > 0.0);
            CHECK(beta < kPi);
            CHECK(std::abs(beta - cap_face_angle(p, key.first, key.second)) < kTol.eps_ang);
        }
    }
}

TEST_CASE("vertex figure and normal image") {
    SUBCASE("regular tetrahedron normal image is equilateral with sides pi/3") {
        const auto t = testsupport::regular_tetrahedron(1.0);
        const BallPolyhedron p = build({t}, kTol);
        for (int j = 0; j < 4; ++j) {
            const auto ni = normal_image(p, j);
            // Explicit normals: unit vectors from the centers to the vertex.
            for (int i = 0; i < 3; ++i) {
                const Vec3 a = p.vertices[j].point - t[p.vertices[j].faces[i]];
                const Vec3 b = p.vertices[j].point - t[p.vertices[j].faces[(i + 1) % 3]];
                CHECK(std::abs(std::acos(dot(a, b)) - kPi / 3) < 1e-12);
                CHECK(std::abs(ni.sides[i] - kPi / 3) < 1e-12);
            }
        }
    }
    SUBCASE("side and angle formulas and polarity") {
        for (const auto& p : corpus(7, 40)) {
            for (int j = 0; j < int(p.vertices.size()); ++j) {
                const auto& v = p.vertices[j];
                if (std::count(v.edges.begin(), v.edges.end(), -1)) continue;
                const auto vf = vertex_figure(p, j);
                const auto ni = normal_image(p, j);
                CHECK(is_spherically_convex(vf, 1e-12));
                CHECK(is_spherically_convex(ni, 1e-12));
                CHECK(hemisphere_margin(ni) > 0);
                for (int i = 0; i < 3; ++i) {
                    const int e = v.edges[i];
                    const int next_face = v.faces[(i + 1) % 3];
                    CHECK(std::abs(vf.sides[i] - p.angles.beta(j, next_face)) < kTol.eps_ang);
                    CHECK(std::abs(vf.angles[i] - p.angles.dihedral[e]) < kTol.eps_ang);
                    CHECK(std::abs(ni.sides[i] - (kPi - p.angles.dihedral[e])) < kTol.eps_ang);
                    CHECK(std::abs(ni.angles[i] - (kPi - p.angles.beta(j, v.faces[i]))) < kTol.eps_ang);
                    // Sides of the normal image are pi minus the angles of the vertex figure.
                    CHECK(std::abs(ni.sides[i] - (kPi - vf.angles[i])) < kTol.eps_ang);
                    // Polar of the normal-image side (faces i, i+1) is the
                    // vertex-figure vertex for edge i.
                    const Vec3 a = ni.direction(i);
                    const Vec3 b = ni.direction((i + 1) % 3);
                    Vec3 polar = normalized(cross(a, b));
                    if (dot(polar, ni.direction((i + 2) % 3)) > 0) polar = -polar;
                    CHECK(distance(polar, vf.direction(i)) < 1e-9);
                }
            }
        }
    }
    SUBCASE("lens has no vertices") { CHECK_THROWS_AS(normal_image(build({{{0, 0, 0}, {1, 0, 0}}}, kTol), 0), Error); }
}

TEST_CASE("cap representation of faces") {
    SUBCASE("tetrahedron caps have radius pi/3") {
        const BallPolyhedron p = build({testsupport::regular_tetrahedron(1.0)}, kTol);
        for (int k = 0; k < 4; ++k) {
            const auto caps = face_cap_representation(p, k);
            REQUIRE(caps.size() == 3);
            for (const auto& c : caps) {
                CHECK(std::abs(c.angular_radius - kPi / 3) < 1e-12);
                CHECK(std::abs(distance(c.cap_center, c.sphere_center) - 1) < 1e-12);
            }
        }
    }
    SUBCASE("membership in caps equals membership in the body") {
        Rng rng(9);
        for (const auto& p : corpus(8, 25)) {
            for (int k = 0; k < int(p.faces.size()); ++k) {
                const auto caps = face_cap_representation(p, k);
                for (int s = 0; s < 400; ++s) {
                    const Point3 y = random_point_on_sphere(rng, p.center(k));
                    // Skip samples too close to a face boundary to call.
                    double margin = 1e9;
                    for (int m = 0; m < int(p.family.size()); ++m)
                        if (m != k) margin = std::min(margin, std::abs(distance(y, p.center(m)) - 1));
                    if (margin < 1e-6) continue;
                    bool in_caps = true;
                    for (const auto& c : caps) in_caps = in_caps && c.contains(y, 0);
                    bool in_body = true;
                    for (int m = 0; m < int(p.family.size()); ++m)
                        if (m != k) in_body = in_body && distance(y, p.center(m)) <= 1.0;
                    CHECK(in_caps == in_body);
                }
            }
        }
    }
}

TEST_CASE("spherical convex hull of a face") {
    for (const auto& p : corpus(10, 25)) {
        if (!is_standard(p).standard) continue;
        for (int k = 0; k < int(p.faces.size()); ++k) {
            const auto hull = spherical_convex_hull(p, k);
            CHECK(is_spherically_convex(hull, 1e-12));
            CHECK(hemisphere_margin(hull) > 0);
            const auto caps = face_cap_representation(p, k);
            for (std::size_t i = 0; i < hull.size(); ++i)
                for (int s = 0; s <= 20; ++s) {
                    const Point3 q = geodesic_point(hull.support, hull.vertices[i],
                                                    hull.vertices[(i + 1) % hull.size()], s / 20.0);
                    for (const auto& c : caps) CHECK(c.contains(q, 1e-12));
                }
        }
    }
}

TEST_CASE("medial graph") {
    SUBCASE("tetrahedron: octahedron pattern") {
        const BallPolyhedron p = build({testsupport::regular_tetrahedron(1.0)}, kTol);
        const auto m = medial_graph(p);
        CHECK(m.graph.nodes == 6);
        CHECK(m.graph.arcs.size() == 12);
        CHECK(m.graph.is_simple());
        CHECK(m.graph.rotation_consistent());
        CHECK(m.graph.euler_characteristic() == 2);
        // Oracle: pairs of edges sharing a vertex and a face.
        std::set<std::pair<int, int>> expect;
        for (const auto& f : p.faces)
            for (int a : f.edges)
                for (int b : f.edges) {
                    if (a >= b) continue;
                    const auto& ea = p.edges[a];
                    const auto& eb = p.edges[b];
                    if (ea.from == eb.from || ea.from == eb.to || ea.to == eb.from || ea.to == eb.to)
                        expect.insert({a, b});
                }
        std::set<std::pair<int, int>> got;
        for (const auto& a : m.graph.arcs) got.insert({std::min(a[0], a[1]), std::max(a[0], a[1])});
        CHECK(got == expect);
        for (int v = 0; v < 6; ++v) CHECK(m.graph.rotation[v].size() == 4);
    }
    SUBCASE("random standard instances") {
        for (const auto& p : corpus(11, 40)) {
            if (!is_standard(p).standard) continue;
            const auto m = medial_graph(p);
            CHECK(m.graph.rotation_consistent());
            CHECK(m.graph.is_simple());
            CHECK(m.graph.euler_characteristic() == 2);
            CHECK(m.graph.arcs.size() == 2 * p.edges.size());
            CHECK(m.dual.rotation_consistent());
            CHECK(m.dual.is_simple());
            CHECK(m.dual.euler_characteristic() == 2);
            CHECK(m.dual.nodes == int(p.vertices.size() + p.faces.size()));
            // The combinatorial dual has one node per vertex and face of P,
            // with the same degrees as the explicit incidence graph.
            const PlaneGraph d = m.graph.dual();
            CHECK(d.nodes == m.dual.nodes);
            std::multiset<std::size_t> deg_a, deg_b;
            for (const auto& r : d.rotation) deg_a.insert(r.size());
            for (const auto& r : m.dual.rotation) deg_b.insert(r.size());
            CHECK(deg_a == deg_b);
        }
    }
}
