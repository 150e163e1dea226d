#include "doctest.h"

#include <numeric>

#include "ballpoly/rigidity.hpp"
#include "rigidity_support.hpp"

using namespace ballpoly;
using testsupport::Rng;

namespace {

const Tolerance kTol{};

BallPolyhedron moved(const BallPolyhedron& p, Rng& rng, bool reflect, Mat3* rot = nullptr, Vec3* shift = nullptr) {
    const Mat3 m = testsupport::random_orthogonal(rng, reflect);
    const Vec3 t = rng.in_cube(2.0);
    if (rot) *rot = m;
    if (shift) *shift = t;
    return build(UnitBallFamily{testsupport::transformed(p.family.centers, m, t)}, kTol);
}

BallPolyhedron relabeled(const BallPolyhedron& p, Rng& rng) {
    std::vector<Point3> c = p.family.centers;
    for (int i = int(c.size()) - 1; i > 0; --i) std::swap(c[i], c[rng.integer(0, i)]);
    return build(UnitBallFamily{c}, kTol);
}

// Number of labelings passing the local hypothesis, by direct enumeration.
std::size_t naive_admissible(const PlaneGraph& g) {
    const int m = int(g.arcs.size());
    std::size_t total = 1, count = 0;
    for (int i = 0; i < m; ++i) total *= 3;
    std::vector<Sign> lab(m);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t x = code;
        for (int i = 0; i < m; ++i, x /= 3) lab[i] = Sign(x % 3);
        bool ok = true;
        for (int v = 0; v < g.nodes && ok; ++v) {
            std::vector<Sign> seq;
            for (int a : g.rotation[v])
                if (lab[a] != Sign::Zero) seq.push_back(lab[a]);
            int changes = 0;
            for (std::size_t i = 0; i < seq.size(); ++i) changes += seq[i] != seq[(i + 1) % seq.size()];
            if (!seq.empty() && changes < 4) ok = false;
        }
        count += ok;
    }
    return count;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("dihedral angle and center distance determine each other") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.uniform(0.01, 1.99);
        const double alpha = dihedral_from_center_distance(d);
        CHECK(alpha == doctest::Approx(M_PI - std::acos(1 - d * d / 2)).epsilon(1e-12));
        CHECK(std::abs(center_distance_from_dihedral(alpha) - d) < 1e-12);
    }
}

TEST_CASE("combinatorial equivalence") {
    const auto tetra = build(gen_regular_tetrahedron(1.0), kTol);
    CHECK(all_combinatorial_equivalences(tetra, tetra).size() == 24);

    Rng rng(2);
    for (const auto& p : testsupport::standard_corpus(3, 15)) {
        const auto q = moved(p, rng, rng.integer(0, 1));
        const auto iso = combinatorial_equivalence(p, q);
        REQUIRE(iso);
        // Moving the centers keeps ball k as face k, so the identity on faces
        // is among the isomorphisms.
        bool identity = false;
        for (const auto& m : all_combinatorial_equivalences(p, q)) {
            std::vector<int> id(p.faces.size());
            std::iota(id.begin(), id.end(), 0);
            identity = identity || m.face == id;
        }
        CHECK(identity);
        if (p.faces.size() != 4) CHECK_FALSE(combinatorial_equivalence(p, tetra));
    }

    const auto lens = build(UnitBallFamily{{{0, 0, 0}, {1, 0, 0}}}, kTol);
    CHECK(kind_of([&] { combinatorial_equivalence(lens, tetra); }) == ErrorKind::NotStandard);
}

TEST_CASE("congruence recovers random isometries") {
    Rng rng(4);
    int perturbed = 0;
    for (const auto& p : testsupport::standard_corpus(5, 20)) {
        for (bool reflect : {false, true}) {
            Mat3 m;
            Vec3 t;
            const auto q = moved(p, rng, reflect, &m, &t);
            const auto iso = matching_equivalence(p, q, Match::DihedralAndLength);
            REQUIRE(iso);
            const Isometry g = congruent(p, q, *iso, kTol);
            CHECK(g.rms_residual < 1e-9);
            CHECK((g.orientation == Orientation::Reversing) == reflect);
            for (const auto& x : p.family.centers) CHECK(distance(g.apply(x), m * x + t) < 1e-9);
        }
        for (const auto& m : all_combinatorial_equivalences(p, p)) {
            std::vector<int> id(p.faces.size());
            std::iota(id.begin(), id.end(), 0);
            if (m.face != id) continue;
            const Isometry g = congruent(p, p, m, kTol);
            CHECK(g.max_residual < 1e-12);
            CHECK(g.orientation == Orientation::Preserving);
        }

        std::vector<Point3> c = p.family.centers;
        c[0] = c[0] + Vec3{1e-2, -1e-2, 1e-2};
        try {
            const auto q = build(reduce_family(c, kTol).family, kTol);
            if (q.faces.size() == p.faces.size() && is_standard(q).standard) {
                const auto iso = matching_equivalence(p, q, Match::DihedralAndLength);
                if (iso) {
                    CHECK(kind_of([&] { congruent(p, q, *iso, kTol); }) == ErrorKind::NotCongruent);
                    ++perturbed;
                }
            }
        } catch (const Error&) {
        }
    }
    CHECK(perturbed >= 5);
}

TEST_CASE("Legendre-Cauchy on the equal-side rhombus family") {
    const double p0 = 0.5, q0 = 0.6;
    const double side = std::acos(std::cos(p0) * std::cos(q0));
    const auto base = testsupport::rhombus(p0, q0);
    for (double s : base.sides) CHECK(s == doctest::Approx(side).epsilon(1e-12));
    CHECK(legendre_cauchy(base, base).verdict == LcVerdict::AllZero);

    for (double p = 0.2; p < 0.75; p += 0.01) {
        const double q = std::acos(std::cos(side) / std::cos(p));
        const auto flexed = testsupport::rhombus(p, q);
        const auto r = legendre_cauchy(base, flexed);
        if (std::abs(p - p0) < 1e-9) {
            CHECK(r.verdict == LcVerdict::AllZero);
        } else {
            CHECK(r.verdict == LcVerdict::SignChanges);
            CHECK(r.changes == 4);
        }
    }

    SUBCASE("rejections") {
        auto bent = testsupport::rhombus(0.5, 0.65);
        CHECK(kind_of([&] { legendre_cauchy(base, bent); }) == ErrorKind::SideLengthMismatch);
        const auto tri = make_spherical_polygon({{0, 0, 0}, 1.0}, {base.vertices[0], base.vertices[1], base.vertices[2]});
        CHECK(kind_of([&] { legendre_cauchy(base, tri); }) == ErrorKind::SideLengthMismatch);
        // A dart: the fourth vertex pushed past the diagonal.
        std::vector<Point3> dart = base.vertices;
        dart[3] = normalized(Point3{0, 0.1, 1});
        const auto d = make_spherical_polygon({{0, 0, 0}, 1.0}, dart);
        CHECK(kind_of([&] { legendre_cauchy(d, d); }) == ErrorKind::NotConvex);
        // Four points on a great circle bound a hemisphere, not a polygon in
        // an open one.
        const auto eq = make_spherical_polygon({{0, 0, 0}, 1.0}, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}});
        CHECK(kind_of([&] { legendre_cauchy(eq, eq); }) == ErrorKind::NotHemispherical);
    }
}

TEST_CASE("Legendre-Cauchy on refolded polygons") {
    Rng rng(6);
    int tested = 0;
    for (int trial = 0; trial < 2000 && tested < 300; ++trial) {
        const int n = rng.integer(4, 7);
        const auto u = testsupport::random_cap_polygon(rng, n);
        const auto up = make_spherical_polygon({{0, 0, 0}, 1.0}, u);
        if (!is_spherically_convex(up, 1e-9)) continue;
        std::vector<double> delta;
        for (int i = 0; i < n - 3; ++i) delta.push_back(rng.uniform(-0.05, 0.05));
        const auto v = testsupport::refold(u, delta);
        if (!v) continue;
        const auto vp = make_spherical_polygon({{0, 0, 0}, 1.0}, *v);
        if (!is_spherically_convex(vp, 1e-9) || hemisphere_margin(vp) <= 0) continue;
        const auto r = legendre_cauchy(up, vp);
        ++tested;
        CHECK(r.verdict != LcVerdict::Violation);
        if (r.verdict == LcVerdict::SignChanges) {
            CHECK(r.changes >= 4);
            CHECK(r.changes % 2 == 0);
        }
    }
    CHECK(tested >= 100);
}

TEST_CASE("sign counting on plane graphs") {
    auto corpus = testsupport::plane_graph_corpus();
    const auto tetra = build(gen_regular_tetrahedron(1.0), kTol);
    const auto mg = medial_graph(tetra);
    corpus.push_back({"tetrahedron medial graph", mg.graph});
    corpus.push_back({"tetrahedron vertex-face graph", mg.dual});

    for (const auto& [name, g] : corpus) {
        CAPTURE(name);
        REQUIRE(g.arcs.size() <= 12);
        REQUIRE(g.euler_characteristic() == 2);
        const SignSequence zeros(g.arcs.size(), Sign::Zero);
        const auto ok = sign_counting_check(g, zeros);
        CHECK(ok.consistent);
        CHECK(ok.all_zero);
        for (int a = 0; a < int(g.arcs.size()); ++a) {
            SignSequence one = zeros;
            one[a] = Sign::Plus;
            const auto r = sign_counting_check(g, one);
            CHECK_FALSE(r.consistent);
            CHECK(std::find(r.violations.begin(), r.violations.end(), g.arcs[a][0]) != r.violations.end());
        }
        const auto cert = brute_force_sign_counting(g);
        CHECK(cert.only_all_zero);
        if (g.arcs.size() <= 9) CHECK(naive_admissible(g) == 1);
    }

    SUBCASE("medial graph of the octahedron pattern") {
        // The medial graph of a tetrahedron is the octahedron graph.
        CHECK(mg.graph.nodes == 6);
        CHECK(mg.graph.arcs.size() == 12);
        for (const auto& rot : mg.graph.rotation) CHECK(rot.size() == 4);
    }

    SUBCASE("rejections") {
        PlaneGraph multi;
        multi.nodes = 2;
        multi.arcs = {{0, 1}, {0, 1}};
        multi.rotation = {{0, 1}, {1, 0}};
        CHECK(kind_of([&] { brute_force_sign_counting(multi); }) == ErrorKind::NotSimple);
        // K4 with a rotation system of genus one.
        PlaneGraph k4 = corpus[0].graph;
        bool found = false;
        for (int v = 0; v < 4 && !found; ++v) {
            std::swap(k4.rotation[v][0], k4.rotation[v][1]);
            found = k4.euler_characteristic() != 2;
        }
        REQUIRE(found);
        CHECK(kind_of([&] { sign_counting_check(k4, SignSequence(6, Sign::Zero)); }) == ErrorKind::NotPlane);
    }
}

TEST_CASE("Stoker pipeline") {
    Rng rng(7);
    for (const auto& p : testsupport::standard_corpus(8, 30)) {
        const auto q = moved(p, rng, rng.integer(0, 1));
        const auto iso = matching_equivalence(p, q, Match::DihedralAndLength);
        REQUIRE(iso);
        const auto r = verify_stoker(p, q, *iso);
        CHECK(r.ok());
        CHECK(r.sign_counting.all_zero);
        CHECK(r.isometry.rms_residual < 1e-9);
        for (const auto& lc : r.around_vertex) CHECK(lc.verdict == LcVerdict::AllZero);
        for (const auto& lc : r.around_face) CHECK(lc.verdict == LcVerdict::AllZero);
        CHECK(r.labels.size() == r.flags.size());
    }

    SUBCASE("relabeled rebuild") {
        for (const auto& p : testsupport::standard_corpus(9, 10)) {
            const auto q = relabeled(p, rng);
            const auto iso = matching_equivalence(p, q, Match::DihedralAndLength);
            REQUIRE(iso);
            const auto r = verify_stoker(p, q, *iso);
            CHECK(r.ok());
            for (int k = 0; k < int(p.faces.size()); ++k)
                CHECK(norm(p.center(k) - q.center(iso->face[k])) < 1e-12);
        }
    }

    SUBCASE("perturbed dihedral angle") {
        const auto p = testsupport::standard_corpus(10, 1)[0];
        auto q = p;
        q.angles.dihedral[2] += 1e-3;
        const auto iso = *combinatorial_equivalence(p, p);
        try {
            verify_stoker(p, q, iso);
            FAIL("expected PreconditionFailed");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PreconditionFailed);
            CHECK(std::string(e.what()).find("edge") != std::string::npos);
        }
    }
}

TEST_CASE("Alexandrov pipeline") {
    Rng rng(11);
    for (const auto& p : testsupport::standard_corpus(12, 20)) {
        for (bool reflect : {false, true}) {
            const auto q = moved(p, rng, reflect);
            const auto iso = matching_equivalence(p, q, Match::FaceAngle);
            REQUIRE(iso);
            const auto r = verify_alexandrov(p, q, *iso);
            CHECK(r.ok());
            CHECK(r.max_dihedral_difference < 1e-9);
            CHECK(r.sign_counting.all_zero);
        }
    }
    const auto p = testsupport::standard_corpus(13, 1)[0];
    auto q = p;
    q.angles.face_angle.begin()->second += 1e-3;
    CHECK(kind_of([&] { verify_alexandrov(p, q, *combinatorial_equivalence(p, p)); }) ==
          ErrorKind::PreconditionFailed);
}

TEST_CASE("normal global rigidity pipeline") {
    Rng rng(14);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto fam = gen_normal_random(4 + int(seed % 6), seed, kTol);
        const auto p = build(fam, kTol);
        const auto q = relabeled(moved(p, rng, rng.integer(0, 1)), rng);
        const auto iso = matching_equivalence(p, q, Match::Dihedral);
        REQUIRE(iso);
        const auto r = verify_normal_global_rigidity(p, q, *iso);
        CHECK(r.ok());
        CHECK(r.isometry.rms_residual < 1e-9);
        CHECK(r.max_distance_from_dihedral < 1e-9);
    }
    const auto bad = build(gen_standard_not_normal(1, kTol), kTol);
    const auto iso = *combinatorial_equivalence(bad, bad);
    CHECK(kind_of([&] { verify_normal_global_rigidity(bad, bad, iso); }) == ErrorKind::NotNormal);
}
