#include "ballpoly/classification.hpp"

#include <algorithm>
#include <set>

namespace ballpoly {

namespace {

void require_spatial(std::span<const Point3> centers, const Tolerance& tol) {
    std::vector<int> all(centers.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
    if (centers.size() < 4 || voronoi::affine_dimension(centers, all, tol.eps_cosp) < 3)
        throw Error(ErrorKind::CoplanarCenters, "centers lie in a plane; the Voronoi tiling has no vertex");
}

// Vertices of the cell of site i found directly from its halfspaces: every
// triple of bounding planes whose intersection point satisfies all others.
// Returns the largest distance from such a vertex to the site, or -1.
double max_cell_vertex_distance(std::span<const Point3> c, int i, const Tolerance& tol) {
    const int n = int(c.size());
    struct Plane {
        Vec3 normal;
        double offset;
    };
    std::vector<Plane> hs;
    for (int j = 0; j < n; ++j)
        if (j != i) hs.push_back({(c[j] - c[i]) * 2.0, norm2(c[j]) - norm2(c[i])});
    const int m = int(hs.size());
    double best = -1.0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int d = b + 1; d < m; ++d) {
                const Vec3 &na = hs[a].normal, &nb = hs[b].normal, &nd = hs[d].normal;
                const double det = triple(na, nb, nd);
                if (std::abs(det) <= tol.eps_cosp * norm(na) * norm(nb) * norm(nd)) continue;
                // Cramer's rule via the reciprocal basis.
                const Point3 x =
                    (cross(nb, nd) * hs[a].offset + cross(nd, na) * hs[b].offset + cross(na, nb) * hs[d].offset) / det;
                bool feasible = true;
                for (const auto& h : hs)
                    if (dot(h.normal, x) < h.offset - tol.eps_len * std::max(1.0, norm(h.normal))) {
                        feasible = false;
                        break;
                    }
                if (feasible) best = std::max(best, distance(x, c[i]));
            }
    return best;
}

bool near_one(double x, const Tolerance& tol) { return std::abs(x - 1.0) <= tol.eps_len; }

}  // namespace

std::vector<CircumscribedSphere> circumscribed_spheres(const UnitBallFamily& flower, const Tolerance& tol) {
    require_spatial(flower.centers, tol);
    const auto tiling = voronoi::farthest_voronoi(flower.centers, tol);
    std::vector<CircumscribedSphere> out;
    for (const auto& v : tiling.vertices) out.push_back({v.point, v.radius + 1.0, v.indices});
    return out;
}

NormalityReport is_normal(const UnitBallFamily& family, const Tolerance& tol) {
    const auto& c = family.centers;
    require_spatial(c, tol);
    const auto tiling = voronoi::farthest_voronoi(c, tol);
    NormalityReport r;
    r.by_circumscribed_radius = true;
    r.by_interior_vertices = true;
    r.by_cell_vertices = true;
    for (const auto& v : tiling.vertices) {
        VoronoiVertexDiagnostic d;
        d.point = v.point;
        d.indices = v.indices;
        d.rho = v.radius;
        d.delta = v.radius + 1.0;
        double far = 0.0;
        for (const auto& x : c) far = std::max(far, distance(v.point, x));
        d.margin = 1.0 - far;
        r.rho_max = std::max(r.rho_max, d.rho);
        if (!(d.delta < 2.0)) r.by_circumscribed_radius = false;
        if (!(d.margin > 0.0)) r.by_interior_vertices = false;
        if (near_one(d.rho, tol) || std::abs(d.margin) <= tol.eps_len) r.degenerate = true;
        r.vertices.push_back(d);
    }
    for (int i = 0; i < int(c.size()); ++i) {
        const double m = max_cell_vertex_distance(c, i, tol);
        if (m < 0.0) continue;
        if (!(m < 1.0)) r.by_cell_vertices = false;
        if (near_one(m, tol)) r.degenerate = true;
    }
    const bool agree = r.by_circumscribed_radius == r.by_interior_vertices &&
                       r.by_interior_vertices == r.by_cell_vertices;
    if (!agree && !r.degenerate)
        throw Error(ErrorKind::DisagreementBug, "normality definitions disagree away from the threshold");
    r.normal = agree && !r.degenerate && r.by_circumscribed_radius;
    return r;
}

GradedPoset vef_poset(const BallPolyhedron& p) {
    GradedPoset g;
    const int nv = int(p.vertices.size());
    const int ne = int(p.edges.size());
    for (int j = 0; j < nv; ++j) g.add(0);
    for (int e = 0; e < ne; ++e) g.add(1);
    for (std::size_t k = 0; k < p.faces.size(); ++k) g.add(2);
    for (int e = 0; e < ne; ++e) {
        const BpEdge& edge = p.edges[e];
        if (edge.kind == EdgeKind::Arc) {
            g.cover(edge.from, nv + e);
            g.cover(edge.to, nv + e);
        }
        g.cover(nv + e, nv + ne + edge.faces[0]);
        g.cover(nv + e, nv + ne + edge.faces[1]);
    }
    return g;
}

int CenterPolyhedron::find_edge(int a, int b) const {
    const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    const auto it = std::lower_bound(edges.begin(), edges.end(), key);
    return (it != edges.end() && *it == key) ? int(it - edges.begin()) : -1;
}

int CenterPolyhedron::find_facet(const std::vector<int>& s) const {
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (facets[i] == s) return int(i);
    return -1;
}

CenterPolyhedron center_polyhedron(const BallPolyhedron& p, const Tolerance& tol) {
    require_spatial(p.family.centers, tol);
    const auto cx = voronoi::delaunay_complex(p.family.centers, tol);
    CenterPolyhedron cp;
    cp.centers = p.family.centers;
    std::set<std::array<int, 2>> edge_set;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> fs;
    for (const auto& f : cx.facets) {
        if (!f.on_hull()) continue;
        fs.push_back({f.indices, f.cycle});
        for (std::size_t i = 0; i < f.cycle.size(); ++i) {
            const int a = f.cycle[i];
            const int b = f.cycle[(i + 1) % f.cycle.size()];
            edge_set.insert({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(fs.begin(), fs.end());
    cp.edges.assign(edge_set.begin(), edge_set.end());
    const int nc = int(cp.centers.size());
    const int ne = int(cp.edges.size());
    for (int i = 0; i < nc; ++i) cp.lattice.add(0);
    for (int e = 0; e < ne; ++e) {
        cp.lattice.add(1);
        cp.lattice.cover(cp.edges[e][0], nc + e);
        cp.lattice.cover(cp.edges[e][1], nc + e);
    }
    for (const auto& [idx, cyc] : fs) {
        const int id = cp.lattice.add(2);
        cp.facets.push_back(idx);
        cp.facet_cycles.push_back(cyc);
        for (std::size_t i = 0; i < cyc.size(); ++i)
            cp.lattice.cover(nc + cp.find_edge(cyc[i], cyc[(i + 1) % cyc.size()]), id);
    }
    return cp;
}

DualityReport check_center_duality(const BallPolyhedron& p, const Tolerance& tol) {
    const NormalityReport nr = is_normal(p, tol);
    if (!nr.normal) throw Error(ErrorKind::NotNormal, "duality check requires a normal ball-polyhedron");
    DualityReport r;
    const StandardCertificate cert = is_standard(p);
    r.standard = cert.standard;
    if (!cert.standard) r.problems.push_back("not standard: " + cert.reason);

    const auto& centers = p.family.centers;
    const auto cx = voronoi::delaunay_complex(centers, tol);
    const auto tiling = voronoi::voronoi_from_complex(cx, tol);
    const auto full = voronoi::as_families(cx);
    const auto trunc = voronoi::truncated_delaunay(cx, tiling, centers, tol);
    r.complex_equals_truncated =
        full.cells == trunc.cells && full.facets == trunc.facets && full.edges == trunc.edges;
    if (!r.complex_equals_truncated) r.problems.push_back("truncated Delaunay complex differs from the full one");

    const CenterPolyhedron cp = center_polyhedron(p, tol);
    const int nv = int(p.vertices.size());
    const int ne = int(p.edges.size());
    const int nf = int(p.faces.size());
    r.explicit_map_complete = nv == int(cp.facets.size()) && ne == int(cp.edges.size()) &&
                              nf == int(cp.centers.size());
    if (!r.explicit_map_complete) r.problems.push_back("element counts differ from the center polyhedron");

    std::vector<int> map(nv + ne + nf, -1);
    const int cnc = int(cp.centers.size());
    const int cne = int(cp.edges.size());
    for (int j = 0; j < nv; ++j) {
        std::vector<int> s(p.vertices[j].faces.begin(), p.vertices[j].faces.end());
        std::sort(s.begin(), s.end());
        const int f = cp.find_facet(s);
        r.vertex_to_facet.push_back(f);
        if (f >= 0) map[j] = cnc + cne + f;
    }
    for (int e = 0; e < ne; ++e) {
        const int h = cp.find_edge(p.edges[e].faces[0], p.edges[e].faces[1]);
        r.edge_to_hull_edge.push_back(h);
        if (h >= 0) map[nv + e] = cnc + h;
    }
    for (int k = 0; k < nf; ++k) map[nv + ne + k] = k;
    std::set<int> image(map.begin(), map.end());
    if (image.count(-1) || int(image.size()) != nv + ne + nf) {
        r.explicit_map_complete = false;
        r.problems.push_back("explicit correspondence is not a bijection");
    }

    const GradedPoset vef = vef_poset(p);
    if (r.explicit_map_complete) {
        r.order_violations = order_violations(vef, cp.lattice, map, true);
        if (r.order_violations) r.problems.push_back("explicit correspondence reverses inclusion incorrectly");
    }
    r.search_found = !poset_isomorphisms(vef, cp.lattice, true, 1).empty();
    if (!r.search_found) r.problems.push_back("no anti-isomorphism found by search");
    return r;
}

Vec3 SeededRng::unit_vector() {
    while (true) {
        const Vec3 v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const double n = norm(v);
        if (n > 0.1 && n <= 1.0) return v / n;
    }
}

UnitBallFamily gen_regular_tetrahedron(double edge) {
    const double s = edge / std::sqrt(8.0);
    return {{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}};
}

UnitBallFamily gen_standard_not_normal(std::uint64_t seed, const Tolerance& tol) {
    SeededRng rng(seed);
    for (int attempt = 0; attempt < kGeneratorBudget; ++attempt) {
        // Four balls can never work: once rho > 1 every triple of spheres
        // meets P in zero or two points, so two faces always share two
        // edges. With more balls only the edge flip near the outermost
        // Voronoi vertex happens and the result is usually standard.
        const int n = 5 + int(rng.uniform() * 3);
        std::vector<Point3> pts(n);
        for (auto& q : pts) q = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        bool generic = true;
        for (int a = 0; a < n && generic; ++a)
            for (int b = a + 1; b < n && generic; ++b) {
                generic = distance(pts[a], pts[b]) > 0.2;
                for (int d = b + 1; d < n && generic; ++d)
                    generic = norm(cross(pts[b] - pts[a], pts[d] - pts[a])) > 0.05;
            }
        if (!generic) continue;
        try {
            const auto tiling = voronoi::farthest_voronoi(pts, tol);
            std::vector<double> radii;
            for (const auto& v : tiling.vertices) radii.push_back(v.radius);
            std::sort(radii.rbegin(), radii.rend());
            const double l = radii.at(0);
            const double r_feasible = min_enclosing_ball(pts).radius;
            // Below the second largest vertex radius more than one Voronoi
            // vertex would leave P.
            const double lo = std::max(r_feasible, radii.size() > 1 ? radii[1] : 0.0);
            if (l > 10.0 * r_feasible || l - lo < 1e-3 * l) continue;
            const double r1 = lo + 0.9 * (l - lo);
            UnitBallFamily fam;
            for (const auto& q : pts) fam.centers.push_back(q / r1);
            if (!reduce_family(fam.centers, tol).removed.empty()) continue;
            const BallPolyhedron p = build(fam, tol);
            if (!is_standard(p).standard) continue;
            const NormalityReport nr = is_normal(fam, tol);
            if (nr.normal || nr.degenerate) continue;
            return fam;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(ErrorKind::GeneratorExhausted,
                "no standard non-normal instance within " + std::to_string(kGeneratorBudget) + " draws");
}

UnitBallFamily gen_normal_random(int f, std::uint64_t seed, const Tolerance& tol) {
    if (f < 4) throw Error(ErrorKind::InvalidArgument, "need at least four balls");
    SeededRng rng(seed);
    for (int attempt = 0; attempt < kGeneratorBudget; ++attempt) {
        const double s = rng.uniform(0.45, 0.7);
        UnitBallFamily fam;
        for (int i = 0; i < f; ++i) fam.centers.push_back(rng.unit_vector() * (s * rng.uniform(0.9, 1.1)));
        bool separated = true;
        for (int a = 0; a < f && separated; ++a)
            for (int b = a + 1; b < f && separated; ++b) separated = distance(fam.centers[a], fam.centers[b]) > 0.1 * s;
        if (!separated) continue;
        try {
            if (!reduce_family(fam.centers, tol).removed.empty()) continue;
            build(fam, tol);
            const NormalityReport nr = is_normal(fam, tol);
            if (!nr.normal || nr.degenerate) continue;
            return fam;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(ErrorKind::GeneratorExhausted,
                "no normal instance within " + std::to_string(kGeneratorBudget) + " draws");
}

}  // namespace ballpoly
