#include "ballpoly/ball_polyhedron.hpp"

#include <algorithm>
#include <set>

#include "ballpoly/kernels.hpp"

namespace ballpoly {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

struct Circle {
    Point3 center;
    Vec3 axis;
    Vec3 e1;
    Vec3 e2;
    double radius = 0.0;

    Point3 at(double theta) const { return center + (e1 * std::cos(theta) + e2 * std::sin(theta)) * radius; }
    double angle_of(const Point3& p) const {
        const Vec3 w = p - center;
        double t = std::atan2(dot(w, e2), dot(w, e1));
        return t < 0.0 ? t + kTwoPi : t;
    }
};

Circle pair_circle(const Point3& a, const Point3& b) {
    Circle c;
    const double d = distance(a, b);
    c.center = (a + b) * 0.5;
    c.axis = (b - a) / d;
    c.e1 = any_orthogonal(c.axis);
    c.e2 = cross(c.axis, c.e1);
    c.radius = std::sqrt(std::max(0.0, 1.0 - d * d / 4.0));
    return c;
}

bool inside_others(std::span<const Point3> centers, const Point3& p, int a, int b) {
    for (int k = 0; k < int(centers.size()); ++k) {
        if (k == a || k == b) continue;
        if (distance(p, centers[k]) > 1.0) return false;
    }
    return true;
}

void check_family(std::span<const Point3> centers, const Tolerance& tol) {
    if (centers.empty()) throw Error(ErrorKind::InvalidArgument, "empty family");
    for (const auto& c : centers)
        if (!is_finite(c)) throw Error(ErrorKind::InvalidArgument, "non-finite center");
    const double r = min_enclosing_ball(centers).radius;
    if (r >= 1.0 - tol.eps_len)
        throw Error(ErrorKind::EmptyInterior, "centers do not fit in a unit ball (enclosing radius " +
                                                  std::to_string(r) + ")");
}

// Edges of every pair circle; vertices must already be known.
std::vector<BpEdge> pair_edges(std::span<const Point3> centers, const std::vector<BpVertex>& vertices,
                               const std::vector<std::vector<int>>& vertex_balls) {
    std::vector<BpEdge> edges;
    const int f = int(centers.size());
    for (int a = 0; a < f; ++a) {
        for (int b = a + 1; b < f; ++b) {
            const Circle circ = pair_circle(centers[a], centers[b]);
            std::vector<std::pair<double, int>> on;
            for (int j = 0; j < int(vertices.size()); ++j) {
                const auto& vb = vertex_balls[j];
                if (std::binary_search(vb.begin(), vb.end(), a) && std::binary_search(vb.begin(), vb.end(), b))
                    on.push_back({circ.angle_of(vertices[j].point), j});
            }
            std::sort(on.begin(), on.end());
            BpEdge proto;
            proto.faces = {a, b};
            proto.circle_center = circ.center;
            proto.axis = circ.axis;
            proto.circle_radius = circ.radius;
            if (on.empty()) {
                if (!inside_others(centers, circ.at(0.0), a, b)) continue;
                proto.kind = EdgeKind::FullCircle;
                proto.sweep = kTwoPi;
                proto.midpoint = circ.at(0.0);
                edges.push_back(proto);
                continue;
            }
            for (std::size_t i = 0; i < on.size(); ++i) {
                const auto& [t0, j0] = on[i];
                const auto& [t1raw, j1] = on[(i + 1) % on.size()];
                const double t1 = (i + 1 < on.size()) ? t1raw : t1raw + kTwoPi;
                const Point3 mid = circ.at(0.5 * (t0 + t1));
                if (!inside_others(centers, mid, a, b)) continue;
                BpEdge e = proto;
                e.from = j0;
                e.to = j1;
                e.sweep = t1 - t0;
                e.midpoint = mid;
                edges.push_back(e);
            }
        }
    }
    return edges;
}

std::vector<std::vector<int>> balls_with_edges(int f, const std::vector<BpEdge>& edges) {
    std::vector<std::vector<int>> per(f);
    for (int e = 0; e < int(edges.size()); ++e) {
        per[edges[e].faces[0]].push_back(e);
        per[edges[e].faces[1]].push_back(e);
    }
    return per;
}

// Vertices of the arrangement; rejects degenerate incidences.
std::vector<BpVertex> arrangement_vertices(std::span<const Point3> centers, const Tolerance& tol,
                                           std::vector<std::vector<int>>& vertex_balls) {
    const auto raw = kernels::ball_vertices_parallel(centers, tol);
    std::vector<BpVertex> out;
    vertex_balls.clear();
    for (const auto& bv : raw) {
        if (bv.incident.size() > 3)
            throw Error(ErrorKind::DegenerateVertex,
                        std::to_string(bv.incident.size()) + " spheres pass through one boundary point");
        if (bv.tangent) throw Error(ErrorKind::DegenerateVertex, "tangential triple intersection on the boundary");
        BpVertex v;
        v.point = bv.point;
        std::array<int, 3> fs{bv.incident[0], bv.incident[1], bv.incident[2]};
        const Vec3 n0 = v.point - centers[fs[0]];
        const Vec3 n1 = v.point - centers[fs[1]];
        const Vec3 n2 = v.point - centers[fs[2]];
        if (triple(n0, n1, n2) < 0.0) std::swap(fs[1], fs[2]);
        v.faces = fs;
        v.edges = {-1, -1, -1};
        out.push_back(v);
        vertex_balls.push_back(bv.incident);
    }
    return out;
}

// Unit tangent at v pointing into edge e.
Vec3 edge_tangent(const BallPolyhedron& p, int e, const Point3& v) {
    const BpEdge& edge = p.edges[e];
    Vec3 t = normalized(cross(v - p.center(edge.faces[0]), v - p.center(edge.faces[1])));
    if (dot(t, edge.midpoint - v) < 0.0) t = -t;
    return t;
}

void assemble_face_cycles(BallPolyhedron& p) {
    const int f = int(p.family.size());
    p.faces.assign(f, {});
    for (int k = 0; k < f; ++k) p.faces[k].ball = k;
    const auto per = balls_with_edges(f, p.edges);
    for (int k = 0; k < f; ++k) {
        BpFace& face = p.faces[k];
        face.edges = per[k];
        std::set<int> verts, nbrs;
        // Oriented copies: start, end, edge.
        std::vector<std::array<int, 3>> oriented;
        for (int e : per[k]) {
            const BpEdge& edge = p.edges[e];
            nbrs.insert(edge.other_face(k));
            if (edge.kind == EdgeKind::FullCircle) {
                face.cycles.push_back({{e}, {}});
                continue;
            }
            verts.insert(edge.from);
            verts.insert(edge.to);
            if (edge.faces[0] == k) oriented.push_back({edge.from, edge.to, e});
            else oriented.push_back({edge.to, edge.from, e});
        }
        face.vertices.assign(verts.begin(), verts.end());
        face.neighbors.assign(nbrs.begin(), nbrs.end());
        std::sort(oriented.begin(), oriented.end());
        std::vector<char> used(oriented.size(), 0);
        for (std::size_t s = 0; s < oriented.size(); ++s) {
            if (used[s]) continue;
            FaceCycle cyc;
            std::size_t cur = s;
            while (true) {
                used[cur] = 1;
                cyc.vertices.push_back(oriented[cur][0]);
                cyc.edges.push_back(oriented[cur][2]);
                const int end = oriented[cur][1];
                std::size_t next = oriented.size();
                for (std::size_t c = 0; c < oriented.size(); ++c)
                    if (!used[c] && oriented[c][0] == end) {
                        next = c;
                        break;
                    }
                if (next == oriented.size()) break;
                cur = next;
            }
            face.cycles.push_back(std::move(cyc));
        }
    }
}

void link_vertex_edges(BallPolyhedron& p) {
    for (int j = 0; j < int(p.vertices.size()); ++j) {
        BpVertex& v = p.vertices[j];
        for (int i = 0; i < 3; ++i) {
            const int a = std::min(v.faces[i], v.faces[(i + 1) % 3]);
            const int b = std::max(v.faces[i], v.faces[(i + 1) % 3]);
            for (int e = 0; e < int(p.edges.size()); ++e) {
                const BpEdge& edge = p.edges[e];
                if (edge.faces[0] == a && edge.faces[1] == b && (edge.from == j || edge.to == j)) {
                    v.edges[i] = e;
                    break;
                }
            }
        }
    }
}

void fill_angles(BallPolyhedron& p) {
    AngleData& ad = p.angles;
    ad.dihedral.resize(p.edges.size());
    ad.edge_length.resize(p.edges.size());
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        const BpEdge& edge = p.edges[e];
        ad.dihedral[e] = dihedral_from_center_distance(distance(p.center(edge.faces[0]), p.center(edge.faces[1])));
        ad.edge_length[e] = edge.circle_radius * edge.sweep;
    }
    for (const BpFace& face : p.faces) {
        for (const FaceCycle& cyc : face.cycles) {
            const std::size_t n = cyc.vertices.size();
            for (std::size_t i = 0; i < n; ++i) {
                const int j = cyc.vertices[i];
                const int e_in = cyc.edges[(i + n - 1) % n];
                const int e_out = cyc.edges[i];
                if (p.edges[e_in].is_loop() || p.edges[e_out].is_loop()) continue;
                const Point3& v = p.vertices[j].point;
                ad.face_angle[{j, face.ball}] = angle_between(edge_tangent(p, e_in, v), edge_tangent(p, e_out, v));
            }
        }
    }
}

}  // namespace

int BallPolyhedron::find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < int(edges.size()); ++e)
        if (edges[e].faces[0] == a && edges[e].faces[1] == b) return e;
    return -1;
}

bool BallPolyhedron::in_all_balls(const Point3& p, double eps) const {
    for (const auto& c : family.centers)
        if (distance(p, c) > 1.0 + eps) return false;
    return true;
}

Reduction reduce_family(std::span<const Point3> centers, const Tolerance& tol) {
    check_family(centers, tol);
    Reduction r;
    for (int i = 0; i < int(centers.size()); ++i) {
        bool dup = false;
        for (int k : r.kept) dup = dup || distance(centers[i], centers[k]) <= tol.eps_len;
        if (dup) r.removed.push_back(i);
        else r.kept.push_back(i);
    }
    while (r.kept.size() > 1) {
        std::vector<Point3> cur;
        for (int k : r.kept) cur.push_back(centers[k]);
        std::vector<std::vector<int>> vb;
        const auto verts = arrangement_vertices(cur, tol, vb);
        const auto per = balls_with_edges(int(cur.size()), pair_edges(cur, verts, vb));
        std::vector<int> next;
        for (std::size_t i = 0; i < r.kept.size(); ++i) {
            if (per[i].empty()) r.removed.push_back(r.kept[i]);
            else next.push_back(r.kept[i]);
        }
        if (next.size() == r.kept.size()) break;
        r.kept = std::move(next);
    }
    std::sort(r.removed.begin(), r.removed.end());
    for (int k : r.kept) r.family.centers.push_back(centers[k]);
    return r;
}

BallPolyhedron build(const UnitBallFamily& family, const Tolerance& tol) {
    check_family(family.centers, tol);
    const int f = int(family.size());
    for (int a = 0; a < f; ++a)
        for (int b = a + 1; b < f; ++b)
            if (distance(family.centers[a], family.centers[b]) <= tol.eps_len)
                throw Error(ErrorKind::DuplicateCenters,
                            "centers " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
    BallPolyhedron p;
    p.family = family;
    std::vector<std::vector<int>> vb;
    p.vertices = arrangement_vertices(family.centers, tol, vb);
    p.edges = pair_edges(family.centers, p.vertices, vb);
    assemble_face_cycles(p);
    if (f > 1)
        for (int k = 0; k < f; ++k)
            if (p.faces[k].edges.empty())
                throw Error(ErrorKind::NotReduced, "ball " + std::to_string(k) + " does not reach the boundary");
    link_vertex_edges(p);
    fill_angles(p);
    return p;
}

std::vector<SphericalCap> face_cap_representation(const BallPolyhedron& p, int k) {
    if (k < 0 || k >= int(p.faces.size())) throw Error(ErrorKind::InvalidArgument, "face index out of range");
    std::vector<SphericalCap> caps;
    const Point3& xk = p.center(k);
    for (int i : p.faces[k].neighbors) {
        const Point3& xi = p.center(i);
        SphericalCap cap;
        cap.sphere_center = xk;
        cap.cap_center = xk + (xi - xk) / distance(xi, xk);
        cap.angular_radius = dihedral_from_center_distance(distance(xi, xk)) / 2.0;
        caps.push_back(cap);
    }
    return caps;
}

double cap_face_angle(const BallPolyhedron& p, int j, int k) {
    const BpVertex& v = p.vertices.at(j);
    std::vector<int> others;
    for (int f : v.faces)
        if (f != k) others.push_back(f);
    if (others.size() != 2) throw Error(ErrorKind::InvalidArgument, "vertex does not lie on the face");
    const Point3& xk = p.center(k);
    const Vec3 n = v.point - xk;
    const Vec3 ul = normalized(p.center(others[0]) - xk);
    const Vec3 um = normalized(p.center(others[1]) - xk);
    Vec3 tl = normalized(cross(n, ul));
    Vec3 tm = normalized(cross(n, um));
    if (dot(tl, um) < 0.0) tl = -tl;
    if (dot(tm, ul) < 0.0) tm = -tm;
    return angle_between(tl, tm);
}

SphericalPolygon vertex_figure(const BallPolyhedron& p, int j) {
    if (j < 0 || j >= int(p.vertices.size())) throw Error(ErrorKind::DegenerateVertex, "no such vertex");
    const BpVertex& v = p.vertices[j];
    std::vector<Point3> pts;
    for (int e : v.edges) {
        if (e < 0) throw Error(ErrorKind::DegenerateVertex, "vertex is missing an edge");
        pts.push_back(v.point + edge_tangent(p, e, v.point));
    }
    return make_spherical_polygon({v.point, 1.0}, std::move(pts));
}

SphericalPolygon normal_image(const BallPolyhedron& p, int j) {
    if (j < 0 || j >= int(p.vertices.size())) throw Error(ErrorKind::DegenerateVertex, "no such vertex");
    const BpVertex& v = p.vertices[j];
    std::vector<Point3> pts;
    for (int k : v.faces) pts.push_back(v.point + normalized(v.point - p.center(k)));
    return make_spherical_polygon({v.point, 1.0}, std::move(pts));
}

SphericalPolygon spherical_convex_hull(const BallPolyhedron& p, int k) {
    if (k < 0 || k >= int(p.faces.size())) throw Error(ErrorKind::InvalidArgument, "face index out of range");
    const BpFace& face = p.faces[k];
    if (face.cycles.size() != 1 || face.cycles[0].vertices.size() < 3)
        throw Error(ErrorKind::TooFewVertices, "face " + std::to_string(k) + " has fewer than three vertices");
    std::vector<Point3> pts;
    for (int j : face.cycles[0].vertices) pts.push_back(p.vertices[j].point);
    return make_spherical_polygon({p.center(k), 1.0}, std::move(pts));
}

StandardCertificate is_standard(const BallPolyhedron& p) {
    auto fail = [](std::string why, int a, int b) {
        return StandardCertificate{false, std::move(why), {a, b}};
    };
    const int f = int(p.faces.size());
    if (f < 4) return fail("fewer than four generating balls", -1, -1);
    for (int e = 0; e < int(p.edges.size()); ++e) {
        if (p.edges[e].kind == EdgeKind::FullCircle) return fail("full-circle edge", e, e);
        if (p.edges[e].is_loop()) return fail("edge closes on a single vertex", e, e);
    }
    for (int k = 0; k < f; ++k)
        if (p.faces[k].cycles.size() != 1) return fail("face with several boundary cycles", k, k);
    for (const auto& v : p.vertices)
        for (int e : v.edges)
            if (e < 0) return fail("vertex without an edge between two of its faces", v.faces[0], v.faces[1]);

    for (int a = 0; a < f; ++a) {
        for (int b = a + 1; b < f; ++b) {
            std::vector<int> shared_edges;
            for (int e : p.faces[a].edges)
                if (p.edges[e].other_face(a) == b) shared_edges.push_back(e);
            std::vector<int> shared_verts;
            std::set_intersection(p.faces[a].vertices.begin(), p.faces[a].vertices.end(),
                                  p.faces[b].vertices.begin(), p.faces[b].vertices.end(),
                                  std::back_inserter(shared_verts));
            if (shared_edges.size() > 1) return fail("two faces share more than one edge", a, b);
            if (shared_edges.empty()) {
                if (shared_verts.size() > 1) return fail("two faces meet in several vertices", a, b);
                continue;
            }
            const BpEdge& e = p.edges[shared_edges[0]];
            std::vector<int> ends{std::min(e.from, e.to), std::max(e.from, e.to)};
            if (shared_verts != ends) return fail("two faces meet in an edge and a further vertex", a, b);
        }
    }
    for (int e1 = 0; e1 < int(p.edges.size()); ++e1) {
        for (int e2 = e1 + 1; e2 < int(p.edges.size()); ++e2) {
            const auto& a = p.edges[e1];
            const auto& b = p.edges[e2];
            const int common = int(a.from == b.from || a.from == b.to) + int(a.to == b.from || a.to == b.to);
            if (common > 1) return fail("two edges share both endpoints", e1, e2);
        }
    }
    return {};
}

bool is_simplicial(const BallPolyhedron& p) {
    if (p.faces.empty()) return false;
    for (const auto& face : p.faces)
        if (face.cycles.size() != 1 || face.cycles[0].edges.size() != 3 || face.cycles[0].vertices.size() != 3)
            return false;
    for (const auto& e : p.edges)
        if (e.kind != EdgeKind::Arc || e.is_loop()) return false;
    return true;
}

MedialGraph medial_graph(const BallPolyhedron& p) {
    const StandardCertificate cert = is_standard(p);
    if (!cert.standard) throw Error(ErrorKind::NotStandard, cert.reason);
    MedialGraph m;
    std::map<std::pair<int, int>, int> flag_id;
    std::vector<std::array<int, 2>> flag_edges;
    for (const BpFace& face : p.faces) {
        const FaceCycle& cyc = face.cycles[0];
        const std::size_t n = cyc.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            flag_id[{cyc.vertices[i], face.ball}] = int(m.flags.size());
            m.flags.push_back({cyc.vertices[i], face.ball});
            flag_edges.push_back({cyc.edges[(i + n - 1) % n], cyc.edges[i]});
        }
    }
    const int nv = int(p.vertices.size());
    const int nf = int(p.faces.size());

    PlaneGraph& g = m.graph;
    g.nodes = int(p.edges.size());
    g.arcs = flag_edges;
    g.rotation.resize(p.edges.size());
    for (int e = 0; e < int(p.edges.size()); ++e) {
        const BpEdge& edge = p.edges[e];
        const int left = edge.faces[0];
        const int right = edge.faces[1];
        g.rotation[e] = {flag_id.at({edge.to, left}), flag_id.at({edge.from, left}), flag_id.at({edge.from, right}),
                         flag_id.at({edge.to, right})};
    }

    PlaneGraph& d = m.dual;
    d.nodes = nv + nf;
    d.rotation.resize(nv + nf);
    for (const auto& [j, k] : m.flags) d.arcs.push_back({j, nv + k});
    for (int j = 0; j < nv; ++j)
        for (int k : p.vertices[j].faces) d.rotation[j].push_back(flag_id.at({j, k}));
    for (const BpFace& face : p.faces)
        for (int j : face.cycles[0].vertices) d.rotation[nv + face.ball].push_back(flag_id.at({j, face.ball}));
    return m;
}

}  // namespace ballpoly
