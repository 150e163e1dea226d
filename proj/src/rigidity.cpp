#include "ballpoly/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ballpoly {

namespace {

void require_standard(const BallPolyhedron& p, const char* which) {
    const StandardCertificate cert = is_standard(p);
    if (!cert.standard) throw Error(ErrorKind::NotStandard, std::string(which) + " is not standard: " + cert.reason);
}

LatticeIso to_iso(const BallPolyhedron& p, const std::vector<int>& m) {
    const int nv = int(p.vertices.size());
    const int ne = int(p.edges.size());
    const int nf = int(p.faces.size());
    const int qv = nv, qe = ne;  // isomorphic lattices have equal counts
    LatticeIso iso;
    for (int j = 0; j < nv; ++j) iso.vertex.push_back(m[j]);
    for (int e = 0; e < ne; ++e) iso.edge.push_back(m[nv + e] - qv);
    for (int k = 0; k < nf; ++k) iso.face.push_back(m[nv + ne + k] - qv - qe);
    return iso;
}

void require_valid(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso) {
    if (iso.vertex.size() != p.vertices.size() || iso.edge.size() != p.edges.size() ||
        iso.face.size() != p.faces.size() || p.vertices.size() != q.vertices.size() ||
        p.edges.size() != q.edges.size() || p.faces.size() != q.faces.size())
        throw Error(ErrorKind::InvalidArgument, "isomorphism does not match the element counts");
    const int nv = int(p.vertices.size());
    const int ne = int(p.edges.size());
    std::vector<int> m;
    for (int x : iso.vertex) m.push_back(x);
    for (int x : iso.edge) m.push_back(nv + x);
    for (int x : iso.face) m.push_back(nv + ne + x);
    std::vector<int> sorted = m;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < int(sorted.size()); ++i)
        if (sorted[i] != i) throw Error(ErrorKind::InvalidArgument, "isomorphism is not a bijection");
    if (order_violations(vef_poset(p), vef_poset(q), m, false) != 0)
        throw Error(ErrorKind::InvalidArgument, "map does not preserve inclusion");
}

int index_in(const std::array<int, 3>& a, int x) {
    for (int i = 0; i < 3; ++i)
        if (a[i] == x) return i;
    throw Error(ErrorKind::InvalidArgument, "isomorphism breaks a vertex incidence");
}

SphericalPolygon reordered(const SphericalPolygon& poly, const std::vector<int>& order) {
    std::vector<Point3> pts;
    for (int i : order) pts.push_back(poly.vertices[i]);
    return make_spherical_polygon(poly.support, std::move(pts));
}

double dihedral_gap(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso, int e) {
    return std::abs(p.angles.dihedral[e] - q.angles.dihedral[iso.edge[e]]);
}

double length_gap(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso, int e) {
    return std::abs(p.angles.edge_length[e] - q.angles.edge_length[iso.edge[e]]);
}

double face_angle_gap(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso, int j, int k) {
    return p.angles.beta(j, k) - q.angles.beta(iso.vertex[j], iso.face[k]);
}

void require_equal_dihedrals(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                             double eps, bool lengths_too) {
    for (int e = 0; e < int(p.edges.size()); ++e) {
        const double da = dihedral_gap(p, q, iso, e);
        const double dl = lengths_too ? length_gap(p, q, iso, e) : 0.0;
        if (da > eps || dl > eps) {
            std::ostringstream os;
            os << "edge " << e << " (faces " << p.edges[e].faces[0] << ", " << p.edges[e].faces[1] << "): ";
            if (da > eps) os << "dihedral angles differ by " << da;
            else os << "edge lengths differ by " << dl;
            throw Error(ErrorKind::PreconditionFailed, os.str());
        }
    }
}

}  // namespace

std::vector<LatticeIso> all_combinatorial_equivalences(const BallPolyhedron& p, const BallPolyhedron& q,
                                                       std::size_t limit) {
    require_standard(p, "first body");
    require_standard(q, "second body");
    if (p.vertices.size() != q.vertices.size() || p.edges.size() != q.edges.size() ||
        p.faces.size() != q.faces.size())
        return {};
    std::vector<LatticeIso> out;
    for (const auto& m : poset_isomorphisms(vef_poset(p), vef_poset(q), false, limit)) out.push_back(to_iso(p, m));
    return out;
}

std::optional<LatticeIso> combinatorial_equivalence(const BallPolyhedron& p, const BallPolyhedron& q) {
    auto all = all_combinatorial_equivalences(p, q, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

double measurement_discrepancy(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                               Match what) {
    double worst = 0.0;
    if (what == Match::FaceAngle) {
        for (const auto& [flag, beta] : p.angles.face_angle)
            worst = std::max(worst, std::abs(face_angle_gap(p, q, iso, flag.first, flag.second)));
        return worst;
    }
    for (int e = 0; e < int(p.edges.size()); ++e) {
        worst = std::max(worst, dihedral_gap(p, q, iso, e));
        if (what == Match::DihedralAndLength) worst = std::max(worst, length_gap(p, q, iso, e));
    }
    return worst;
}

std::optional<LatticeIso> matching_equivalence(const BallPolyhedron& p, const BallPolyhedron& q, Match what,
                                               const RigidityOptions& opts) {
    const auto all = all_combinatorial_equivalences(p, q);
    if (all.empty()) return std::nullopt;
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < all.size(); ++i) {
        const double g = measurement_discrepancy(p, q, all[i], what);
        if (g < best_gap) {
            best_gap = g;
            best = i;
        }
        if (g <= opts.equal * 1e-3) break;
    }
    return best_gap <= opts.equal ? all[best] : all.front();
}

Isometry congruent(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso, const Tolerance& tol) {
    if (iso.face.size() != p.faces.size())
        throw Error(ErrorKind::InvalidArgument, "isomorphism does not cover every face");
    std::vector<Point3> dst;
    for (int k = 0; k < int(p.faces.size()); ++k) dst.push_back(q.center(iso.face[k]));
    return fit_isometry(p.family.centers, dst, tol);
}

Sign sign_of(double difference, double eps) {
    if (difference > eps) return Sign::Plus;
    if (difference < -eps) return Sign::Minus;
    return Sign::Zero;
}

LegendreCauchyResult legendre_cauchy(const SphericalPolygon& u, const SphericalPolygon& v,
                                     const RigidityOptions& opts) {
    if (u.size() != v.size()) throw Error(ErrorKind::SideLengthMismatch, "polygons have different vertex counts");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(u.sides[i] - v.sides[i]) > opts.equal) {
            std::ostringstream os;
            os << "side " << i << " differs by " << std::abs(u.sides[i] - v.sides[i]);
            throw Error(ErrorKind::SideLengthMismatch, os.str());
        }
    for (const SphericalPolygon* poly : {&u, &v}) {
        if (!is_spherically_convex(*poly, opts.tol.eps_ang))
            throw Error(ErrorKind::NotConvex, "polygon is not spherically convex");
        if (!(hemisphere_margin(*poly) > 0.0))
            throw Error(ErrorKind::NotHemispherical, "polygon is not contained in an open hemisphere");
    }
    LegendreCauchyResult r;
    bool any = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u.angles[i] - v.angles[i];
        r.differences.push_back(d);
        r.signs.push_back(sign_of(d, opts.equal));
        any = any || r.signs.back() != Sign::Zero;
    }
    r.changes = kernels::cyclic_sign_changes(r.signs);
    r.verdict = !any ? LcVerdict::AllZero : (r.changes >= 4 ? LcVerdict::SignChanges : LcVerdict::Violation);
    return r;
}

namespace {

void require_plane(const PlaneGraph& g) {
    if (!g.is_simple()) throw Error(ErrorKind::NotSimple, "graph has loops or parallel arcs");
    if (!g.rotation_consistent() || g.euler_characteristic() != 2)
        throw Error(ErrorKind::NotPlane, "rotation system does not embed the graph in the sphere");
}

}  // namespace

SignCountingReport sign_counting_check(const PlaneGraph& g, const SignSequence& labels) {
    require_plane(g);
    if (labels.size() != g.arcs.size()) throw Error(ErrorKind::InvalidArgument, "one label per arc required");
    SignCountingReport r;
    for (int v = 0; v < g.nodes; ++v) {
        SignSequence around;
        bool nonzero = false;
        for (int a : g.rotation[v]) {
            around.push_back(labels[a]);
            nonzero = nonzero || labels[a] != Sign::Zero;
        }
        const int c = kernels::cyclic_sign_changes(around);
        r.changes.push_back(c);
        if (nonzero && c < 4) {
            r.consistent = false;
            r.violations.push_back(v);
        }
    }
    for (Sign s : labels) r.all_zero = r.all_zero && s == Sign::Zero;
    return r;
}

SignCountingCertificate brute_force_sign_counting(const PlaneGraph& g) {
    require_plane(g);
    const int m = int(g.arcs.size());
    if (m > kMaxBruteForceArcs)
        throw Error(ErrorKind::InvalidArgument, "too many arcs for exhaustive enumeration");
    SignCountingCertificate c;
    c.arcs = m;
    c.labelings = 1;
    for (int i = 0; i < m; ++i) c.labelings *= 3;
    c.admissible = kernels::admissible_labelings_parallel(g.rotation, m);
    c.only_all_zero = c.admissible.size() == 1 && c.admissible[0] == 0;
    return c;
}

PlaneGraph edge_graph(const BallPolyhedron& p) {
    PlaneGraph g;
    g.nodes = int(p.vertices.size());
    for (const auto& e : p.edges) {
        if (e.kind != EdgeKind::Arc) throw Error(ErrorKind::NotStandard, "full-circle edge has no endpoints");
        g.arcs.push_back({e.from, e.to});
    }
    for (const auto& v : p.vertices) g.rotation.push_back({v.edges.begin(), v.edges.end()});
    return g;
}

StokerReport verify_stoker(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                           const RigidityOptions& opts) {
    require_standard(p, "first body");
    require_standard(q, "second body");
    require_valid(p, q, iso);
    require_equal_dihedrals(p, q, iso, opts.equal, true);

    StokerReport r;
    r.iso = iso;
    for (int e = 0; e < int(p.edges.size()); ++e) {
        r.max_dihedral_difference = std::max(r.max_dihedral_difference, dihedral_gap(p, q, iso, e));
        r.max_length_difference = std::max(r.max_length_difference, length_gap(p, q, iso, e));
    }

    for (int j = 0; j < int(p.vertices.size()); ++j) {
        const BpVertex& v = p.vertices[j];
        const BpVertex& w = q.vertices[iso.vertex[j]];
        std::vector<int> order;
        for (int k : v.faces) order.push_back(index_in(w.faces, iso.face[k]));
        r.around_vertex.push_back(legendre_cauchy(normal_image(p, j), reordered(normal_image(q, iso.vertex[j]), order), opts));
        if (r.around_vertex.back().verdict == LcVerdict::Violation)
            r.problems.push_back("fewer than four sign changes around vertex " + std::to_string(j));
    }
    for (int k = 0; k < int(p.faces.size()); ++k) {
        const FaceCycle& cyc = p.faces[k].cycles[0];
        std::vector<Point3> pts;
        for (int j : cyc.vertices) pts.push_back(q.vertices[iso.vertex[j]].point);
        const SphericalPolygon image = make_spherical_polygon({q.center(iso.face[k]), 1.0}, std::move(pts));
        r.around_face.push_back(legendre_cauchy(spherical_convex_hull(p, k), image, opts));
        if (r.around_face.back().verdict == LcVerdict::Violation)
            r.problems.push_back("fewer than four sign changes around face " + std::to_string(k));
    }

    const MedialGraph mg = medial_graph(p);
    r.flags = mg.flags;
    for (const auto& [j, k] : mg.flags) {
        const double d = face_angle_gap(p, q, iso, j, k);
        r.labels.push_back(sign_of(d, opts.equal));
        r.max_face_angle_difference = std::max(r.max_face_angle_difference, std::abs(d));
    }
    r.sign_counting = sign_counting_check(mg.dual, r.labels);
    if (r.sign_counting.counterexample()) r.problems.push_back("sign counting hypothesis holds with nonzero labels");
    r.face_angles_equal = r.max_face_angle_difference <= opts.equal;

    try {
        r.isometry = congruent(p, q, iso, opts.tol);
        r.congruent = true;
    } catch (const Error& e) {
        r.problems.push_back(e.what());
    }
    return r;
}

AlexandrovReport verify_alexandrov(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                                   const RigidityOptions& opts) {
    require_standard(p, "first body");
    require_standard(q, "second body");
    require_valid(p, q, iso);
    AlexandrovReport r;
    r.iso = iso;
    for (const auto& [flag, beta] : p.angles.face_angle) {
        const double d = std::abs(face_angle_gap(p, q, iso, flag.first, flag.second));
        if (d > opts.equal) {
            std::ostringstream os;
            os << "face angle at vertex " << flag.first << " of face " << flag.second << " differs by " << d;
            throw Error(ErrorKind::PreconditionFailed, os.str());
        }
        r.max_face_angle_difference = std::max(r.max_face_angle_difference, d);
    }

    for (int j = 0; j < int(p.vertices.size()); ++j) {
        const BpVertex& w = q.vertices[iso.vertex[j]];
        std::vector<int> order;
        for (int e : p.vertices[j].edges) {
            const auto it = std::find(w.edges.begin(), w.edges.end(), iso.edge[e]);
            if (it == w.edges.end()) throw Error(ErrorKind::InvalidArgument, "isomorphism breaks an edge incidence");
            order.push_back(int(it - w.edges.begin()));
        }
        r.around_vertex.push_back(
            legendre_cauchy(vertex_figure(p, j), reordered(vertex_figure(q, iso.vertex[j]), order), opts));
        if (r.around_vertex.back().verdict == LcVerdict::Violation)
            r.problems.push_back("fewer than four sign changes around vertex " + std::to_string(j));
    }

    for (int e = 0; e < int(p.edges.size()); ++e) {
        const double d = p.angles.dihedral[e] - q.angles.dihedral[iso.edge[e]];
        r.labels.push_back(sign_of(d, opts.equal));
        r.max_dihedral_difference = std::max(r.max_dihedral_difference, std::abs(d));
    }
    r.sign_counting = sign_counting_check(edge_graph(p), r.labels);
    if (r.sign_counting.counterexample()) r.problems.push_back("sign counting hypothesis holds with nonzero labels");
    r.dihedrals_equal = r.max_dihedral_difference <= opts.equal;
    return r;
}

NormalRigidityReport verify_normal_global_rigidity(const BallPolyhedron& p, const BallPolyhedron& q,
                                                   const LatticeIso& iso, const RigidityOptions& opts) {
    if (!is_normal(p, opts.tol).normal) throw Error(ErrorKind::NotNormal, "first body is not normal");
    if (!is_normal(q, opts.tol).normal) throw Error(ErrorKind::NotNormal, "second body is not normal");
    require_valid(p, q, iso);
    require_equal_dihedrals(p, q, iso, opts.equal, false);

    NormalRigidityReport r;
    r.iso = iso;
    for (int e = 0; e < int(p.edges.size()); ++e)
        r.max_dihedral_difference = std::max(r.max_dihedral_difference, dihedral_gap(p, q, iso, e));

    r.duality_p = check_center_duality(p, opts.tol);
    r.duality_q = check_center_duality(q, opts.tol);
    r.duality_ok = r.duality_p.ok() && r.duality_q.ok();
    if (!r.duality_ok) r.problems.push_back("center polyhedron duality fails");

    // Each hull edge length is fixed by the dihedral angle of the dual edge.
    for (int e = 0; e < int(p.edges.size()); ++e) {
        const auto& ep = p.edges[e];
        const auto& eq = q.edges[iso.edge[e]];
        const double dp = distance(p.center(ep.faces[0]), p.center(ep.faces[1]));
        const double dq = distance(q.center(eq.faces[0]), q.center(eq.faces[1]));
        r.hull_edge_lengths.push_back(dp);
        r.max_distance_from_dihedral =
            std::max({r.max_distance_from_dihedral,
                      std::abs(center_distance_from_dihedral(p.angles.dihedral[e]) - dp),
                      std::abs(center_distance_from_dihedral(q.angles.dihedral[iso.edge[e]]) - dq)});
        r.max_hull_edge_difference = std::max(r.max_hull_edge_difference, std::abs(dp - dq));
    }
    r.hull_edges_equal = r.max_hull_edge_difference <= opts.equal && r.max_distance_from_dihedral <= opts.equal;
    if (!r.hull_edges_equal) r.problems.push_back("corresponding hull edges differ");

    // Hull facets are the polygons dual to the vertices; they are inscribed
    // in circles, so equal sides make them congruent.
    for (int j = 0; j < int(p.vertices.size()); ++j) {
        std::vector<Point3> a, b;
        for (int k : p.vertices[j].faces) {
            a.push_back(p.center(k));
            b.push_back(q.center(iso.face[k]));
        }
        const Isometry fit = fit_isometry(a, b, opts.tol, std::numeric_limits<double>::infinity());
        r.max_facet_residual = std::max(r.max_facet_residual, fit.max_residual);
        const double ra = distance(circumcenter(a[0], a[1], a[2]), a[0]);
        const double rb = distance(circumcenter(b[0], b[1], b[2]), b[0]);
        r.max_circumradius_difference = std::max(r.max_circumradius_difference, std::abs(ra - rb));
    }
    r.facets_congruent = r.max_facet_residual <= opts.equal && r.max_circumradius_difference <= opts.equal;
    if (!r.facets_congruent) r.problems.push_back("corresponding hull facets are not congruent");

    try {
        r.isometry = congruent(p, q, iso, opts.tol);
        r.congruent = true;
    } catch (const Error& e) {
        r.problems.push_back(e.what());
    }
    return r;
}

}  // namespace ballpoly
