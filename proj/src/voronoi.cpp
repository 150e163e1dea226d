#include "ballpoly/voronoi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "ballpoly/kernels.hpp"

namespace ballpoly::voronoi {

namespace {

std::string set_str(const IndexSet& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

// Sign of x with a rejection band: |x| <= eps_cosp is zero, up to eps_len is ambiguous.
int banded_sign(double x, const Tolerance& tol, ErrorKind kind, const char* what) {
    if (std::abs(x) <= tol.eps_cosp) return 0;
    if (std::abs(x) <= tol.eps_len)
        throw Error(kind, std::string(what) + " within the ambiguity band (" + std::to_string(x) + ")");
    return x > 0 ? 1 : -1;
}

void check_distinct(std::span<const Point3> centers, const Tolerance& tol) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (!is_finite(centers[i])) throw Error(ErrorKind::InvalidArgument, "non-finite center");
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (distance(centers[i], centers[j]) <= tol.eps_len)
                throw Error(ErrorKind::DuplicateCenters,
                            "centers " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
}

std::vector<int> cyclic_order(std::span<const Point3> centers, const IndexSet& s, const Vec3& normal) {
    Point3 g;
    for (int i : s) g += centers[i];
    g = g / double(s.size());
    Vec3 e1 = centers[s[0]] - g;
    e1 = normalized(e1 - normal * dot(e1, normal));
    const Vec3 e2 = cross(normal, e1);
    std::vector<std::pair<double, int>> keyed;
    for (int i : s) {
        const Vec3 d = centers[i] - g;
        keyed.emplace_back(std::atan2(dot(d, e2), dot(d, e1)), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (const auto& [a, i] : keyed) out.push_back(i);
    return out;
}

struct Pivot {
    IndexSet facet;
    Point3 q0;
    Vec3 n;
    double r0 = 0.0;
    double t_lo = -kInf, t_hi = kInf;
    IndexSet cell_lo, cell_hi;
    bool member = false;
};

// Spheres through a cocircular set lie on a line of centers; find the range of
// that line for which every other center is strictly inside.
Pivot pivot(std::span<const Point3> centers, const IndexSet& seed, const Tolerance& tol) {
    Pivot pv;
    int a = seed[0], b = -1, c = -1;
    for (std::size_t i = 1; i < seed.size() && c < 0; ++i)
        for (std::size_t j = i + 1; j < seed.size(); ++j)
            if (norm(cross(centers[seed[i]] - centers[a], centers[seed[j]] - centers[a])) > tol.eps_cosp) {
                b = seed[i];
                c = seed[j];
                break;
            }
    if (c < 0) throw Error(ErrorKind::CoplanarInput, "facet seed is collinear");
    pv.q0 = circumcenter(centers[a], centers[b], centers[c]);
    pv.n = normalized(cross(centers[b] - centers[a], centers[c] - centers[a]));
    pv.r0 = distance(pv.q0, centers[a]);

    const int n = int(centers.size());
    std::vector<double> s(n), g(n);
    std::vector<int> side(n, 0);
    for (int m = 0; m < n; ++m) {
        const Vec3 d = centers[m] - pv.q0;
        s[m] = dot(d, pv.n);
        g[m] = norm2(d) - pv.r0 * pv.r0;
        side[m] = banded_sign(s[m], tol, ErrorKind::AmbiguousCosphericity, "facet plane offset");
        if (side[m] == 0) {
            const int circ = banded_sign(norm(d) - pv.r0, tol, ErrorKind::AmbiguousCosphericity, "facet circle offset");
            if (circ == 0) pv.facet.push_back(m);
            else if (circ > 0) return pv;  // coplanar center outside the circle: not a member
        }
    }
    for (int m = 0; m < n; ++m) {
        if (side[m] == 0) continue;
        const double tau = g[m] / (2.0 * s[m]);
        if (side[m] > 0) pv.t_lo = std::max(pv.t_lo, tau);
        else pv.t_hi = std::min(pv.t_hi, tau);
    }
    if (std::isfinite(pv.t_lo) && std::isfinite(pv.t_hi)) {
        const double gap = pv.t_hi - pv.t_lo;
        if (gap <= tol.eps_len) {
            if (gap >= -tol.eps_len)
                throw Error(ErrorKind::AmbiguousCosphericity, "facet " + set_str(pv.facet) + " has a vanishing Voronoi edge");
            return pv;
        }
    }
    pv.member = true;
    auto collect = [&](double t, int want_side, IndexSet& out) {
        out = pv.facet;
        const Point3 q = pv.q0 + pv.n * t;
        const double r = std::sqrt(pv.r0 * pv.r0 + t * t);
        for (int m = 0; m < n; ++m) {
            if (side[m] != want_side) continue;
            const int on = banded_sign(distance(centers[m], q) - r, tol, ErrorKind::AmbiguousCosphericity,
                                       "cosphericity offset");
            if (on == 0) out.push_back(m);
        }
        std::sort(out.begin(), out.end());
    };
    if (std::isfinite(pv.t_lo)) collect(pv.t_lo, 1, pv.cell_lo);
    if (std::isfinite(pv.t_hi)) collect(pv.t_hi, -1, pv.cell_hi);
    return pv;
}

// Facets of the convex polytope spanned by a cospherical set.
std::vector<IndexSet> polytope_facets(std::span<const Point3> centers, const IndexSet& cell, const Tolerance& tol) {
    std::vector<IndexSet> out;
    const int k = int(cell.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int l = j + 1; l < k; ++l) {
                const Point3& p = centers[cell[i]];
                const Vec3 nrm = cross(centers[cell[j]] - p, centers[cell[l]] - p);
                if (norm(nrm) <= tol.eps_cosp) continue;
                const Vec3 u = normalized(nrm);
                IndexSet face;
                int pos = 0, neg = 0;
                for (int m : cell) {
                    const double s = dot(centers[m] - p, u);
                    if (std::abs(s) <= tol.eps_len) face.push_back(m);
                    else if (s > 0) ++pos;
                    else ++neg;
                }
                if (pos > 0 && neg > 0) continue;
                if (std::find(out.begin(), out.end(), face) == out.end()) out.push_back(face);
            }
    return out;
}

}  // namespace

int affine_dimension(std::span<const Point3> centers, const IndexSet& idx, double eps) {
    if (idx.empty()) return -1;
    const Point3 p0 = centers[idx[0]];
    int far1 = idx[0];
    for (int i : idx)
        if (distance(centers[i], p0) > distance(centers[far1], p0)) far1 = i;
    if (distance(centers[far1], p0) <= eps) return 0;
    const Vec3 u = normalized(centers[far1] - p0);
    int far2 = -1;
    double best = 0.0;
    for (int i : idx) {
        const double d = norm(cross(centers[i] - p0, u));
        if (d > best) { best = d; far2 = i; }
    }
    if (best <= eps) return 1;
    const Vec3 nrm = normalized(cross(u, centers[far2] - p0));
    best = 0.0;
    for (int i : idx) best = std::max(best, std::abs(dot(centers[i] - p0, nrm)));
    return best <= eps ? 2 : 3;
}

IndexSet farthest_set(std::span<const Point3> centers, const Point3& x, double eps) {
    double mx = 0.0;
    for (const auto& c : centers) mx = std::max(mx, distance(c, x));
    IndexSet out;
    for (int i = 0; i < int(centers.size()); ++i)
        if (distance(centers[i], x) >= mx - eps) out.push_back(i);
    return out;
}

int DelaunayComplex::find_cell(const IndexSet& s) const {
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].indices == s) return int(i);
    return -1;
}

int DelaunayComplex::find_facet(const IndexSet& s) const {
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (facets[i].indices == s) return int(i);
    return -1;
}

int DelaunayComplex::find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].indices[0] == a && edges[i].indices[1] == b) return int(i);
    return -1;
}

DelaunayComplex delaunay_complex(std::span<const Point3> centers, const Tolerance& tol) {
    check_distinct(centers, tol);
    const int n = int(centers.size());
    IndexSet all(n);
    std::iota(all.begin(), all.end(), 0);
    if (n < 4 || affine_dimension(centers, all, tol.eps_cosp) < 3)
        throw Error(ErrorKind::CoplanarInput, "Delaunay complex needs centers spanning 3-space");

    DelaunayComplex cx;
    cx.centers.assign(centers.begin(), centers.end());
    std::map<IndexSet, int> cell_ids, facet_ids;
    std::deque<int> pending;

    auto add_cell = [&](const IndexSet& s, const Pivot& pv, double t) {
        auto it = cell_ids.find(s);
        if (it != cell_ids.end()) return it->second;
        DelaunayCell cell{s, pv.q0 + pv.n * t, std::sqrt(pv.r0 * pv.r0 + t * t)};
        const int id = int(cx.cells.size());
        cx.cells.push_back(cell);
        cell_ids.emplace(s, id);
        pending.push_back(id);
        return id;
    };
    auto add_facet = [&](const Pivot& pv) {
        DelaunayFacet f;
        f.indices = pv.facet;
        f.cycle = cyclic_order(centers, pv.facet, pv.n);
        f.axis_origin = pv.q0;
        f.axis = pv.n;
        f.base_radius = pv.r0;
        f.t_lo = pv.t_lo;
        f.t_hi = pv.t_hi;
        if (std::isfinite(pv.t_lo)) f.cell_lo = add_cell(pv.cell_lo, pv, pv.t_lo);
        if (std::isfinite(pv.t_hi)) f.cell_hi = add_cell(pv.cell_hi, pv, pv.t_hi);
        facet_ids.emplace(f.indices, int(cx.facets.size()));
        cx.facets.push_back(std::move(f));
    };

    // Seed: any Delaunay facet on the hull boundary.
    bool seeded = false;
    for (int i = 0; i < n && !seeded; ++i)
        for (int j = i + 1; j < n && !seeded; ++j)
            for (int k = j + 1; k < n && !seeded; ++k) {
                const Vec3 nrm = cross(centers[j] - centers[i], centers[k] - centers[i]);
                if (norm(nrm) <= tol.eps_cosp) continue;
                const Vec3 u = normalized(nrm);
                int pos = 0, neg = 0;
                for (int m = 0; m < n; ++m) {
                    const double s = dot(centers[m] - centers[i], u);
                    if (s > tol.eps_cosp) ++pos;
                    else if (s < -tol.eps_cosp) ++neg;
                }
                if (pos > 0 && neg > 0) continue;
                const Pivot pv = pivot(centers, {i, j, k}, tol);
                if (!pv.member || (std::isfinite(pv.t_lo) && std::isfinite(pv.t_hi))) continue;
                if (facet_ids.count(pv.facet)) continue;
                add_facet(pv);
                seeded = true;
            }
    if (!seeded) throw Error(ErrorKind::AmbiguousCosphericity, "no hull facet of the Delaunay complex found");

    while (!pending.empty()) {
        const int cid = pending.front();
        pending.pop_front();
        const IndexSet cell = cx.cells[cid].indices;
        for (const IndexSet& face : polytope_facets(centers, cell, tol)) {
            if (facet_ids.count(face)) continue;
            const Pivot pv = pivot(centers, face, tol);
            if (!pv.member || pv.facet != face)
                throw Error(ErrorKind::AmbiguousCosphericity,
                            "facet " + set_str(face) + " of cell " + set_str(cell) + " fails the empty-sphere test");
            add_facet(pv);
            const auto& f = cx.facets.back();
            if (f.cell_lo != cid && f.cell_hi != cid)
                throw Error(ErrorKind::AmbiguousCosphericity, "pivot across " + set_str(face) + " lost its cell");
        }
    }

    std::map<std::array<int, 2>, int> edge_ids;
    for (int fi = 0; fi < int(cx.facets.size()); ++fi) {
        const auto& cyc = cx.facets[fi].cycle;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            std::array<int, 2> e{cyc[i], cyc[(i + 1) % cyc.size()]};
            if (e[0] > e[1]) std::swap(e[0], e[1]);
            auto [it, inserted] = edge_ids.emplace(e, int(cx.edges.size()));
            if (inserted) cx.edges.push_back({e, {}});
            cx.edges[it->second].facets.push_back(fi);
        }
    }
    std::sort(cx.edges.begin(), cx.edges.end(), [](const auto& x, const auto& y) { return x.indices < y.indices; });

    for (const auto& c : cx.cells) cx.vertex_set.insert(cx.vertex_set.end(), c.indices.begin(), c.indices.end());
    std::sort(cx.vertex_set.begin(), cx.vertex_set.end());
    cx.vertex_set.erase(std::unique(cx.vertex_set.begin(), cx.vertex_set.end()), cx.vertex_set.end());
    return cx;
}

namespace {

std::vector<VoronoiCell> make_cells(std::span<const Point3> centers, const IndexSet& nonempty) {
    std::vector<VoronoiCell> cells(centers.size());
    for (int i = 0; i < int(centers.size()); ++i) {
        cells[i].site = i;
        cells[i].empty = !std::binary_search(nonempty.begin(), nonempty.end(), i);
        for (int j = 0; j < int(centers.size()); ++j) {
            if (j == i) continue;
            cells[i].halfspaces.push_back(
                {j, (centers[j] - centers[i]) * 2.0, norm2(centers[j]) - norm2(centers[i])});
        }
    }
    return cells;
}

double diameter(std::span<const Point3> centers) {
    double d = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) d = std::max(d, distance(centers[i], centers[j]));
    return d;
}

// Lower-dimensional inputs: no Voronoi vertices; edges (if any) are full lines.
VoronoiTiling planar_voronoi(std::span<const Point3> centers, int dim, const Tolerance& tol) {
    VoronoiTiling vt;
    vt.centers.assign(centers.begin(), centers.end());
    vt.clip_radius = 10.0 * diameter(centers);
    const int n = int(centers.size());

    if (dim <= 1) {
        int a = 0, b = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (distance(centers[i], centers[j]) > distance(centers[a], centers[b])) { a = i; b = j; }
        VoronoiFace f;
        f.sites = {a, b};
        f.bounded = false;
        f.witness = (centers[a] + centers[b]) * 0.5;
        vt.faces.push_back(f);
        vt.cells = make_cells(centers, {a, b});
        return vt;
    }

    IndexSet all(n);
    std::iota(all.begin(), all.end(), 0);
    Vec3 plane_n;
    for (int i = 1; i < n && norm(plane_n) == 0.0; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Vec3 c = cross(centers[i] - centers[0], centers[j] - centers[0]);
            if (norm(c) > tol.eps_cosp) { plane_n = normalized(c); break; }
        }

    std::map<IndexSet, int> seen;
    std::map<std::array<int, 2>, std::vector<int>> pair_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (norm(cross(centers[j] - centers[i], centers[k] - centers[i])) <= tol.eps_cosp) continue;
                const Point3 q = circumcenter(centers[i], centers[j], centers[k]);
                const double r = distance(q, centers[i]);
                IndexSet on;
                bool ok = true;
                for (int m = 0; m < n && ok; ++m) {
                    const int s = banded_sign(distance(centers[m], q) - r, tol, ErrorKind::DegenerateTies,
                                              "cocircularity offset");
                    if (s > 0) ok = false;
                    else if (s == 0) on.push_back(m);
                }
                if (!ok || seen.count(on)) continue;
                seen.emplace(on, int(vt.edges.size()));
                VoronoiEdge e;
                e.indices = on;
                e.shape = EdgeShape::Line;
                e.origin = q;
                e.direction = plane_n;
                e.witness = q;
                e.clipped_end = q + plane_n * vt.clip_radius;
                e.axis_origin = q;
                e.axis = plane_n;
                e.base_radius = r;
                const auto cyc = cyclic_order(centers, on, plane_n);
                for (std::size_t t = 0; t < cyc.size(); ++t) {
                    std::array<int, 2> pr{cyc[t], cyc[(t + 1) % cyc.size()]};
                    if (pr[0] > pr[1]) std::swap(pr[0], pr[1]);
                    pair_edges[pr].push_back(int(vt.edges.size()));
                }
                vt.edges.push_back(e);
            }

    IndexSet nonempty;
    for (const auto& [pr, es] : pair_edges) {
        VoronoiFace f;
        f.sites = pr;
        f.edges = es;
        f.bounded = false;
        nonempty.push_back(pr[0]);
        nonempty.push_back(pr[1]);
        if (es.size() == 1) {
            // Half-plane: step from the boundary line towards the side away from the pair.
            const VoronoiEdge& e = vt.edges[es[0]];
            Point3 g;
            for (int i : e.indices) g += centers[i];
            g = g / double(e.indices.size());
            const Point3 mid = (centers[pr[0]] + centers[pr[1]]) * 0.5;
            Vec3 w = cross(plane_n, centers[pr[1]] - centers[pr[0]]);
            w = normalized(w);
            if (dot(w, g - mid) < 0) w = -w;
            f.witness = e.origin + w;
        } else {
            Point3 g;
            for (int ei : es) g += vt.edges[ei].origin;
            f.witness = g / double(es.size());
        }
        vt.faces.push_back(f);
    }
    std::sort(nonempty.begin(), nonempty.end());
    nonempty.erase(std::unique(nonempty.begin(), nonempty.end()), nonempty.end());
    vt.cells = make_cells(centers, nonempty);
    return vt;
}

}  // namespace

VoronoiTiling voronoi_from_complex(const DelaunayComplex& cx, const Tolerance&) {
    VoronoiTiling vt;
    vt.centers = cx.centers;
    vt.clip_radius = 10.0 * diameter(cx.centers);
    vt.cells = make_cells(cx.centers, cx.vertex_set);

    for (int c = 0; c < int(cx.cells.size()); ++c) {
        const auto& cell = cx.cells[c];
        vt.vertices.push_back({cell.center, cell.indices, cell.radius, c});
        for (int i : cell.indices) vt.cells[i].vertices.push_back(c);
    }

    for (int fi = 0; fi < int(cx.facets.size()); ++fi) {
        const auto& f = cx.facets[fi];
        VoronoiEdge e;
        e.indices = f.indices;
        e.delaunay_facet = fi;
        e.axis_origin = f.axis_origin;
        e.axis = f.axis;
        e.base_radius = f.base_radius;
        e.t_lo = f.t_lo;
        e.t_hi = f.t_hi;
        if (f.cell_lo >= 0 && f.cell_hi >= 0) {
            e.shape = EdgeShape::Segment;
            e.from = f.cell_lo;
            e.to = f.cell_hi;
            e.origin = f.sphere_center(f.t_lo);
            e.direction = f.axis;
            e.clipped_end = f.sphere_center(f.t_hi);
            e.witness = f.sphere_center(0.5 * (f.t_lo + f.t_hi));
        } else if (f.cell_lo >= 0) {
            e.shape = EdgeShape::Ray;
            e.from = f.cell_lo;
            e.origin = f.sphere_center(f.t_lo);
            e.direction = f.axis;
            e.clipped_end = e.origin + e.direction * vt.clip_radius;
            e.witness = f.sphere_center(f.t_lo + 1.0);
        } else {
            e.shape = EdgeShape::Ray;
            e.from = f.cell_hi;
            e.origin = f.sphere_center(f.t_hi);
            e.direction = -f.axis;
            e.clipped_end = e.origin + e.direction * vt.clip_radius;
            e.witness = f.sphere_center(f.t_hi - 1.0);
        }
        vt.edges.push_back(e);
    }

    for (int ei = 0; ei < int(cx.edges.size()); ++ei) {
        const auto& de = cx.edges[ei];
        VoronoiFace face;
        face.sites = de.indices;
        face.edges = de.facets;
        face.delaunay_edge = ei;
        Point3 g;
        int count = 0;
        for (int e : de.facets) {
            const auto& ve = vt.edges[e];
            g += ve.origin;
            ++count;
            if (ve.shape == EdgeShape::Segment) {
                g += ve.clipped_end;
                ++count;
            } else {
                face.bounded = false;
                g += ve.origin + ve.direction;
                ++count;
            }
        }
        face.witness = g / double(count);
        vt.faces.push_back(face);
    }
    return vt;
}

VoronoiTiling farthest_voronoi(std::span<const Point3> centers, const Tolerance& tol) {
    if (centers.size() < 2) throw Error(ErrorKind::InvalidArgument, "farthest_voronoi needs at least 2 centers");
    check_distinct(centers, tol);
    IndexSet all(centers.size());
    std::iota(all.begin(), all.end(), 0);
    const int dim = affine_dimension(centers, all, tol.eps_cosp);
    if (dim < 3) return planar_voronoi(centers, dim, tol);
    try {
        return voronoi_from_complex(delaunay_complex(centers, tol), tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::AmbiguousCosphericity) throw Error(ErrorKind::DegenerateTies, e.what());
        throw;
    }
}

namespace {

void require_interior(std::span<const Point3> centers, const Tolerance& tol) {
    const Sphere meb = min_enclosing_ball(centers);
    if (meb.radius >= 1.0 - tol.eps_len)
        throw Error(ErrorKind::EmptyIntersection,
                    "intersection of unit balls has empty interior (enclosing radius " + std::to_string(meb.radius) + ")");
}

// Smallest sphere radius over the closed parameter interval [lo, hi].
double closed_min_radius(const VoronoiEdge& e) {
    const double t = std::clamp(0.0, e.t_lo, e.t_hi);
    return std::sqrt(e.base_radius * e.base_radius + t * t);
}

bool edge_hits(const VoronoiEdge& e, const Tolerance& tol) {
    if (e.t_lo < 0.0 && 0.0 < e.t_hi) return e.base_radius <= 1.0 + tol.eps_len;
    return closed_min_radius(e) < 1.0 - tol.eps_len;
}

}  // namespace

TruncatedTiling truncate(const VoronoiTiling& vt, std::span<const Point3> centers, const Tolerance& tol) {
    require_interior(centers, tol);
    TruncatedTiling tt;
    for (const auto& v : vt.vertices) tt.vertex_in_p.push_back(v.radius <= 1.0 + tol.eps_len);
    for (const auto& e : vt.edges) tt.edge_hits_p.push_back(edge_hits(e, tol));
    tt.cell_nonempty.assign(centers.size(), false);
    for (const auto& f : vt.faces) {
        const Point3 mid = (centers[f.sites[0]] + centers[f.sites[1]]) * 0.5;
        const double half = distance(centers[f.sites[0]], centers[f.sites[1]]) * 0.5;
        bool hit = false;
        if (farthest_set(centers, mid, tol.eps_len) == IndexSet{f.sites[0], f.sites[1]}) {
            hit = half <= 1.0 + tol.eps_len;
        } else {
            double best = kInf;
            for (int e : f.edges) best = std::min(best, closed_min_radius(vt.edges[e]));
            hit = best < 1.0 - tol.eps_len;
        }
        tt.face_hits_p.push_back(hit);
        if (hit) tt.cell_nonempty[f.sites[0]] = tt.cell_nonempty[f.sites[1]] = true;
    }
    return tt;
}

TruncatedComplex as_families(const DelaunayComplex& cx) {
    TruncatedComplex out;
    for (const auto& c : cx.cells) out.cells.push_back(c.indices);
    for (const auto& f : cx.facets) out.facets.push_back(f.indices);
    for (const auto& e : cx.edges) out.edges.push_back(e.indices);
    std::sort(out.cells.begin(), out.cells.end());
    std::sort(out.facets.begin(), out.facets.end());
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

TruncatedComplex truncated_delaunay(const DelaunayComplex& cx, const VoronoiTiling& vt,
                                    std::span<const Point3> centers, const Tolerance& tol) {
    const TruncatedTiling tt = truncate(vt, centers, tol);
    TruncatedComplex out;
    for (std::size_t v = 0; v < vt.vertices.size(); ++v)
        if (tt.vertex_in_p[v] && cx.find_cell(vt.vertices[v].indices) >= 0) out.cells.push_back(vt.vertices[v].indices);
    for (std::size_t e = 0; e < vt.edges.size(); ++e)
        if (tt.edge_hits_p[e] && cx.find_facet(vt.edges[e].indices) >= 0) out.facets.push_back(vt.edges[e].indices);
    for (std::size_t f = 0; f < vt.faces.size(); ++f)
        if (tt.face_hits_p[f] && cx.find_edge(vt.faces[f].sites[0], vt.faces[f].sites[1]) >= 0)
            out.edges.push_back(vt.faces[f].sites);
    std::sort(out.cells.begin(), out.cells.end());
    std::sort(out.facets.begin(), out.facets.end());
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

CorrespondenceReport check_correspondence(const VoronoiTiling& vt, const DelaunayComplex& cx, const Tolerance& tol) {
    CorrespondenceReport rep;
    rep.vertices = vt.vertices.size();
    rep.edges = vt.edges.size();
    rep.faces = vt.faces.size();
    rep.cells = cx.cells.size();
    rep.facets = cx.facets.size();
    rep.pairs = cx.edges.size();
    const auto& centers = cx.centers;

    auto check_witness = [&](const Point3& w, const IndexSet& expected, int dim, const std::string& what) {
        const IndexSet fs = farthest_set(centers, w, tol.eps_len);
        if (fs != expected)
            rep.violations.push_back(what + ": farthest centers at witness are " + set_str(fs));
        if (affine_dimension(centers, expected, tol.eps_cosp) != dim)
            rep.violations.push_back(what + ": index set does not have dimension " + std::to_string(dim));
        double first = 0.0, second = 0.0;
        for (int i = 0; i < int(centers.size()); ++i) {
            const double d = distance(centers[i], w);
            if (std::binary_search(expected.begin(), expected.end(), i)) first = std::max(first, d);
            else second = std::max(second, d);
        }
        if (expected.size() < centers.size() && first - second < 1e3 * tol.eps_len)
            rep.near_degenerate.push_back(what + ": witness margin " + std::to_string(first - second));
    };

    // (V)
    std::map<IndexSet, int> cell_of;
    for (int i = 0; i < int(cx.cells.size()); ++i) cell_of[cx.cells[i].indices] = i;
    std::map<IndexSet, int> vertex_of;
    for (int i = 0; i < int(vt.vertices.size()); ++i) {
        const auto& v = vt.vertices[i];
        const std::string what = "Voronoi vertex " + set_str(v.indices);
        vertex_of[v.indices] = i;
        check_witness(v.point, v.indices, 3, what);
        if (!cell_of.count(v.indices)) rep.violations.push_back(what + " has no Delaunay partner");
    }
    for (const auto& c : cx.cells)
        if (!vertex_of.count(c.indices))
            rep.violations.push_back("Delaunay cell " + set_str(c.indices) + " has no Voronoi vertex");
    for (const auto& s : kernels::empty_spheres_parallel(centers, tol)) {
        if (!cell_of.count(s.indices))
            rep.violations.push_back("empty sphere through " + set_str(s.indices) + " is missing from the complex");
        if (!vertex_of.count(s.indices))
            rep.violations.push_back("empty sphere through " + set_str(s.indices) + " has no Voronoi vertex");
    }

    // (E)
    std::map<IndexSet, int> facet_of, vedge_of;
    for (int i = 0; i < int(cx.facets.size()); ++i) facet_of[cx.facets[i].indices] = i;
    for (int i = 0; i < int(vt.edges.size()); ++i) {
        const auto& e = vt.edges[i];
        const std::string what = "Voronoi edge " + set_str(e.indices);
        vedge_of[e.indices] = i;
        check_witness(e.witness, e.indices, 2, what);
        if (!facet_of.count(e.indices)) rep.violations.push_back(what + " has no Delaunay partner");
    }
    for (const auto& f : cx.facets)
        if (!vedge_of.count(f.indices))
            rep.violations.push_back("Delaunay facet " + set_str(f.indices) + " has no Voronoi edge");

    // (F)
    std::map<IndexSet, int> pair_of, vface_of;
    for (int i = 0; i < int(cx.edges.size()); ++i)
        pair_of[{cx.edges[i].indices[0], cx.edges[i].indices[1]}] = i;
    for (int i = 0; i < int(vt.faces.size()); ++i) {
        const auto& f = vt.faces[i];
        const IndexSet s{f.sites[0], f.sites[1]};
        const std::string what = "Voronoi face " + set_str(s);
        vface_of[s] = i;
        check_witness(f.witness, s, 1, what);
        if (!pair_of.count(s)) rep.violations.push_back(what + " has no Delaunay partner");
    }
    for (const auto& e : cx.edges) {
        const IndexSet s{e.indices[0], e.indices[1]};
        if (!vface_of.count(s)) rep.violations.push_back("Delaunay edge " + set_str(s) + " has no Voronoi face");
    }
    return rep;
}

}  // namespace ballpoly::voronoi
