#include "ballpoly/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace ballpoly {

namespace {

Point3 arc_point(const BallPolyhedron& p, const BpEdge& e, double t) {
    const Vec3 r0 = p.vertices[e.from].point - e.circle_center;
    const double a = t * e.sweep;
    return e.circle_center + r0 * std::cos(a) + cross(e.axis, r0) * std::sin(a);
}

}  // namespace

TriangleMesh tessellate(const BallPolyhedron& p, int segments) {
    if (segments < 1) throw Error(ErrorKind::InvalidArgument, "segments must be positive");
    for (const auto& e : p.edges)
        if (e.kind != EdgeKind::Arc || e.is_loop())
            throw Error(ErrorKind::NotStandard, "cannot tessellate a face bounded by a closed circle");
    for (const auto& f : p.faces)
        if (f.cycles.size() != 1) throw Error(ErrorKind::NotStandard, "face with several boundary cycles");

    TriangleMesh m;
    for (const auto& v : p.vertices) m.vertices.push_back(v.point);
    // Interior points of each edge polyline, running from `from` to `to`.
    std::vector<std::vector<int>> inner(p.edges.size());
    for (std::size_t i = 0; i < p.edges.size(); ++i)
        for (int s = 1; s < segments; ++s) {
            inner[i].push_back(int(m.vertices.size()));
            m.vertices.push_back(arc_point(p, p.edges[i], double(s) / segments));
        }

    const int rings = std::max(1, segments / 8);
    for (const BpFace& face : p.faces) {
        const FaceCycle& cyc = face.cycles[0];
        std::vector<int> boundary;
        for (std::size_t i = 0; i < cyc.edges.size(); ++i) {
            const int e = cyc.edges[i];
            const BpEdge& edge = p.edges[e];
            // The face walks its edge forward when it is the left face.
            const bool forward = edge.faces[0] == face.ball && edge.from == cyc.vertices[i];
            boundary.push_back(cyc.vertices[i]);
            if (forward) boundary.insert(boundary.end(), inner[e].begin(), inner[e].end());
            else boundary.insert(boundary.end(), inner[e].rbegin(), inner[e].rend());
        }
        const Point3 x = p.center(face.ball);
        Vec3 mean;
        for (int b : boundary) mean += normalized(m.vertices[b] - x);
        const Vec3 pole = normalized(mean);
        const int apex = int(m.vertices.size());
        m.vertices.push_back(x + pole);

        // ring[r][i] lies on the geodesic from the apex to boundary point i.
        const std::size_t n = boundary.size();
        std::vector<std::vector<int>> ring(rings + 1);
        ring[rings] = boundary;
        for (int r = 1; r < rings; ++r)
            for (std::size_t i = 0; i < n; ++i) {
                ring[r].push_back(int(m.vertices.size()));
                m.vertices.push_back(geodesic_point({x, 1.0}, x + pole, m.vertices[boundary[i]], double(r) / rings));
            }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            m.triangles.push_back({apex, ring[1][i], ring[1][j]});
            for (int r = 1; r < rings; ++r) {
                m.triangles.push_back({ring[r][i], ring[r + 1][i], ring[r + 1][j]});
                m.triangles.push_back({ring[r][i], ring[r + 1][j], ring[r][j]});
            }
        }
    }
    return m;
}

MeshAudit audit_mesh(const TriangleMesh& mesh) {
    MeshAudit a;
    a.vertices = mesh.vertices.size();
    a.triangles = mesh.triangles.size();
    std::map<std::pair<int, int>, int> directed;
    std::map<std::pair<int, int>, int> undirected;
    for (const auto& t : mesh.triangles)
        for (int i = 0; i < 3; ++i) {
            const int u = t[i], v = t[(i + 1) % 3];
            ++directed[{u, v}];
            ++undirected[{std::min(u, v), std::max(u, v)}];
        }
    a.edges = undirected.size();
    a.watertight = true;
    for (const auto& [e, c] : undirected) a.watertight = a.watertight && c == 2;
    a.oriented = true;
    for (const auto& [e, c] : directed) a.oriented = a.oriented && c == 1;
    a.euler_characteristic = int(a.vertices) - int(a.edges) + int(a.triangles);
    return a;
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& t : mesh.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace ballpoly
