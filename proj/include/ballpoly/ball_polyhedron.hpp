#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ballpoly/geometry.hpp"
#include "ballpoly/plane_graph.hpp"
#include "ballpoly/spherical.hpp"

namespace ballpoly {

/// Centers of the generating unit balls. Face k lies on the sphere around
/// centers[k].
struct UnitBallFamily {
    std::vector<Point3> centers;

    std::size_t size() const { return centers.size(); }
};

struct Reduction {
    UnitBallFamily family;
    std::vector<int> kept;     // original index of each kept center
    std::vector<int> removed;  // original indices dropped as redundant
};

/// Drops balls whose sphere does not meet the boundary of the intersection in
/// a 2-dimensional piece. Exact duplicates keep their first occurrence.
Reduction reduce_family(std::span<const Point3> centers, const Tolerance& tol);

struct BpVertex {
    Point3 point;
    std::array<int, 3> faces{};  // counterclockwise seen from outside
    std::array<int, 3> edges{};  // edges[i] separates faces[i] and faces[i + 1]
};

enum class EdgeKind { Arc, FullCircle };

/// Arc of the circle S(x_a) & S(x_b), a < b. The arc runs counterclockwise
/// about `axis` (pointing from x_a to x_b) from vertex `from` to vertex `to`,
/// which keeps face a on its left seen from outside.
struct BpEdge {
    std::array<int, 2> faces{};
    EdgeKind kind = EdgeKind::Arc;
    Point3 circle_center;
    Vec3 axis;
    double circle_radius = 0.0;
    int from = -1;
    int to = -1;
    double sweep = 0.0;  // central angle of the arc, 2*pi for a full circle
    Point3 midpoint;

    bool is_loop() const { return kind == EdgeKind::Arc && from == to; }
    int other_face(int k) const { return faces[0] == k ? faces[1] : faces[0]; }
};

/// One closed boundary walk of a face: edges[i] runs from vertices[i] to
/// vertices[i + 1] (cyclically), with the face on the left seen from outside.
/// A full-circle boundary has one edge and no vertices.
struct FaceCycle {
    std::vector<int> edges;
    std::vector<int> vertices;
};

struct BpFace {
    int ball = -1;
    std::vector<FaceCycle> cycles;
    std::vector<int> vertices;   // sorted
    std::vector<int> edges;      // sorted
    std::vector<int> neighbors;  // sorted balls sharing an edge with this face
};

struct AngleData {
    std::vector<double> dihedral;                     // per edge
    std::vector<double> edge_length;                  // per edge
    std::map<std::pair<int, int>, double> face_angle;  // (vertex, face) -> beta

    double beta(int vertex, int face) const { return face_angle.at({vertex, face}); }
};

struct BallPolyhedron {
    UnitBallFamily family;
    std::vector<BpVertex> vertices;
    std::vector<BpEdge> edges;
    std::vector<BpFace> faces;
    AngleData angles;

    int find_edge(int a, int b) const;  // first edge on the pair's circle, or -1
    const Point3& center(int k) const { return family.centers[k]; }
    bool in_all_balls(const Point3& p, double eps) const;
};

/// Builds vertices, edges, faces and angle data. The family must be reduced.
BallPolyhedron build(const UnitBallFamily& family, const Tolerance& tol);

/// F_k as an intersection of caps, one per neighboring face.
std::vector<SphericalCap> face_cap_representation(const BallPolyhedron& p, int k);

/// Interior angle of face k at vertex j from the bounding caps alone.
double cap_face_angle(const BallPolyhedron& p, int j, int k);

/// Polygon on the unit sphere around v_j through the edge tangent directions;
/// sides are face angles, angles are dihedral angles.
SphericalPolygon vertex_figure(const BallPolyhedron& p, int j);
/// Polygon on the unit sphere around v_j through the outer face normals;
/// sides are pi - dihedral angles, angles are pi - face angles.
SphericalPolygon normal_image(const BallPolyhedron& p, int j);

/// Geodesic polygon through the vertices of face k on S(x_k), in boundary order.
SphericalPolygon spherical_convex_hull(const BallPolyhedron& p, int k);

struct StandardCertificate {
    bool standard = true;
    std::string reason;        // empty when standard
    std::array<int, 2> pair{-1, -1};  // offending faces or edges
};

StandardCertificate is_standard(const BallPolyhedron& p);
bool is_simplicial(const BallPolyhedron& p);

/// Nodes are the edges of P; one arc per (vertex, face) flag joining the two
/// edges of the face at that vertex. Arc i is flag i of `flags`.
struct MedialGraph {
    PlaneGraph graph;
    std::vector<std::pair<int, int>> flags;  // (vertex, face)
    /// Dual graph: nodes 0..v-1 are vertices of P, v..v+f-1 are faces.
    /// Arc i again corresponds to flag i.
    PlaneGraph dual;
};

MedialGraph medial_graph(const BallPolyhedron& p);

}  // namespace ballpoly
