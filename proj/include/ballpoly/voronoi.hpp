#pragma once

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ballpoly/geometry.hpp"

namespace ballpoly::voronoi {

using IndexSet = std::vector<int>;  // always sorted ascending

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Farthest-point Delaunay complex
// ---------------------------------------------------------------------------

/// Full-dimensional member: a polytope inscribed in a sphere with every other
/// center strictly inside.
struct DelaunayCell {
    IndexSet indices;
    Point3 center;
    double radius = 0.0;
};

/// Two-dimensional member. The centers of all spheres through `indices` lie on
/// the line axis_origin + t * axis; those with every other center inside form
/// the open interval (t_lo, t_hi). An infinite end means the facet lies on the
/// hull boundary.
struct DelaunayFacet {
    IndexSet indices;
    std::vector<int> cycle;  // indices in cyclic order around the facet polygon
    Point3 axis_origin;      // circumcenter of the facet polygon
    Vec3 axis;               // unit normal of the facet plane
    double base_radius = 0.0;
    double t_lo = -kInf;
    double t_hi = kInf;
    int cell_lo = -1;  // cell whose sphere center is at t_lo, or -1
    int cell_hi = -1;

    bool on_hull() const { return cell_lo < 0 || cell_hi < 0; }
    Point3 sphere_center(double t) const { return axis_origin + axis * t; }
    double sphere_radius(double t) const { return std::sqrt(base_radius * base_radius + t * t); }
};

struct DelaunayEdge {
    std::array<int, 2> indices{};
    std::vector<int> facets;
};

struct DelaunayComplex {
    std::vector<Point3> centers;
    std::vector<DelaunayCell> cells;
    std::vector<DelaunayFacet> facets;
    std::vector<DelaunayEdge> edges;
    IndexSet vertex_set;  // centers in convex position that appear in some cell

    int find_cell(const IndexSet& s) const;
    int find_facet(const IndexSet& s) const;
    int find_edge(int a, int b) const;
};

/// Builds the farthest-point Delaunay complex by pivoting across facets,
/// starting from a hull facet. Cospherical sets become single cells.
DelaunayComplex delaunay_complex(std::span<const Point3> centers, const Tolerance& tol);

// ---------------------------------------------------------------------------
// Farthest-point Voronoi tiling
// ---------------------------------------------------------------------------

/// 2 <x, c_other - c_site> >= |c_other|^2 - |c_site|^2
struct Halfspace {
    int other = -1;
    Vec3 normal;
    double offset = 0.0;

    bool contains(const Point3& x, double eps) const { return dot(normal, x) >= offset - eps; }
};

struct VoronoiCell {
    int site = -1;
    std::vector<Halfspace> halfspaces;
    bool empty = false;
    std::vector<int> vertices;
};

struct VoronoiVertex {
    Point3 point;
    IndexSet indices;
    double radius = 0.0;  // common distance to the centers in `indices`
    int delaunay_cell = -1;
};

enum class EdgeShape { Segment, Ray, Line };

struct VoronoiEdge {
    IndexSet indices;
    EdgeShape shape = EdgeShape::Segment;
    int from = -1;  // vertex ids; -1 for an open end
    int to = -1;
    Point3 origin;          // from-vertex, or a point on the line
    Vec3 direction;         // unit; points from `from` towards `to` or along the ray
    Point3 clipped_end;     // reporting only: far end clipped to the bounding radius
    Point3 witness;         // a point of the relative interior
    int delaunay_facet = -1;
    // Same parametrization as the facet: centers q(t) with radius sqrt(r0^2 + t^2).
    Point3 axis_origin;
    Vec3 axis;
    double base_radius = 0.0;
    double t_lo = -kInf;
    double t_hi = kInf;
};

struct VoronoiFace {
    std::array<int, 2> sites{};
    std::vector<int> edges;
    bool bounded = true;
    Point3 witness;
    int delaunay_edge = -1;
};

struct VoronoiTiling {
    std::vector<Point3> centers;
    std::vector<VoronoiCell> cells;
    std::vector<VoronoiVertex> vertices;
    std::vector<VoronoiEdge> edges;
    std::vector<VoronoiFace> faces;
    double clip_radius = 0.0;
};

VoronoiTiling farthest_voronoi(std::span<const Point3> centers, const Tolerance& tol);

/// Dual construction of the tiling from an existing complex.
VoronoiTiling voronoi_from_complex(const DelaunayComplex& complex, const Tolerance& tol);

// ---------------------------------------------------------------------------
// Truncation by P = intersection of unit balls around the centers
// ---------------------------------------------------------------------------

struct TruncatedTiling {
    std::vector<bool> cell_nonempty;   // V_i intersected with B[c_i]
    std::vector<bool> vertex_in_p;
    std::vector<bool> edge_hits_p;     // some relative-interior point in P
    std::vector<bool> face_hits_p;
};

struct TruncatedComplex {
    std::vector<IndexSet> cells;
    std::vector<IndexSet> facets;
    std::vector<std::array<int, 2>> edges;
};

TruncatedTiling truncate(const VoronoiTiling& tiling, std::span<const Point3> centers, const Tolerance& tol);
TruncatedComplex truncated_delaunay(const DelaunayComplex& complex, const VoronoiTiling& tiling,
                                    std::span<const Point3> centers, const Tolerance& tol);

/// Members of the complex as plain index-set families (for comparisons).
TruncatedComplex as_families(const DelaunayComplex& complex);

// ---------------------------------------------------------------------------
// Vertex/edge/face correspondence check
// ---------------------------------------------------------------------------

struct CorrespondenceReport {
    std::size_t vertices = 0, edges = 0, faces = 0;
    std::size_t cells = 0, facets = 0, pairs = 0;
    std::vector<std::string> violations;
    std::vector<std::string> near_degenerate;

    bool ok() const { return violations.empty(); }
};

/// Verifies cells <-> Voronoi vertices, facets <-> Voronoi edges and
/// pairs <-> Voronoi faces in both directions, the geometric meaning of each
/// Voronoi element at a witness point, and completeness of the cells against
/// an exhaustive empty-sphere enumeration.
CorrespondenceReport check_correspondence(const VoronoiTiling& tiling, const DelaunayComplex& complex,
                                          const Tolerance& tol);

/// Affine dimension of the given centers (0..3).
int affine_dimension(std::span<const Point3> centers, const IndexSet& indices, double eps);

/// Centers at maximal distance from x (within eps).
IndexSet farthest_set(std::span<const Point3> centers, const Point3& x, double eps);

}  // namespace ballpoly::voronoi
