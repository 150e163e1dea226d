#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ballpoly/ball_polyhedron.hpp"
#include "ballpoly/poset.hpp"
#include "ballpoly/voronoi.hpp"

namespace ballpoly {

/// Sphere containing the union of the unit balls and touching the balls in
/// `tangent`. Its center is a farthest-point Voronoi vertex of the centers.
struct CircumscribedSphere {
    Point3 center;
    double radius = 0.0;  // delta = rho + 1
    std::vector<int> tangent;
};

/// One sphere per Voronoi vertex of the centers. Throws CoplanarCenters.
std::vector<CircumscribedSphere> circumscribed_spheres(const UnitBallFamily& flower, const Tolerance& tol);

struct VoronoiVertexDiagnostic {
    Point3 point;
    std::vector<int> indices;
    double rho = 0.0;       // distance to the farthest centers
    double delta = 0.0;     // rho + 1
    double margin = 0.0;    // 1 - max distance to any center; > 0 inside P
};

struct NormalityReport {
    bool normal = false;
    bool degenerate = false;           // some rho within eps_len of 1
    bool by_circumscribed_radius = false;  // every delta < 2
    bool by_interior_vertices = false;     // every Voronoi vertex in int P
    bool by_cell_vertices = false;         // every cell vertex closer than 1 to its site
    double rho_max = 0.0;
    std::vector<VoronoiVertexDiagnostic> vertices;
};

/// Evaluates the three equivalent definitions of normality separately.
/// Within eps_len of the threshold the instance counts as not normal and is
/// flagged degenerate. Throws DisagreementBug if the definitions disagree
/// away from the threshold, CoplanarCenters if there is no Voronoi vertex.
NormalityReport is_normal(const UnitBallFamily& family, const Tolerance& tol);
inline NormalityReport is_normal(const BallPolyhedron& p, const Tolerance& tol) { return is_normal(p.family, tol); }

/// Vertex-edge-face poset of P: vertices have rank 0, edges 1, faces 2.
/// Element ids are vertices, then edges, then faces, in their P order.
GradedPoset vef_poset(const BallPolyhedron& p);

/// Convex hull of the centers with the faces induced by the Delaunay complex.
struct CenterPolyhedron {
    std::vector<Point3> centers;
    std::vector<std::array<int, 2>> edges;   // sorted pairs
    std::vector<std::vector<int>> facets;    // sorted index sets
    std::vector<std::vector<int>> facet_cycles;
    GradedPoset lattice;  // centers, then edges, then facets

    int find_edge(int a, int b) const;
    int find_facet(const std::vector<int>& s) const;
};

CenterPolyhedron center_polyhedron(const BallPolyhedron& p, const Tolerance& tol);

/// Inclusion-reversing correspondence between P and its center polyhedron:
/// face k <-> center k, edge {a, b} <-> hull edge [x_a, x_b],
/// vertex <-> hull facet through its three centers.
struct DualityReport {
    bool standard = false;
    bool complex_equals_truncated = false;
    bool explicit_map_complete = false;
    std::size_t order_violations = 0;
    bool search_found = false;  // independent anti-isomorphism search
    std::vector<int> vertex_to_facet;
    std::vector<int> edge_to_hull_edge;
    std::vector<std::string> problems;

    bool ok() const {
        return standard && complex_equals_truncated && explicit_map_complete && order_violations == 0 && search_found;
    }
};

/// Throws NotNormal unless P is normal.
DualityReport check_center_duality(const BallPolyhedron& p, const Tolerance& tol);

/// Seeded uniform doubles that are identical on every platform: the engine
/// is fully specified by the standard and the conversion to [0, 1) is done
/// here rather than by an implementation-defined distribution.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Vec3 unit_vector();

private:
    std::mt19937_64 eng_;
};

inline constexpr int kGeneratorBudget = 10000;

/// Five to seven generic points scaled by a radius just below the largest
/// Voronoi vertex radius, so exactly one Voronoi vertex leaves P. Retried
/// until the result is reduced, standard and not normal.
UnitBallFamily gen_standard_not_normal(std::uint64_t seed, const Tolerance& tol = {});
/// f centers near a sphere, rejection-sampled until reduced and normal.
UnitBallFamily gen_normal_random(int f, std::uint64_t seed, const Tolerance& tol = {});
/// Regular tetrahedron of the given edge length centered at the origin.
UnitBallFamily gen_regular_tetrahedron(double edge = 1.0);

}  // namespace ballpoly
