#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ballpoly/geometry.hpp"

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial reference with identical semantics; tests assert the
// two agree and bench/ compares their timings.
namespace ballpoly::kernels {

using IndexSet = std::vector<int>;

struct EmptySphere {
    IndexSet indices;  // sorted; all centers on the sphere
    Point3 center;
    double radius = 0.0;
};

/// Every sphere through >= 4 affinely independent centers that has all
/// remaining centers strictly inside (the farthest-point Delaunay condition).
/// Cospherical sets within eps_cosp are merged. Sorted by index set.
std::vector<EmptySphere> empty_spheres_serial(std::span<const Point3> centers, const Tolerance& tol);
std::vector<EmptySphere> empty_spheres_parallel(std::span<const Point3> centers, const Tolerance& tol);

struct BallVertex {
    Point3 point;
    IndexSet incident;      // every unit sphere through the point (within eps_len)
    bool tangent = false;   // produced by a tangential triple intersection
};

/// Triple intersections of unit spheres that lie in every unit ball.
/// Each point is reported once, from the triple of its three smallest incident
/// indices. Sorted by (incident, x, y, z).
std::vector<BallVertex> ball_vertices_serial(std::span<const Point3> centers, const Tolerance& tol);
std::vector<BallVertex> ball_vertices_parallel(std::span<const Point3> centers, const Tolerance& tol);

/// Labels are 0, + and - encoded as 0, 1, 2; a labeling is a base-3 number with
/// arc 0 as the least significant digit.
enum class Sign : std::uint8_t { Zero = 0, Plus = 1, Minus = 2 };

/// Number of sign changes in a cyclic sequence, zeros ignored.
int cyclic_sign_changes(std::span<const Sign> seq);

/// Enumerates all 3^m labelings of m arcs and returns those satisfying the
/// local hypothesis (all zero, or >= 4 sign changes) at every node.
/// `rotation[v]` lists the arc ids around node v in cyclic order.
std::vector<std::uint64_t> admissible_labelings_serial(const std::vector<std::vector<int>>& rotation, int arcs);
std::vector<std::uint64_t> admissible_labelings_parallel(const std::vector<std::vector<int>>& rotation, int arcs);

}  // namespace ballpoly::kernels
