#pragma once

#include <vector>

#include "ballpoly/geometry.hpp"

namespace ballpoly {

/// Closed cap {y on S(x) : <z - x, y - x> >= cos(gamma)} of a unit sphere.
struct SphericalCap {
    Point3 sphere_center;
    Point3 cap_center;  // on the sphere
    double angular_radius = 0.0;

    bool contains(const Point3& y, double eps) const {
        return dot(cap_center - sphere_center, y - sphere_center) >= std::cos(angular_radius) - eps;
    }
};

/// Polygon on a sphere with geodesic sides. Sides and angles are measured as
/// angles at the sphere center, so the sphere radius does not enter them.
/// sides[i] joins vertices[i] and vertices[i + 1]; angles[i] is the interior
/// angle at vertices[i].
struct SphericalPolygon {
    Sphere support;
    std::vector<Point3> vertices;
    std::vector<double> sides;
    std::vector<double> angles;

    std::size_t size() const { return vertices.size(); }
    /// Unit direction of vertex i as seen from the sphere center.
    Vec3 direction(std::size_t i) const { return normalized(vertices[i] - support.center); }
};

/// Fills sides and interior angles for the given cyclic vertex list.
SphericalPolygon make_spherical_polygon(const Sphere& support, std::vector<Point3> vertices);

/// For every side, all other vertices lie weakly on one side of its great
/// circle, the same side for every edge (either orientation is accepted).
bool is_spherically_convex(const SphericalPolygon& poly, double eps);

/// min_i <h, u_i> over the vertex directions u_i for the best candidate pole h.
/// Positive iff the polygon lies in an open hemisphere.
double hemisphere_margin(const SphericalPolygon& poly);

/// Point at parameter t in [0, 1] along the geodesic from a to b on the sphere.
Point3 geodesic_point(const Sphere& s, const Point3& a, const Point3& b, double t);

}  // namespace ballpoly
