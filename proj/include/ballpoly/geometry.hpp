#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ballpoly/error.hpp"

namespace ballpoly {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    bool operator==(const Vec3&) const = default;
};

using Point3 = Vec3;

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
constexpr double norm2(const Vec3& v) { return dot(v, v); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
constexpr double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }
inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Unsigned angle between two non-zero vectors, stable near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Any unit vector orthogonal to `v` (v need not be normalized).
Vec3 any_orthogonal(const Vec3& v);

struct Sphere {
    Point3 center;
    double radius = 1.0;
};

/// Absolute tolerances; inputs are normalized so the ball radius is 1.
struct Tolerance {
    double eps_len = 1e-9;
    double eps_ang = 1e-9;
    double eps_cosp = 1e-10;
};

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Mat3 identity() { return {}; }
    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    Mat3 operator*(const Mat3& o) const;
    Mat3 transposed() const;
    double determinant() const;
};

enum class Orientation { Preserving, Reversing };

struct Isometry {
    Mat3 rotation;
    Vec3 translation;
    Orientation orientation = Orientation::Preserving;
    /// Set when the source points were collinear and the fit is not unique.
    bool degenerate = false;
    double max_residual = 0.0;
    double rms_residual = 0.0;

    Point3 apply(const Point3& p) const { return rotation * p + translation; }
};

/// Points at distance r from all three centers: 0, 1 (tangential) or 2 points.
/// The two-point result is ordered so that the first point lies on the side of
/// the centers' plane pointed to by (c2 - c1) x (c3 - c1).
std::vector<Point3> sphere_triple_intersection(const Point3& c1, const Point3& c2, const Point3& c3,
                                               double r, const Tolerance& tol);

/// Circumscribed sphere of four affinely independent points.
Sphere circumsphere(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4,
                    const Tolerance& tol);

/// Center of the circle through three non-collinear points.
Point3 circumcenter(const Point3& a, const Point3& b, const Point3& c);

/// Inner dihedral angle along an edge of two unit spheres whose centers are d apart.
double dihedral_from_center_distance(double d);

/// Inverse of dihedral_from_center_distance.
double center_distance_from_dihedral(double alpha);

/// Smallest ball enclosing all points.
Sphere min_enclosing_ball(std::span<const Point3> points);

/// Least-squares rigid fit src[i] -> dst[i]; reflections are allowed.
/// Throws NotCongruent when the max residual exceeds `max_residual`.
Isometry fit_isometry(std::span<const Point3> src, std::span<const Point3> dst, const Tolerance& tol,
                      std::optional<double> max_residual = std::nullopt);

}  // namespace ballpoly
