#include "ballpoly/spherical.hpp"

#include <algorithm>
#include <limits>

namespace ballpoly {

namespace {

// Unit tangent at u pointing along the great circle toward w.
Vec3 tangent_toward(const Vec3& u, const Vec3& w) {
    const Vec3 t = w - u * dot(u, w);
    const double n = norm(t);
    return n > 0.0 ? t / n : Vec3{};
}

}  // namespace

SphericalPolygon make_spherical_polygon(const Sphere& support, std::vector<Point3> vertices) {
    SphericalPolygon p;
    p.support = support;
    p.vertices = std::move(vertices);
    const std::size_t n = p.vertices.size();
    p.sides.resize(n);
    p.angles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 u = p.direction(i);
        const Vec3 next = p.direction((i + 1) % n);
        const Vec3 prev = p.direction((i + n - 1) % n);
        p.sides[i] = angle_between(u, next);
        p.angles[i] = angle_between(tangent_toward(u, next), tangent_toward(u, prev));
    }
    return p;
}

bool is_spherically_convex(const SphericalPolygon& poly, double eps) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    int orientation = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a = poly.direction(i);
        const Vec3 b = poly.direction((i + 1) % n);
        const Vec3 c = cross(a, b);
        const double len = norm(c);
        if (len <= eps) return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || j == (i + 1) % n) continue;
            const double side = dot(c / len, poly.direction(j));
            if (std::abs(side) <= eps) continue;
            const int sgn = side > 0 ? 1 : -1;
            if (orientation == 0) orientation = sgn;
            else if (sgn != orientation) return false;
        }
    }
    return true;
}

double hemisphere_margin(const SphericalPolygon& poly) {
    // The minimum-norm point p of conv{u_i} gives the best direction: all
    // <p, u_i> >= |p|^2. Candidates come from faces of the hull of size <= 3.
    const std::size_t n = poly.size();
    std::vector<Vec3> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = poly.direction(i);

    double best = -1.0;
    auto consider = [&](const Vec3& p) {
        const double len = norm(p);
        if (len < 1e-15) {
            best = std::max(best, 0.0);
            return;
        }
        const Vec3 h = p / len;
        double m = std::numeric_limits<double>::infinity();
        for (const Vec3& w : u) m = std::min(m, dot(h, w));
        best = std::max(best, m);
    };
    for (std::size_t i = 0; i < n; ++i) {
        consider(u[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 d = u[j] - u[i];
            const double s = std::clamp(-dot(u[i], d) / norm2(d), 0.0, 1.0);
            consider(u[i] + d * s);
            for (std::size_t k = j + 1; k < n; ++k) {
                // Projection of the origin onto the plane of the triangle,
                // kept only when it falls inside.
                const Vec3 e = u[k] - u[i];
                const Vec3 nrm = cross(d, e);
                const double nn = norm2(nrm);
                if (nn < 1e-30) continue;
                const Vec3 p = nrm * (dot(nrm, u[i]) / nn);
                const double a = triple(nrm, u[j] - p, u[k] - p);
                const double b = triple(nrm, u[k] - p, u[i] - p);
                const double c = triple(nrm, u[i] - p, u[j] - p);
                if (a >= 0 && b >= 0 && c >= 0) consider(p);
            }
        }
    }
    return best;
}

Point3 geodesic_point(const Sphere& s, const Point3& a, const Point3& b, double t) {
    const Vec3 u = normalized(a - s.center);
    const Vec3 w = normalized(b - s.center);
    const double theta = angle_between(u, w);
    const Vec3 tan = tangent_toward(u, w);
    return s.center + (u * std::cos(t * theta) + tan * std::sin(t * theta)) * s.radius;
}

}  // namespace ballpoly
