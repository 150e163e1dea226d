#include "ballpoly/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <Eigen/Dense>

namespace ballpoly {

Vec3 any_orthogonal(const Vec3& v) {
    const Vec3 a = std::abs(v.x) < 0.6 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return normalized(cross(v, a));
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
}

double Mat3::determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::vector<Point3> sphere_triple_intersection(const Point3& c1, const Point3& c2, const Point3& c3,
                                               double r, const Tolerance& tol) {
    if (!(r > 0.0)) throw Error(ErrorKind::OutOfRange, "sphere radius must be positive");
    if (distance(c1, c2) <= tol.eps_len || distance(c1, c3) <= tol.eps_len ||
        distance(c2, c3) <= tol.eps_len)
        throw Error(ErrorKind::DuplicateCenters, "sphere centers coincide");

    const Vec3 a = c2 - c1;
    const Vec3 b = c3 - c1;
    const Vec3 n = cross(a, b);
    const double n2 = norm2(n);
    if (std::sqrt(n2) <= tol.eps_cosp)
        throw Error(ErrorKind::CollinearCenters, "centers are collinear");

    // In-plane circumcenter of the three centers, relative to c1.
    const Vec3 q = (cross(n, a) * norm2(b) + cross(b, n) * norm2(a)) / (2.0 * n2);
    const double h2 = r * r - norm2(q);
    const Point3 base = c1 + q;
    const Vec3 un = n / std::sqrt(n2);

    if (std::abs(h2) <= tol.eps_len) return {base};
    if (h2 < 0.0) return {};
    const double h = std::sqrt(h2);
    return {base + un * h, base - un * h};
}

Point3 circumcenter(const Point3& pa, const Point3& pb, const Point3& pc) {
    const Vec3 a = pb - pa;
    const Vec3 b = pc - pa;
    const Vec3 n = cross(a, b);
    return pa + (cross(n, a) * norm2(b) + cross(b, n) * norm2(a)) / (2.0 * norm2(n));
}

Sphere circumsphere(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4,
                    const Tolerance& tol) {
    const Vec3 a = p2 - p1;
    const Vec3 b = p3 - p1;
    const Vec3 c = p4 - p1;
    const double det = triple(a, b, c);
    if (std::abs(det) <= tol.eps_cosp)
        throw Error(ErrorKind::CoplanarPoints, "points are affinely dependent");
    // Solve 2 <x, a> = |a|^2 etc. by Cramer's rule in cross-product form.
    const Vec3 x = (cross(b, c) * norm2(a) + cross(c, a) * norm2(b) + cross(a, b) * norm2(c)) / (2.0 * det);
    return {p1 + x, norm(x)};
}

double dihedral_from_center_distance(double d) {
    if (!(d > 0.0 && d < 2.0))
        throw Error(ErrorKind::OutOfRange, "center distance must lie in (0, 2)");
    // pi - acos(1 - d^2/2) rewritten as 2 acos(d/2), which keeps full precision for small d.
    return 2.0 * std::acos(d / 2.0);
}

double center_distance_from_dihedral(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi))
        throw Error(ErrorKind::OutOfRange, "dihedral angle must lie in (0, pi)");
    return 2.0 * std::cos(alpha / 2.0);
}

namespace {

Sphere ball_from_two(const Point3& a, const Point3& b) { return {(a + b) * 0.5, distance(a, b) * 0.5}; }

bool contains(const Sphere& s, const Point3& p) { return distance(s.center, p) <= s.radius * (1.0 + 1e-12) + 1e-14; }

Sphere ball_from_support(const std::vector<Point3>& r) {
    switch (r.size()) {
        case 0: return {{0, 0, 0}, -1.0};
        case 1: return {r[0], 0.0};
        case 2: return ball_from_two(r[0], r[1]);
        case 3: {
            const Vec3 n = cross(r[1] - r[0], r[2] - r[0]);
            if (norm(n) < 1e-14) {
                Sphere best = ball_from_two(r[0], r[1]);
                for (const auto& s : {ball_from_two(r[0], r[2]), ball_from_two(r[1], r[2])})
                    if (s.radius > best.radius) best = s;
                return best;
            }
            const Point3 c = circumcenter(r[0], r[1], r[2]);
            return {c, distance(c, r[0])};
        }
        default: {
            const Vec3 a = r[1] - r[0], b = r[2] - r[0], c = r[3] - r[0];
            const double det = triple(a, b, c);
            if (std::abs(det) < 1e-14) {
                // Coplanar support: the smallest sub-ball covering all four.
                Sphere best{{0, 0, 0}, std::numeric_limits<double>::infinity()};
                for (int skip = 0; skip < 4; ++skip) {
                    std::vector<Point3> sub;
                    for (int i = 0; i < 4; ++i)
                        if (i != skip) sub.push_back(r[i]);
                    const Sphere s = ball_from_support(sub);
                    if (contains(s, r[skip]) && s.radius < best.radius) best = s;
                }
                return best;
            }
            const Vec3 x = (cross(b, c) * norm2(a) + cross(c, a) * norm2(b) + cross(a, b) * norm2(c)) / (2.0 * det);
            return {r[0] + x, norm(x)};
        }
    }
}

Sphere welzl(std::vector<Point3>& pts, std::size_t n, std::vector<Point3>& support) {
    if (n == 0 || support.size() == 4) return ball_from_support(support);
    const Point3 p = pts[n - 1];
    Sphere d = welzl(pts, n - 1, support);
    if (d.radius >= 0.0 && contains(d, p)) return d;
    support.push_back(p);
    d = welzl(pts, n - 1, support);
    support.pop_back();
    return d;
}

}  // namespace

Sphere min_enclosing_ball(std::span<const Point3> points) {
    if (points.empty()) throw Error(ErrorKind::InvalidArgument, "min_enclosing_ball of empty set");
    std::vector<Point3> pts(points.begin(), points.end());
    std::mt19937_64 rng(0x5eed);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<Point3> support;
    return welzl(pts, pts.size(), support);
}

Isometry fit_isometry(std::span<const Point3> src, std::span<const Point3> dst, const Tolerance& tol,
                      std::optional<double> max_residual) {
    if (src.size() != dst.size())
        throw Error(ErrorKind::InvalidArgument, "fit_isometry: point lists differ in length");
    if (src.size() < 3) throw Error(ErrorKind::InvalidArgument, "fit_isometry: need at least 3 points");
    const double limit = max_residual.value_or(tol.eps_len);
    const std::size_t n = src.size();

    Vec3 cs, cd;
    for (std::size_t i = 0; i < n; ++i) {
        cs += src[i];
        cd += dst[i];
    }
    cs = cs / double(n);
    cd = cd / double(n);

    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a = src[i] - cs;
        const Vec3 b = dst[i] - cd;
        h += Eigen::Vector3d(a.x, a.y, a.z) * Eigen::Vector3d(b.x, b.y, b.z).transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d u = svd.matrixU();
    const Eigen::Matrix3d v = svd.matrixV();
    const Eigen::Vector3d sv = svd.singularValues();
    const bool collinear = sv(1) <= tol.eps_len * std::max(1.0, sv(0));

    auto make = [&](double last_sign) {
        Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
        d(2, 2) = last_sign;
        const Eigen::Matrix3d r = v * d * u.transpose();
        Isometry iso;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) iso.rotation.m[i][j] = r(i, j);
        iso.translation = cd - iso.rotation * cs;
        iso.orientation = iso.rotation.determinant() > 0 ? Orientation::Preserving : Orientation::Reversing;
        iso.degenerate = collinear;
        double sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = distance(iso.apply(src[i]), dst[i]);
            iso.max_residual = std::max(iso.max_residual, e);
            sum2 += e * e;
        }
        iso.rms_residual = std::sqrt(sum2 / double(n));
        return iso;
    };

    const double proper = (v * u.transpose()).determinant() > 0 ? 1.0 : -1.0;
    Isometry best = make(proper);
    if (best.max_residual > limit) {
        Isometry flipped = make(-proper);
        if (flipped.max_residual < best.max_residual) best = flipped;
    }
    if (best.max_residual > limit)
        throw Error(ErrorKind::NotCongruent,
                    "no isometry within tolerance (max residual " + std::to_string(best.max_residual) + ")");
    return best;
}

}  // namespace ballpoly
