#include "ballpoly/kernels.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ballpoly::kernels {

namespace {

// Enumerates k-combinations of [0, n) by rank so parallel loops can index them.
struct Combinations {
    int n;
    std::vector<std::array<int, 4>> items;

    Combinations(int n_, int k) : n(n_) {
        std::array<int, 4> c{};
        for (int i = 0; i < k; ++i) c[i] = i;
        if (n < k) return;
        while (true) {
            items.push_back(c);
            int i = k - 1;
            while (i >= 0 && c[i] == n - k + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        }
    }
};

std::array<int, 4> first_spanning_quad(std::span<const Point3> centers, const IndexSet& idx, const Tolerance& tol) {
    const Combinations sub(int(idx.size()), 4);
    for (const auto& c : sub.items) {
        const Point3& p0 = centers[idx[c[0]]];
        if (std::abs(triple(centers[idx[c[1]]] - p0, centers[idx[c[2]]] - p0, centers[idx[c[3]]] - p0)) > tol.eps_cosp)
            return {idx[c[0]], idx[c[1]], idx[c[2]], idx[c[3]]};
    }
    return {-1, -1, -1, -1};
}

std::array<int, 4> first_spanning_triple(std::span<const Point3> centers, const IndexSet& idx, const Tolerance& tol) {
    const Combinations sub(int(idx.size()), 3);
    for (const auto& c : sub.items) {
        const Point3& p0 = centers[idx[c[0]]];
        if (norm(cross(centers[idx[c[1]]] - p0, centers[idx[c[2]]] - p0)) > tol.eps_cosp)
            return {idx[c[0]], idx[c[1]], idx[c[2]], 0};
    }
    return {-1, -1, -1, -1};
}

// Returns false when some other center is outside (or ambiguous).
bool empty_sphere_at(std::span<const Point3> centers, const std::array<int, 4>& q, const Tolerance& tol,
                     EmptySphere& out) {
    const Vec3 a = centers[q[1]] - centers[q[0]];
    const Vec3 b = centers[q[2]] - centers[q[0]];
    const Vec3 c = centers[q[3]] - centers[q[0]];
    if (std::abs(triple(a, b, c)) <= tol.eps_cosp) return false;
    const Sphere s = circumsphere(centers[q[0]], centers[q[1]], centers[q[2]], centers[q[3]], tol);
    out.indices.clear();
    for (int m = 0; m < int(centers.size()); ++m) {
        const double dev = distance(centers[m], s.center) - s.radius;
        if (std::abs(dev) <= tol.eps_cosp) {
            out.indices.push_back(m);
        } else if (dev > 0.0) {
            return false;
        } else if (dev > -tol.eps_len) {
            return false;
        }
    }
    // A merged cospherical set is reported from its lexicographically first
    // affinely independent quadruple only.
    if (out.indices.size() > 4 && first_spanning_quad(centers, out.indices, tol) != q) return false;
    out.center = s.center;
    out.radius = s.radius;
    return true;
}

bool ball_vertex_candidates(std::span<const Point3> centers, const std::array<int, 4>& t, const Tolerance& tol,
                            std::vector<BallVertex>& out) {
    const Point3& c1 = centers[t[0]];
    const Point3& c2 = centers[t[1]];
    const Point3& c3 = centers[t[2]];
    if (norm(cross(c2 - c1, c3 - c1)) <= tol.eps_cosp) return false;
    const auto pts = sphere_triple_intersection(c1, c2, c3, 1.0, tol);
    bool any = false;
    for (const Point3& p : pts) {
        BallVertex v;
        v.point = p;
        v.tangent = pts.size() == 1;
        bool inside = true;
        for (int m = 0; m < int(centers.size()); ++m) {
            const double d = distance(p, centers[m]);
            if (d > 1.0 + tol.eps_len) {
                inside = false;
                break;
            }
            if (std::abs(d - 1.0) <= tol.eps_len) v.incident.push_back(m);
        }
        if (!inside) continue;
        if (v.incident.size() < 3 || first_spanning_triple(centers, v.incident, tol) != t) continue;
        out.push_back(std::move(v));
        any = true;
    }
    return any;
}

bool vertex_less(const BallVertex& a, const BallVertex& b) {
    return std::tie(a.incident, a.point.x, a.point.y, a.point.z) < std::tie(b.incident, b.point.x, b.point.y, b.point.z);
}

bool hypothesis_holds(const std::vector<std::vector<int>>& rotation, const std::vector<Sign>& labels,
                      std::vector<Sign>& scratch) {
    for (const auto& around : rotation) {
        scratch.clear();
        bool all_zero = true;
        for (int a : around) {
            scratch.push_back(labels[a]);
            if (labels[a] != Sign::Zero) all_zero = false;
        }
        if (!all_zero && cyclic_sign_changes(scratch) < 4) return false;
    }
    return true;
}

void decode(std::uint64_t code, int arcs, std::vector<Sign>& labels) {
    labels.assign(arcs, Sign::Zero);
    for (int i = 0; i < arcs; ++i) {
        labels[i] = static_cast<Sign>(code % 3);
        code /= 3;
    }
}

std::uint64_t labeling_count(int arcs) {
    if (arcs > 40) throw Error(ErrorKind::InvalidArgument, "too many arcs for exhaustive enumeration");
    std::uint64_t total = 1;
    for (int i = 0; i < arcs; ++i) total *= 3;
    return total;
}

}  // namespace

std::vector<EmptySphere> empty_spheres_serial(std::span<const Point3> centers, const Tolerance& tol) {
    const Combinations quads(int(centers.size()), 4);
    std::vector<EmptySphere> out;
    EmptySphere s;
    for (const auto& q : quads.items)
        if (empty_sphere_at(centers, q, tol, s)) out.push_back(s);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.indices < b.indices; });
    return out;
}

std::vector<EmptySphere> empty_spheres_parallel(std::span<const Point3> centers, const Tolerance& tol) {
    const Combinations quads(int(centers.size()), 4);
    const long count = long(quads.items.size());
    std::vector<EmptySphere> out;
#pragma omp parallel
    {
        std::vector<EmptySphere> local;
        EmptySphere s;
#pragma omp for schedule(static) nowait
        for (long i = 0; i < count; ++i)
            if (empty_sphere_at(centers, quads.items[i], tol, s)) local.push_back(s);
#pragma omp critical
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.indices < b.indices; });
    return out;
}

std::vector<BallVertex> ball_vertices_serial(std::span<const Point3> centers, const Tolerance& tol) {
    const Combinations triples(int(centers.size()), 3);
    std::vector<BallVertex> out;
    for (const auto& t : triples.items) ball_vertex_candidates(centers, t, tol, out);
    std::sort(out.begin(), out.end(), vertex_less);
    return out;
}

std::vector<BallVertex> ball_vertices_parallel(std::span<const Point3> centers, const Tolerance& tol) {
    const Combinations triples(int(centers.size()), 3);
    const long count = long(triples.items.size());
    std::vector<BallVertex> out;
#pragma omp parallel
    {
        std::vector<BallVertex> local;
#pragma omp for schedule(static) nowait
        for (long i = 0; i < count; ++i) ball_vertex_candidates(centers, triples.items[i], tol, local);
#pragma omp critical
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end(), vertex_less);
    return out;
}

int cyclic_sign_changes(std::span<const Sign> seq) {
    Sign first = Sign::Zero;
    Sign prev = Sign::Zero;
    int changes = 0;
    for (Sign s : seq) {
        if (s == Sign::Zero) continue;
        if (first == Sign::Zero) first = s;
        else if (s != prev) ++changes;
        prev = s;
    }
    if (first != Sign::Zero && prev != first) ++changes;
    return changes;
}

std::vector<std::uint64_t> admissible_labelings_serial(const std::vector<std::vector<int>>& rotation, int arcs) {
    const std::uint64_t total = labeling_count(arcs);
    std::vector<std::uint64_t> out;
    std::vector<Sign> labels, scratch;
    for (std::uint64_t code = 0; code < total; ++code) {
        decode(code, arcs, labels);
        if (hypothesis_holds(rotation, labels, scratch)) out.push_back(code);
    }
    return out;
}

std::vector<std::uint64_t> admissible_labelings_parallel(const std::vector<std::vector<int>>& rotation, int arcs) {
    const std::uint64_t total = labeling_count(arcs);
    std::vector<std::uint64_t> out;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local;
        std::vector<Sign> labels, scratch;
#pragma omp for schedule(static) nowait
        for (long long code = 0; code < static_cast<long long>(total); ++code) {
            decode(std::uint64_t(code), arcs, labels);
            if (hypothesis_holds(rotation, labels, scratch)) local.push_back(std::uint64_t(code));
        }
#pragma omp critical
        out.insert(out.end(), local.begin(), local.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ballpoly::kernels
