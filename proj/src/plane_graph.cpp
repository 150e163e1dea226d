#include "ballpoly/plane_graph.hpp"

#include <algorithm>
#include <set>

namespace ballpoly {

namespace {

int dart_tail(const PlaneGraph& g, int d) { return g.arcs[d / 2][d % 2]; }
int dart_head(const PlaneGraph& g, int d) { return g.arcs[d / 2][1 - d % 2]; }

// Position of each dart's arc in the rotation at the dart's tail.
std::vector<int> rotation_slots(const PlaneGraph& g) {
    std::vector<int> slot(g.arcs.size() * 2, -1);
    for (int v = 0; v < g.nodes; ++v) {
        const auto& rot = g.rotation[v];
        for (int i = 0; i < int(rot.size()); ++i) {
            const int a = rot[i];
            // Loops appear twice in the rotation; give each side one slot.
            const int d = (g.arcs[a][0] == v && slot[2 * a] < 0) ? 2 * a : 2 * a + 1;
            slot[d] = i;
        }
    }
    return slot;
}

}  // namespace

bool PlaneGraph::rotation_consistent() const {
    if (int(rotation.size()) != nodes) return false;
    std::vector<int> seen(arcs.size() * 2, 0);
    for (int v = 0; v < nodes; ++v) {
        for (int a : rotation[v]) {
            if (a < 0 || a >= int(arcs.size())) return false;
            if (arcs[a][0] == v && !seen[2 * a]) seen[2 * a] = 1;
            else if (arcs[a][1] == v && !seen[2 * a + 1]) seen[2 * a + 1] = 1;
            else return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

std::vector<std::vector<int>> PlaneGraph::facial_walks() const {
    const std::vector<int> slot = rotation_slots(*this);
    const int darts = int(arcs.size()) * 2;
    std::vector<char> used(darts, 0);
    std::vector<std::vector<int>> walks;
    for (int start = 0; start < darts; ++start) {
        if (used[start]) continue;
        std::vector<int> walk;
        int d = start;
        while (!used[d]) {
            used[d] = 1;
            walk.push_back(d);
            // Arrive at the head, turn to the arc just before the reverse dart
            // in counterclockwise order, which keeps the face on the left.
            const int v = dart_head(*this, d);
            const int rev = d ^ 1;
            const auto& rot = rotation[v];
            const int n = int(rot.size());
            const int a = rot[(slot[rev] + n - 1) % n];
            int next = 2 * a;
            if (dart_tail(*this, next) != v || (arcs[a][0] == arcs[a][1] && slot[next] != (slot[rev] + n - 1) % n))
                next = 2 * a + 1;
            d = next;
        }
        walks.push_back(std::move(walk));
    }
    return walks;
}

bool PlaneGraph::is_simple() const {
    std::set<std::array<int, 2>> seen;
    for (const auto& a : arcs) {
        if (a[0] == a[1]) return false;
        if (!seen.insert({std::min(a[0], a[1]), std::max(a[0], a[1])}).second) return false;
    }
    return true;
}

int PlaneGraph::euler_characteristic() const {
    return nodes - int(arcs.size()) + int(facial_walks().size());
}

PlaneGraph PlaneGraph::dual() const {
    const auto walks = facial_walks();
    std::vector<int> face_of(arcs.size() * 2, -1);
    for (int f = 0; f < int(walks.size()); ++f)
        for (int d : walks[f]) face_of[d] = f;
    PlaneGraph g;
    g.nodes = int(walks.size());
    g.arcs.resize(arcs.size());
    g.rotation.resize(walks.size());
    // Dual arc i runs from the face on the left of dart 2i to the face on its
    // right; walking a face boundary visits its dual arcs in rotation order.
    for (std::size_t a = 0; a < arcs.size(); ++a) g.arcs[a] = {face_of[2 * a], face_of[2 * a + 1]};
    for (int f = 0; f < int(walks.size()); ++f)
        for (int d : walks[f]) g.rotation[f].push_back(d / 2);
    return g;
}

}  // namespace ballpoly
