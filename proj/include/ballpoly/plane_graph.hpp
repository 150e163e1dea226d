#pragma once

#include <array>
#include <vector>

namespace ballpoly {

/// Graph embedded on the sphere by a rotation system: rotation[v] lists the
/// arcs at node v in counterclockwise order (seen from outside).
struct PlaneGraph {
    int nodes = 0;
    std::vector<std::array<int, 2>> arcs;
    std::vector<std::vector<int>> rotation;

    /// A dart is arc * 2 + side; side 0 runs arcs[a][0] -> arcs[a][1].
    /// Each facial walk is the list of darts bounding one face.
    std::vector<std::vector<int>> facial_walks() const;

    bool is_simple() const;
    /// nodes - arcs + faces; 2 for a connected graph embedded in the sphere.
    int euler_characteristic() const;
    /// Graph whose nodes are the faces of this one, arc i of the dual crossing
    /// arc i of the primal.
    PlaneGraph dual() const;
    /// Rotation lists are permutations of the incident arcs.
    bool rotation_consistent() const;
};

}  // namespace ballpoly
