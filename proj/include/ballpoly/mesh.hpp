#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "ballpoly/ball_polyhedron.hpp"

namespace ballpoly {

struct TriangleMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise seen from outside
};

/// Triangulated boundary of P. Every edge arc is split into `segments` pieces
/// shared by both adjacent faces; each face is filled by rings of triangles
/// around a point of its sphere. Throws NotStandard for bodies with
/// full-circle edges or faces with several boundary cycles, InvalidArgument
/// for segments < 1.
TriangleMesh tessellate(const BallPolyhedron& p, int segments);

struct MeshAudit {
    std::size_t vertices = 0, edges = 0, triangles = 0;
    bool watertight = false;        // every undirected edge in exactly two triangles
    bool oriented = false;          // every directed edge in exactly one triangle
    int euler_characteristic = 0;
};

MeshAudit audit_mesh(const TriangleMesh& mesh);

/// Wavefront OBJ text: one "v" line per vertex and one "f" line per triangle.
void write_obj(std::ostream& out, const TriangleMesh& mesh);

}  // namespace ballpoly
