#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballpoly/ball_polyhedron.hpp"
#include "ballpoly/classification.hpp"
#include "ballpoly/kernels.hpp"
#include "ballpoly/plane_graph.hpp"
#include "ballpoly/spherical.hpp"

namespace ballpoly {

using kernels::Sign;
using SignSequence = std::vector<Sign>;

/// `equal` is the tolerance for "equal corresponding angles and lengths"
/// between two independently built bodies.
struct RigidityOptions {
    Tolerance tol;
    double equal = 1e-7;
};

/// Dimension-preserving, inclusion-preserving bijection from P to P'.
struct LatticeIso {
    std::vector<int> vertex;
    std::vector<int> edge;
    std::vector<int> face;
};

/// First lattice isomorphism found, or nullopt. Throws NotStandard.
std::optional<LatticeIso> combinatorial_equivalence(const BallPolyhedron& p, const BallPolyhedron& q);
/// All lattice isomorphisms, up to `limit`.
std::vector<LatticeIso> all_combinatorial_equivalences(const BallPolyhedron& p, const BallPolyhedron& q,
                                                       std::size_t limit = 100000);

/// Which measurements an isomorphism has to match in matching_equivalence.
enum class Match { DihedralAndLength, FaceAngle, Dihedral };

/// Lattice isomorphism under which the chosen measurements agree best; the
/// first isomorphism if none agree within opts.equal. nullopt if the lattices
/// differ. Throws NotStandard.
std::optional<LatticeIso> matching_equivalence(const BallPolyhedron& p, const BallPolyhedron& q, Match what,
                                               const RigidityOptions& opts = {});

/// Largest discrepancy of the chosen measurements under iso.
double measurement_discrepancy(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                               Match what);

/// Isometry taking x_k to x'_{iso.face[k]}. Throws NotCongruent when the
/// largest residual exceeds tol.eps_len.
Isometry congruent(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso, const Tolerance& tol);

enum class LcVerdict { AllZero, SignChanges, Violation };

struct LegendreCauchyResult {
    LcVerdict verdict = LcVerdict::AllZero;
    int changes = 0;
    std::vector<double> differences;  // gamma_i - gamma'_i
    SignSequence signs;
};

/// Cyclic sign sequence of the angle differences of two spherical polygons
/// with equal corresponding sides. Zeros are ignored when counting changes.
/// Throws SideLengthMismatch, NotConvex, NotHemispherical.
LegendreCauchyResult legendre_cauchy(const SphericalPolygon& u, const SphericalPolygon& v,
                                     const RigidityOptions& opts = {});

Sign sign_of(double difference, double eps);

struct SignCountingReport {
    bool consistent = true;          // local hypothesis holds at every node
    std::vector<int> violations;     // nodes where it fails
    std::vector<int> changes;        // per node
    bool all_zero = true;
    /// Consistent but some label nonzero: a counterexample to the global
    /// conclusion. Never expected.
    bool counterexample() const { return consistent && !all_zero; }
};

/// Throws NotSimple, NotPlane.
SignCountingReport sign_counting_check(const PlaneGraph& g, const SignSequence& labels);

struct SignCountingCertificate {
    int arcs = 0;
    std::uint64_t labelings = 0;              // 3^arcs
    std::vector<std::uint64_t> admissible;    // encoded as in kernels
    bool only_all_zero = false;
};

inline constexpr int kMaxBruteForceArcs = 14;

/// Exhaustive check over all labelings. Throws NotSimple, NotPlane, and
/// InvalidArgument above kMaxBruteForceArcs arcs.
SignCountingCertificate brute_force_sign_counting(const PlaneGraph& g);

/// Plane graph of the vertices and edges of P with the rotation at each
/// vertex taken counterclockwise from outside.
PlaneGraph edge_graph(const BallPolyhedron& p);

struct StokerReport {
    LatticeIso iso;
    double max_dihedral_difference = 0.0;
    double max_length_difference = 0.0;
    std::vector<LegendreCauchyResult> around_vertex;  // normal images, per vertex of P
    std::vector<LegendreCauchyResult> around_face;    // spherical hulls, per face of P
    std::vector<std::pair<int, int>> flags;           // arcs of the dual medial graph
    SignSequence labels;                              // sign of beta - beta' per flag
    SignCountingReport sign_counting;
    double max_face_angle_difference = 0.0;
    bool face_angles_equal = false;
    Isometry isometry;
    bool congruent = false;
    std::vector<std::string> problems;

    bool ok() const { return face_angles_equal && congruent && problems.empty(); }
};

/// Equal edge lengths and dihedral angles imply congruence. Throws
/// NotStandard, PreconditionFailed naming the first offending edge.
StokerReport verify_stoker(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                           const RigidityOptions& opts = {});

struct AlexandrovReport {
    LatticeIso iso;
    double max_face_angle_difference = 0.0;
    std::vector<LegendreCauchyResult> around_vertex;  // vertex figures, per vertex of P
    SignSequence labels;                              // sign of alpha - alpha' per edge
    SignCountingReport sign_counting;                 // on the edge graph of P
    double max_dihedral_difference = 0.0;
    bool dihedrals_equal = false;
    std::vector<std::string> problems;

    bool ok() const { return dihedrals_equal && problems.empty(); }
};

/// Equal face angles imply equal dihedral angles. Throws NotStandard,
/// PreconditionFailed naming the first offending (vertex, face).
AlexandrovReport verify_alexandrov(const BallPolyhedron& p, const BallPolyhedron& q, const LatticeIso& iso,
                                   const RigidityOptions& opts = {});

struct NormalRigidityReport {
    LatticeIso iso;
    double max_dihedral_difference = 0.0;
    DualityReport duality_p;
    DualityReport duality_q;
    bool duality_ok = false;
    std::vector<double> hull_edge_lengths;     // |x_a - x_b| per edge of P
    double max_distance_from_dihedral = 0.0;   // |d(alpha) - |x_a - x_b|| over both bodies
    double max_hull_edge_difference = 0.0;
    bool hull_edges_equal = false;
    double max_facet_residual = 0.0;
    double max_circumradius_difference = 0.0;
    bool facets_congruent = false;
    Isometry isometry;
    bool congruent = false;
    std::vector<std::string> problems;

    bool ok() const { return duality_ok && hull_edges_equal && facets_congruent && congruent && problems.empty(); }
};

/// Equal dihedral angles of two normal bodies imply congruence. Throws
/// NotNormal (either side), PreconditionFailed.
NormalRigidityReport verify_normal_global_rigidity(const BallPolyhedron& p, const BallPolyhedron& q,
                                                   const LatticeIso& iso, const RigidityOptions& opts = {});

}  // namespace ballpoly
