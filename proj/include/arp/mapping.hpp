#pragma once

#include <string>
#include <vector>

#include "arp/lattice.hpp"
#include "arp/polyhedron.hpp"

namespace arp {

enum class MapMode { Primal, Dual };

/// The tuple <base polyhedron, lattice, h, k, mode> naming one
/// almost-regular polyhedron or dual.
struct MappingParams {
    BaseKind base = BaseKind::Icosahedron;
    LatticeKind lattice = LatticeKind::Triangular;
    long long h = 1, k = 0;
    MapMode mode = MapMode::Primal;
};

/// Exact placement of one base face on the lattice plane.
struct FaceEmbedding {
    std::vector<RatVec2> corners;  // CCW, corner 0 first
    RatVec2 center;
    long long tNumber;             // h^2+hk+k^2 (triangular frame), h^2+k^2 (square)
    bool primalEquivalent = false; // tetra/hex dual produces a primal-type solid
};

enum class RejectReason {
    None,
    InvalidHK,                // (0,0) or negative
    IncompatiblePair,         // base/lattice/mode not a compatible-mapping case
    CornerOffSymmetryPoint,   // a corner misses the required vertex/face-center class
    CenterLowSymmetry,        // face center misses the required c*n-fold point
    EdgeMidpointNotTwoFold,   // edge-center symmetry violated
    IrregularFace,            // corners do not form a regular face
};

std::string reject_reason_text(RejectReason r);

struct Validation {
    bool ok = false;
    FaceEmbedding embedding;
    RejectReason reason = RejectReason::None;
    std::string message;

    static Validation success(FaceEmbedding e) { return {true, std::move(e), RejectReason::None, {}}; }
    static Validation failure(RejectReason r, std::string msg) {
        return {false, {}, r, std::move(msg)};
    }
};

/// Gate of the characterization theorem: accepts exactly the compatible
/// base/lattice/mode cases and builds the canonical face embedding.
Validation validate(const MappingParams& params);

/// Same checks against explicitly supplied corners (used to show that
/// rational offsets off the symmetry points are rejected).
Validation validate_embedding(BaseKind base, LatticeKind lattice, MapMode mode,
                              const std::vector<RatVec2>& corners);

struct FaceCounts {
    long long T = 0;
    long long tiles = 0;
    long long verticesTotal = 0;
    long long verticesGlobal = 0;
    long long verticesLocal = 0;
    long long edges = 0;
    long long seedSize = 0;  // ceil(T / gfFold): count of cyclic tile orbits per face
};

/// Closed-form counts for the mesh generate() produces.
FaceCounts face_counts(const MappingParams& params);

struct PerFaceCounts {
    double interiorVertices = 0;        // extra lattice vertices, edge points at weight 1/2
    long long maxEdgeLinesCrossed = 0;  // 2(h+k)-3
    long long maxTrianglesCutPerEdge = 0;  // 2(h+k-1)
    long long areaUnits = 0;            // face area in small-triangle units = T
};

/// Triangular primal per-face combinatorics.
PerFaceCounts per_face_counts(const MappingParams& params);

enum class CurationCase { NoWarp, Bisected, General };

/// h==0 or k==0: nothing crosses the face edges; h==k: faces are exactly
/// bisected; otherwise general warping.
CurationCase curation_case(const MappingParams& params);

/// The face placement transform: translate the embedded face center to
/// the origin, scale the lattice face to the base face size, then lift
/// onto the canonical face (center on +Z at the face-center distance,
/// corner 0 aligned).
ScaledTransform face_map(const BasePolyhedron& base, const FaceEmbedding& emb,
                         const LatticeSpec& lattice);

}  // namespace arp
