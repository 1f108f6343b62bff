#pragma once

#include <array>
#include <vector>

#include "arp/mapping.hpp"

namespace arp {

/// Minimal generating data for one face: representatives of the cyclic
/// point orbits plus full coverage bookkeeping.
///
/// `points` are the point-orbit representatives (first seen in
/// row-major order); applying the face's cyclic rotations to them
/// reproduces every lattice point inside or on the face.
/// `tileOrbitCount` = ceil(T/n) is the number of cyclic *tile* orbits
/// per face; it is the seed-set size the closed-form counts report.
/// (The two counts differ: e.g. T=7 has 2 point orbits but 3 tile
/// orbits.)
struct SeedSet {
    struct Coverage {
        RatVec2 point;
        int seed;    // index into points
        int cyclic;  // cyclic power m with point = C^m(points[seed])
    };
    std::vector<RatVec2> points;
    std::vector<Coverage> coverage;  // every lattice point in/on the face, row-major
    long long tileOrbitCount = 0;

    long long seed_size() const { return tileOrbitCount; }
};

/// Seed set of the (primal) face of `params`; for Dual parameters this
/// is the seed set of the underlying primal scaffold.
SeedSet build_seed(const MappingParams& params);

/// Welded closed mesh with per-vertex generator bookkeeping.
struct TiledMesh {
    MappingParams params;
    bool isDual = false;
    bool curated = false;
    bool folded = false;
    double circumradius = 1.0;

    // generator tables (primal meshes; empty for duals)
    int cyclicOrder = 0;
    std::vector<Mat3> groupRotations;   // proper rotations of the base, identity first
    std::vector<Mat3> cyclicRotations;  // n rotations about +Z
    std::vector<RatVec2> seedLattice;
    std::vector<Vec3> seedPositions;
    std::vector<Vec3> seedPositionsInitial;
    std::vector<Mat3> seedProjection;   // average over each seed's stabilizer

    std::vector<Vec3> positions;
    std::vector<int> vertexSeed;        // -1 when not seed-generated
    std::vector<int> vertexTransform;   // g * cyclicOrder + m; -1 for duals
    std::vector<char> vertexGlobalAxis;
    std::vector<std::vector<int>> faces;       // oriented outward
    std::vector<std::array<int, 2>> edges;     // sorted pairs, sorted

    Mat3 vertex_rotation(int v) const {
        int t = vertexTransform[v];
        return groupRotations[t / cyclicOrder] * cyclicRotations[t % cyclicOrder];
    }
    /// Recompute every vertex position from the current seed positions.
    void regenerate_positions();
    std::vector<int> vertex_degrees() const;
};

/// TilingGen: expand the seed set by the full transform table, weld,
/// build faces with cross-edge resolution, and for Dual parameters
/// return the combinatorial dual. Throws std::invalid_argument for
/// incompatible parameters and std::runtime_error on structural
/// inconsistencies (count mismatches, weld ambiguity).
TiledMesh generate(const MappingParams& params);

/// Collapse points within `tolerance` to single vertices. Returns the
/// representative positions and the point->vertex map. Throws when a
/// point lies within tolerance of two distinct representatives, when a
/// cluster's diameter exceeds the tolerance, or when expectedCount >= 0
/// and the collapsed count differs from it.
struct WeldResult {
    std::vector<Vec3> positions;
    std::vector<int> pointVertex;
};
WeldResult weld(const std::vector<Vec3>& points, double tolerance, long long expectedCount = -1);

/// Combinatorial dual: one vertex per face (centroid projected to the
/// circumscribed sphere), one face per vertex (incident faces in cyclic
/// order). Requires a closed orientable mesh.
TiledMesh dualize(const TiledMesh& mesh);

/// Bisected-case fold (h == k, triangular bases): re-projects the
/// face-center seed radially so the spoke fold planes meet at the face
/// center; topology unchanged. Exact regularizer for h = k = 1.
void fold_bisected(TiledMesh& mesh);

/// Largest vertex-set mismatch over all group rotations: for each
/// rotation, every rotated vertex is paired with its nearest vertex and
/// the worst pair distance is taken.
double symmetry_residual(const TiledMesh& mesh);

}  // namespace arp
