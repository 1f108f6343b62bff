#pragma once

#include <string>
#include <vector>

#include "arp/curation.hpp"
#include "arp/tiling.hpp"

namespace arp {

/// Coarse building block: a union of spheres in block-local
/// coordinates. Convention: +Z is the block's radial direction after
/// placement, and the cyclic copy offset direction is +X.
struct BlockModel {
    struct Sphere {
        Vec3 center;
        double radius;
    };
    std::string label;
    std::vector<Sphere> spheres;

    double min_radius() const;
    double max_radius() const;
};

BlockModel parse_block_json(const std::string& text);
BlockModel load_block_json(const std::string& path);

/// Per-tile decoration frame: u1 points from the origin to the tile
/// symmetry center, u2 from the center to the representative corner
/// (projected orthogonal to u1), f is the decoration order.
struct TileFrame {
    Vec3 u1, u2;
    int order;
};

/// One placed shell layout: per-block rigid placements generated from
/// one representative per tile orbit, with the same radial offset m and
/// in-plane angle theta on every tile.
struct ShellCandidate {
    long long h = 0, k = 0;
    bool mirror = false;  // h < k member of a chirality pair
    double m = 0, theta = 0;
    double score = 0;
    std::vector<RigidTransform> blockPlacements;  // face-major, copy-minor
};

/// Integer layout sizes: all (h,k) with h,k >= 0 and
/// blocksPerTile * faceCount * T = n, chirality partners both listed,
/// ordered by descending h. Empty when no solution exists.
std::vector<std::pair<long long, long long>> solve_size(long long n, BaseKind base,
                                                        int blocksPerTile);

/// Symmetry bookkeeping reused across placements of one mesh: tile
/// orbits under the rotation group, a representative frame per orbit,
/// and the block orbits used for representative-based scoring.
struct DecorationPlan {
    const TiledMesh* mesh = nullptr;
    int order = 3;                     // copies per tile
    std::vector<int> faceOrbit;        // orbit id per face
    std::vector<int> orbitRepFace;     // representative face per orbit
    std::vector<int> faceGroupElem;    // group element mapping rep face -> face
    std::vector<TileFrame> repFrames;  // frame of each orbit's representative
    std::vector<std::vector<int>> blockOrbits;  // block ids per block orbit
};

DecorationPlan plan_decoration(const TiledMesh& mesh);

/// Place one cyclic super-block per tile: the block axis aligns with
/// u1, the copy direction sits at angle theta from u2 about u1, and the
/// super-block center is at m * u1. All placements are group images of
/// the per-orbit representative.
ShellCandidate decorate(const DecorationPlan& plan, const BlockModel& block, double m,
                        double theta);
ShellCandidate decorate(const TiledMesh& mesh, const BlockModel& block, double m, double theta);

/// Contact score: over distinct block pairs, +1 per sphere pair with
/// surface gap in [0, 0.25*min radius], -10 per overlapping sphere
/// pair. Evaluated on one representative block per block orbit and
/// weighted by orbit size.
double score_candidate(const DecorationPlan& plan, const ShellCandidate& candidate,
                       const BlockModel& block);

/// All placed spheres of a candidate (block-major order).
struct PlacedSphere {
    Vec3 center;
    double radius;
    int block;
};
std::vector<PlacedSphere> expand_spheres(const ShellCandidate& candidate,
                                         const BlockModel& block);

struct ShellGenOptions {
    int angularSamples = 64;
    int radialSamples = 32;
    double mMinFactor = 0.8;  // times the curated mesh circumradius
    double mMaxFactor = 1.6;
    int refineLevels = 3;
    bool curate = true;
};

/// ShellGen: solve the size equation, build and curate each admissible
/// template, grid-search (theta, m), locally refine the best cell, and
/// return one candidate per template sorted by descending score.
std::vector<ShellCandidate> shell_gen(long long n, const BlockModel& block,
                                      const ShellGenOptions& options = {});

}  // namespace arp
