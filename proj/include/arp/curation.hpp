#pragma once

#include <array>
#include <vector>

#include "arp/tiling.hpp"

namespace arp {

/// Optimization state over the seed positions. Every mesh vertex is a
/// rigid image of one seed, so moving only the seeds keeps the global
/// symmetry; seeds with a nontrivial stabilizer are additionally pinned
/// to their invariant subspace by the per-seed projection (energy and
/// gradient are evaluated through the projection, which keeps the
/// analytic gradient exactly consistent with finite differences of the
/// implemented function).
struct EnergyState {
    const TiledMesh* mesh = nullptr;
    std::vector<Vec3> seeds;   // current positions (ambient)
    std::vector<Vec3> seeds0;  // initial positions
    std::vector<std::array<int, 2>> tileEdges;  // squared-length equalization set
    std::vector<std::array<int, 2>> diagonals;  // quad diagonals / hexagon long diagonals
    double lambda = 0.1;       // displacement weight
};

EnergyState make_energy_state(const TiledMesh& mesh, double lambda = 0.1);

/// F = var(l over tile edges) + var(l over diagonals, when any)
///   + lambda/|S| * sum of squared seed displacements,
/// with l(e) the squared Euclidean length and the means taken over the
/// current state.
double energy(const EnergyState& state);

/// Analytic gradient with respect to the (ambient) seed positions;
/// each edge term is pulled back through the rigid transform of its
/// endpoints, and stabilized seeds are symmetrized.
std::vector<Vec3> gradient(const EnergyState& state);

struct CurationOptions {
    int maxIterations = 500;
    double gradTolerance = 1e-10;  // max-norm of the projected gradient
    double lambda = 0.1;
    int memory = 8;  // L-BFGS history
};

struct CurationReport {
    int iterations = 0;
    double initialEnergy = 0, finalEnergy = 0;
    double initialWorstRatio = 1, finalWorstRatio = 1;
    double maxVertexDisplacement = 0;
    double symmetryResidual = 0;
    bool lineSearchFailed = false;
    std::vector<double> energyTrace;  // accepted iterates, non-increasing
};

/// Quasi-Newton (L-BFGS, Armijo backtracking) minimization of the seed
/// energy. NoWarp meshes return unchanged with a zero-iteration report.
std::pair<TiledMesh, CurationReport> curate(const TiledMesh& mesh,
                                            const CurationOptions& options = {});

/// Worst longest/shortest edge-length ratio over all faces.
double worst_edge_ratio(const TiledMesh& mesh);

}  // namespace arp
