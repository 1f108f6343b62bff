#include "arp/shell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace arp {

namespace {

constexpr double kPi = 3.14159265358979323846;

int worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ALMOSTREG_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<unsigned>(hw, (unsigned)v);
    }
    return (int)hw;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

// permutation of vertices induced by a rotation, by nearest matching
std::vector<int> vertex_permutation(const TiledMesh& mesh, const Mat3& R) {
    std::vector<int> perm(mesh.positions.size());
    for (std::size_t v = 0; v < mesh.positions.size(); ++v) {
        Vec3 q = R * mesh.positions[v];
        int best = -1;
        double bd = 1e300;
        for (std::size_t u = 0; u < mesh.positions.size(); ++u) {
            double d = dist2(q, mesh.positions[u]);
            if (d < bd) {
                bd = d;
                best = (int)u;
            }
        }
        if (bd > 1e-12)
            throw std::runtime_error("mesh is not symmetric under its own rotation group");
        perm[v] = best;
    }
    return perm;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

Mat3 rotation_to_frame(const Vec3& v1, const Vec3& v2) {
    // columns: +X -> v2, +Y -> v1 x v2, +Z -> v1
    Vec3 y = v1.cross(v2);
    Mat3 r;
    r.m = {v2.x, y.x, v1.x, v2.y, y.y, v1.y, v2.z, y.z, v1.z};
    return r;
}

}  // namespace

double BlockModel::min_radius() const {
    double r = 1e300;
    for (const auto& s : spheres) r = std::min(r, s.radius);
    return r;
}
double BlockModel::max_radius() const {
    double r = 0;
    for (const auto& s : spheres) r = std::max(r, s.radius);
    return r;
}

BlockModel parse_block_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BlockModel b;
    b.label = j.value("label", "block");
    if (!j.contains("spheres") || !j["spheres"].is_array() || j["spheres"].empty())
        throw std::invalid_argument("block model needs a non-empty \"spheres\" array");
    for (const auto& s : j["spheres"]) {
        BlockModel::Sphere sp;
        sp.center = {s.at("x").get<double>(), s.at("y").get<double>(), s.at("z").get<double>()};
        sp.radius = s.at("r").get<double>();
        if (sp.radius <= 0) throw std::invalid_argument("sphere radius must be positive");
        b.spheres.push_back(sp);
    }
    return b;
}

BlockModel load_block_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open block file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_block_json(ss.str());
}

std::vector<std::pair<long long, long long>> solve_size(long long n, BaseKind base,
                                                        int blocksPerTile) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    BasePolyhedron poly = BasePolyhedron::make(base);
    long long per = (long long)blocksPerTile * poly.faceCount;
    std::vector<std::pair<long long, long long>> out;
    if (n % per != 0) return out;
    long long T = n / per;
    bool square = base == BaseKind::Cube;
    long long hmax = (long long)std::floor(std::sqrt((double)T) + 1);
    for (long long h = hmax; h >= 0; --h) {
        for (long long k = 0; k * k + (square ? 0 : h * k) + h * h <= T; ++k) {
            long long t = square ? h * h + k * k : h * h + h * k + k * k;
            if (t == T && !(h == 0 && k == 0)) out.push_back({h, k});
        }
    }
    return out;
}

DecorationPlan plan_decoration(const TiledMesh& mesh) {
    if (mesh.groupRotations.empty())
        throw std::invalid_argument("decoration needs the mesh rotation group");
    DecorationPlan plan;
    plan.mesh = &mesh;
    plan.order = (int)mesh.faces[0].size();
    for (const auto& f : mesh.faces)
        if ((int)f.size() != plan.order)
            throw std::invalid_argument("decoration requires a single tile degree");

    int nf = (int)mesh.faces.size();
    int ng = (int)mesh.groupRotations.size();

    std::map<std::vector<int>, int> faceIndex;
    for (int f = 0; f < nf; ++f) {
        std::vector<int> key = mesh.faces[f];
        std::sort(key.begin(), key.end());
        faceIndex[key] = f;
    }

    // face permutation per group element
    std::vector<std::vector<int>> facePerm(ng);
    for (int g = 0; g < ng; ++g) {
        std::vector<int> vperm = vertex_permutation(mesh, mesh.groupRotations[g]);
        facePerm[g].resize(nf);
        for (int f = 0; f < nf; ++f) {
            std::vector<int> key;
            key.reserve(plan.order);
            for (int v : mesh.faces[f]) key.push_back(vperm[v]);
            std::sort(key.begin(), key.end());
            auto it = faceIndex.find(key);
            if (it == faceIndex.end())
                throw std::runtime_error("face set is not closed under the rotation group");
            facePerm[g][f] = it->second;
        }
    }

    UnionFind uf(nf);
    for (int g = 0; g < ng; ++g)
        for (int f = 0; f < nf; ++f) uf.unite(f, facePerm[g][f]);

    std::map<int, int> orbitIds;
    plan.faceOrbit.resize(nf);
    for (int f = 0; f < nf; ++f) {
        int root = uf.find(f);
        auto [it, inserted] = orbitIds.emplace(root, (int)plan.orbitRepFace.size());
        if (inserted) plan.orbitRepFace.push_back(f);  // smallest face index first
        plan.faceOrbit[f] = it->second;
    }

    plan.faceGroupElem.assign(nf, -1);
    for (int g = 0; g < ng; ++g)
        for (int o = 0; o < (int)plan.orbitRepFace.size(); ++o) {
            int img = facePerm[g][plan.orbitRepFace[o]];
            if (plan.faceGroupElem[img] < 0) plan.faceGroupElem[img] = g;
        }

    for (int rep : plan.orbitRepFace) {
        const auto& f = mesh.faces[rep];
        Vec3 c{0, 0, 0};
        for (int v : f) c += mesh.positions[v];
        c = (1.0 / f.size()) * c;
        Vec3 u1 = c.normalized();
        int corner = *std::min_element(f.begin(), f.end());
        Vec3 raw = mesh.positions[corner] - c;
        Vec3 u2 = (raw - raw.dot(u1) * u1).normalized();
        plan.repFrames.push_back({u1, u2, plan.order});
    }

    // block orbits from a generic probe placement; the induced block
    // permutations do not depend on (m, theta)
    {
        BlockModel probeBlock;
        probeBlock.spheres.push_back({Vec3{0.61, 0.27, 0.13}, 0.1});
        ShellCandidate probe = decorate(plan, probeBlock, 1.17, 0.41);
        int nb = (int)probe.blockPlacements.size();
        Vec3 local{0.61, 0.27, 0.13};
        std::vector<Vec3> probes(nb);
        for (int b = 0; b < nb; ++b) probes[b] = probe.blockPlacements[b].apply(local);
        UnionFind bu(nb);
        for (int g = 0; g < ng; ++g) {
            for (int b = 0; b < nb; ++b) {
                Vec3 q = mesh.groupRotations[g] * probes[b];
                int best = -1;
                double bd = 1e300;
                for (int c = 0; c < nb; ++c) {
                    double d = dist2(q, probes[c]);
                    if (d < bd) {
                        bd = d;
                        best = c;
                    }
                }
                if (bd > 1e-12) throw std::runtime_error("block set not closed under the group");
                bu.unite(b, best);
            }
        }
        std::map<int, int> ids;
        std::vector<std::vector<int>> orbits;
        for (int b = 0; b < nb; ++b) {
            int root = bu.find(b);
            auto [it, inserted] = ids.emplace(root, (int)orbits.size());
            if (inserted) orbits.push_back({});
            orbits[it->second].push_back(b);
        }
        plan.blockOrbits = std::move(orbits);
    }
    return plan;
}

ShellCandidate decorate(const DecorationPlan& plan, const BlockModel& block, double m,
                        double theta) {
    double bounding = 0;
    for (const auto& s : block.spheres) bounding = std::max(bounding, s.center.norm() + s.radius);
    if (bounding >= plan.mesh->circumradius)
        throw std::invalid_argument("block bounding radius exceeds the shell circumradius");
    const TiledMesh& mesh = *plan.mesh;
    int nf = (int)mesh.faces.size();
    int o = plan.order;

    ShellCandidate cand;
    cand.h = mesh.params.h;
    cand.k = mesh.params.k;
    cand.mirror = mesh.params.h < mesh.params.k;
    cand.m = m;
    cand.theta = theta;
    cand.blockPlacements.resize((std::size_t)nf * o);

    // representative placements per orbit
    std::vector<std::vector<RigidTransform>> repPlacements(plan.orbitRepFace.size());
    for (std::size_t orb = 0; orb < plan.orbitRepFace.size(); ++orb) {
        const TileFrame& fr = plan.repFrames[orb];
        Vec3 v1 = fr.u1;
        Vec3 v2 = Mat3::axis_angle(v1, -theta) * fr.u2;
        Vec3 c = m * v1;
        Mat3 r0 = rotation_to_frame(v1, v2);
        for (int i = 0; i < o; ++i) {
            Mat3 ri = Mat3::axis_angle(v1, 2 * kPi * i / o) * r0;
            repPlacements[orb].push_back({ri, c});
        }
    }
    for (int f = 0; f < nf; ++f) {
        int orb = plan.faceOrbit[f];
        const Mat3& g = mesh.groupRotations[plan.faceGroupElem[f]];
        for (int i = 0; i < o; ++i) {
            const RigidTransform& rp = repPlacements[orb][i];
            cand.blockPlacements[(std::size_t)f * o + i] = {g * rp.R, g * rp.t};
        }
    }
    return cand;
}

ShellCandidate decorate(const TiledMesh& mesh, const BlockModel& block, double m, double theta) {
    DecorationPlan plan = plan_decoration(mesh);
    return decorate(plan, block, m, theta);
}

std::vector<PlacedSphere> expand_spheres(const ShellCandidate& candidate,
                                         const BlockModel& block) {
    std::vector<PlacedSphere> out;
    out.reserve(candidate.blockPlacements.size() * block.spheres.size());
    for (int b = 0; b < (int)candidate.blockPlacements.size(); ++b)
        for (const auto& s : block.spheres)
            out.push_back({candidate.blockPlacements[b].apply(s.center), s.radius, b});
    return out;
}

namespace {

struct SphereGrid {
    double cell;
    std::unordered_map<long long, std::vector<int>> cells;

    static long long key(long long x, long long y, long long z) {
        return (x * 73856093LL) ^ (y * 19349663LL) ^ (z * 83492791LL);
    }
    void insert(const std::vector<PlacedSphere>& sph) {
        for (int i = 0; i < (int)sph.size(); ++i) {
            const Vec3& c = sph[i].center;
            cells[key((long long)std::floor(c.x / cell), (long long)std::floor(c.y / cell),
                      (long long)std::floor(c.z / cell))]
                .push_back(i);
        }
    }
    template <typename Fn>
    void neighbors(const Vec3& p, Fn&& fn) const {
        long long bx = (long long)std::floor(p.x / cell);
        long long by = (long long)std::floor(p.y / cell);
        long long bz = (long long)std::floor(p.z / cell);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy)
                for (long long dz = -1; dz <= 1; ++dz) {
                    auto it = cells.find(key(bx + dx, by + dy, bz + dz));
                    if (it == cells.end()) continue;
                    for (int i : it->second) fn(i);
                }
    }
};

double pair_term(double gap, double tol) {
    if (gap < 0) return -10;
    if (gap <= tol) return 1;
    return 0;
}

}  // namespace

double score_candidate(const DecorationPlan& plan, const ShellCandidate& candidate,
                       const BlockModel& block) {
    std::vector<PlacedSphere> sph = expand_spheres(candidate, block);
    double tol = 0.25 * block.min_radius();
    SphereGrid grid{2 * block.max_radius() + tol, {}};
    grid.insert(sph);

    int spb = (int)block.spheres.size();
    double total = 0;
    for (const auto& orbit : plan.blockOrbits) {
        int rep = orbit[0];
        double s = 0;
        for (int i = rep * spb; i < (rep + 1) * spb; ++i) {
            grid.neighbors(sph[i].center, [&](int j) {
                if (sph[j].block == rep) return;
                double gap = dist(sph[i].center, sph[j].center) - sph[i].radius - sph[j].radius;
                s += pair_term(gap, tol);
            });
        }
        total += 0.5 * orbit.size() * s;
    }
    return total;
}

std::vector<ShellCandidate> shell_gen(long long n, const BlockModel& block,
                                      const ShellGenOptions& options) {
    auto solutions = solve_size(n, BaseKind::Icosahedron, 3);
    std::vector<ShellCandidate> out;
    for (auto [h, k] : solutions) {
        MappingParams params{BaseKind::Icosahedron, LatticeKind::Triangular, h, k,
                             MapMode::Primal};
        TiledMesh mesh = generate(params);
        if (options.curate && curation_case(params) != CurationCase::NoWarp)
            mesh = curate(mesh).first;
        DecorationPlan plan = plan_decoration(mesh);

        double radius = 0;
        for (const auto& p : mesh.positions) radius = std::max(radius, p.norm());
        double mLo = options.mMinFactor * radius, mHi = options.mMaxFactor * radius;
        double thetaSpan = 2 * kPi / plan.order;

        int A = options.angularSamples, R = options.radialSamples;
        std::vector<double> scores((std::size_t)A * R);
        parallel_for(A * R, [&](int idx) {
            int a = idx / R, r = idx % R;
            double theta = thetaSpan * a / A;
            double m = R > 1 ? mLo + (mHi - mLo) * r / (R - 1) : mLo;
            ShellCandidate c = decorate(plan, block, m, theta);
            scores[idx] = score_candidate(plan, c, block);
        });

        int bestIdx = 0;
        for (int idx = 1; idx < A * R; ++idx)
            if (scores[idx] > scores[bestIdx]) bestIdx = idx;
        double bestTheta = thetaSpan * (bestIdx / R) / A;
        double bestM = R > 1 ? mLo + (mHi - mLo) * (bestIdx % R) / (R - 1) : mLo;
        double bestScore = scores[bestIdx];

        // local refinement by coordinate descent
        double dTheta = thetaSpan / A, dM = R > 1 ? (mHi - mLo) / (R - 1) : 0.1 * radius;
        for (int level = 0; level < options.refineLevels; ++level) {
            dTheta *= 0.5;
            dM *= 0.5;
            for (int sweep = 0; sweep < 2; ++sweep) {
                for (double t : {bestTheta - dTheta, bestTheta + dTheta}) {
                    ShellCandidate c = decorate(plan, block, bestM, t);
                    double s = score_candidate(plan, c, block);
                    if (s > bestScore) {
                        bestScore = s;
                        bestTheta = t;
                    }
                }
                for (double m : {bestM - dM, bestM + dM}) {
                    ShellCandidate c = decorate(plan, block, m, bestTheta);
                    double s = score_candidate(plan, c, block);
                    if (s > bestScore) {
                        bestScore = s;
                        bestM = m;
                    }
                }
            }
        }

        ShellCandidate best = decorate(plan, block, bestM, bestTheta);
        best.score = bestScore;
        out.push_back(std::move(best));
    }
    std::stable_sort(out.begin(), out.end(), [](const ShellCandidate& a, const ShellCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.m < b.m;
    });
    return out;
}

}  // namespace arp
