#include "arp/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace arp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWeldTol = 1e-9;

MappingParams scaffold_params(const MappingParams& p) {
    MappingParams s = p;
    s.mode = MapMode::Primal;
    if (p.lattice == LatticeKind::Hexagonal) s.lattice = LatticeKind::Triangular;
    return s;
}

struct FacePlane {
    std::vector<RatVec2> corners;
    int orient = 1;  // sign of cross2(c0,c1,c2)

    // 1 strictly inside, 0 on boundary, -1 outside; sideOut = first edge
    // whose line strictly separates the point
    int locate(const RatVec2& p, int* sideOut = nullptr) const {
        int n = (int)corners.size();
        bool on = false;
        for (int e = 0; e < n; ++e) {
            Rational s = cross2(corners[e], corners[(e + 1) % n], p);
            int sg = s.sign() * orient;
            if (sg < 0) {
                if (sideOut) *sideOut = e;
                return -1;
            }
            if (sg == 0) on = true;
        }
        return on ? 0 : 1;
    }
};

struct CellKey {
    long long x, y, z;
    bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z; }
};
struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        std::size_t h = std::hash<long long>()(k.x);
        h = h * 1000003u ^ std::hash<long long>()(k.y);
        h = h * 1000003u ^ std::hash<long long>()(k.z);
        return h;
    }
};

class Welder {
public:
    explicit Welder(double tol) : tol_(tol), cell_(std::max(tol * 4.0, 1e-12)) {}

    int find(const Vec3& p) const {
        CellKey base = key(p);
        int found = -1;
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy)
                for (long long dz = -1; dz <= 1; ++dz) {
                    auto it = grid_.find({base.x + dx, base.y + dy, base.z + dz});
                    if (it == grid_.end()) continue;
                    for (int idx : it->second) {
                        if (dist(reps_[idx], p) <= tol_) {
                            if (found >= 0 && found != idx)
                                throw std::runtime_error(
                                    "weld ambiguity: point within tolerance of two vertices");
                            found = idx;
                        }
                    }
                }
        return found;
    }

    int find_or_add(const Vec3& p) {
        int idx = find(p);
        if (idx >= 0) {
            for (const Vec3& member : members_[idx])
                if (dist(member, p) > tol_)
                    throw std::runtime_error("weld cluster diameter exceeds the tolerance");
            members_[idx].push_back(p);
            return idx;
        }
        idx = (int)reps_.size();
        reps_.push_back(p);
        members_.push_back({p});
        grid_[key(p)].push_back(idx);
        return idx;
    }

    const std::vector<Vec3>& reps() const { return reps_; }

private:
    CellKey key(const Vec3& p) const {
        return {(long long)std::floor(p.x / cell_), (long long)std::floor(p.y / cell_),
                (long long)std::floor(p.z / cell_)};
    }
    double tol_, cell_;
    std::vector<Vec3> reps_;
    std::vector<std::vector<Vec3>> members_;
    std::unordered_map<CellKey, std::vector<int>, CellKeyHash> grid_;
};

RatVec2 cyclic_rotate(LatticeKind lattice, const RatVec2& center, const RatVec2& p, int m) {
    if (lattice == LatticeKind::Square) return rotate90_about(center, p, m);
    return rotate60_about(center, p, 2 * m);  // 120-degree steps
}

std::vector<RatVec2> lattice_points_in_face(const FacePlane& face) {
    long long minX = face.corners[0].x.floor(), maxX = minX;
    long long minY = face.corners[0].y.floor(), maxY = minY;
    for (const auto& c : face.corners) {
        minX = std::min(minX, c.x.floor());
        maxX = std::max(maxX, c.x.ceil());
        minY = std::min(minY, c.y.floor());
        maxY = std::max(maxY, c.y.ceil());
    }
    std::vector<RatVec2> pts;
    for (long long i = minX; i <= maxX; ++i)
        for (long long j = minY; j <= maxY; ++j) {
            RatVec2 p{i, j};
            if (face.locate(p) >= 0) pts.push_back(p);
        }
    return pts;
}

// candidate lattice tiles near the face: list of corner rings
std::vector<std::vector<RatVec2>> candidate_tiles(const FacePlane& face, LatticeKind lattice) {
    long long minX = face.corners[0].x.floor(), maxX = minX;
    long long minY = face.corners[0].y.floor(), maxY = minY;
    for (const auto& c : face.corners) {
        minX = std::min(minX, c.x.floor());
        maxX = std::max(maxX, c.x.ceil());
        minY = std::min(minY, c.y.floor());
        maxY = std::max(maxY, c.y.ceil());
    }
    std::vector<std::vector<RatVec2>> tiles;
    for (long long i = minX - 1; i <= maxX + 1; ++i)
        for (long long j = minY - 1; j <= maxY + 1; ++j) {
            if (lattice == LatticeKind::Square) {
                tiles.push_back({RatVec2{i, j}, RatVec2{i + 1, j}, RatVec2{i + 1, j + 1},
                                 RatVec2{i, j + 1}});
            } else {
                tiles.push_back({RatVec2{i, j}, RatVec2{i + 1, j}, RatVec2{i, j + 1}});
                tiles.push_back({RatVec2{i, j}, RatVec2{i + 1, j - 1}, RatVec2{i + 1, j}});
            }
        }
    return tiles;
}

void orient_face_outward(const std::vector<Vec3>& pos, std::vector<int>& f) {
    Vec3 c{0, 0, 0};
    for (int v : f) c += pos[v];
    c = (1.0 / f.size()) * c;
    Vec3 n{0, 0, 0};  // Newell normal
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3& a = pos[f[i]];
        const Vec3& b = pos[f[(i + 1) % f.size()]];
        n += (a - c).cross(b - c);
    }
    if (n.dot(c) < 0) std::reverse(f.begin(), f.end());
}

std::vector<std::array<int, 2>> edges_from_faces(const std::vector<std::vector<int>>& faces) {
    std::vector<std::array<int, 2>> edges;
    std::map<std::array<int, 2>, int> count;
    for (const auto& f : faces)
        for (std::size_t i = 0; i < f.size(); ++i) {
            int a = f[i], b = f[(i + 1) % f.size()];
            std::array<int, 2> e{std::min(a, b), std::max(a, b)};
            if (++count[e] == 1) edges.push_back(e);
        }
    for (const auto& [e, c] : count)
        if (c != 2)
            throw std::runtime_error("mesh not closed: edge with " + std::to_string(c) +
                                     " incident faces");
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

SeedSet build_seed(const MappingParams& params) {
    MappingParams sp = scaffold_params(params);
    Validation v = validate(sp);
    if (!v.ok) {
        // the dual-mode pair may be valid where its scaffold enum combo
        // needs the original validation message
        Validation orig = validate(params);
        throw std::invalid_argument("build_seed: " + (orig.ok ? v.message : orig.message));
    }
    BasePolyhedron base = BasePolyhedron::make(sp.base);

    FacePlane face{v.embedding.corners, cross2(v.embedding.corners[0], v.embedding.corners[1],
                                               v.embedding.corners[2]).sign()};
    int n = base.gfFold;
    SeedSet seeds;
    seeds.tileOrbitCount = (v.embedding.tNumber + n - 1) / n;

    std::unordered_map<RatVec2, std::pair<int, int>, RatVec2Hash> orbitOf;
    for (const RatVec2& p : lattice_points_in_face(face)) {
        auto it = orbitOf.find(p);
        if (it == orbitOf.end()) {
            int s = (int)seeds.points.size();
            seeds.points.push_back(p);
            for (int m = 0; m < n; ++m) {
                RatVec2 q = cyclic_rotate(sp.lattice, v.embedding.center, p, m);
                orbitOf.emplace(q, std::make_pair(s, m));
            }
            it = orbitOf.find(p);
        }
        seeds.coverage.push_back({p, it->second.first, it->second.second});
    }
    return seeds;
}

void TiledMesh::regenerate_positions() {
    for (std::size_t u = 0; u < positions.size(); ++u)
        positions[u] = vertex_rotation((int)u) * seedPositions[vertexSeed[u]];
}

std::vector<int> TiledMesh::vertex_degrees() const {
    std::vector<int> deg(positions.size(), 0);
    for (const auto& e : edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    return deg;
}

WeldResult weld(const std::vector<Vec3>& points, double tolerance, long long expectedCount) {
    Welder w(tolerance);
    WeldResult r;
    r.pointVertex.reserve(points.size());
    for (const auto& p : points) r.pointVertex.push_back(w.find_or_add(p));
    r.positions = w.reps();
    if (expectedCount >= 0 && (long long)r.positions.size() != expectedCount)
        throw std::runtime_error("welded vertex count " + std::to_string(r.positions.size()) +
                                 " does not match the expected count " +
                                 std::to_string(expectedCount));
    return r;
}

namespace {

TiledMesh generate_primal(const MappingParams& params) {
    Validation v = validate(params);
    if (!v.ok) throw std::invalid_argument("generate: " + v.message);
    BasePolyhedron base = BasePolyhedron::make(params.base);
    LatticeSpec spec{params.lattice};
    FaceCounts expect = face_counts(params);

    std::vector<RigidTransform> group = rotation_group(base);
    ScaledTransform fmap = face_map(base, v.embedding, spec);
    int n = base.gfFold;

    TiledMesh mesh;
    mesh.params = params;
    mesh.cyclicOrder = n;
    for (const auto& g : group) mesh.groupRotations.push_back(g.R);
    for (int m = 0; m < n; ++m)
        mesh.cyclicRotations.push_back(Mat3::axis_angle(Vec3{0, 0, 1}, 2 * kPi * m / n));

    SeedSet seeds = build_seed(params);
    mesh.seedLattice = seeds.points;
    for (const auto& p : seeds.points) mesh.seedPositions.push_back(fmap.apply(spec.embed(p)));
    mesh.seedPositionsInitial = mesh.seedPositions;

    // expand the seed set by the full transform table and weld
    Welder welder(kWeldTol * mesh.circumradius);
    int nSeeds = (int)seeds.points.size();
    std::vector<std::vector<std::pair<int, int>>> provenance;  // per vertex: (transform, seed)
    for (int g = 0; g < (int)group.size(); ++g)
        for (int m = 0; m < n; ++m) {
            Mat3 rot = mesh.groupRotations[g] * mesh.cyclicRotations[m];
            for (int s = 0; s < nSeeds; ++s) {
                Vec3 pos = rot * mesh.seedPositions[s];
                int u = welder.find_or_add(pos);
                if (u == (int)provenance.size()) provenance.push_back({});
                provenance[u].push_back({g * n + m, s});
            }
        }
    mesh.positions = welder.reps();
    if ((long long)mesh.positions.size() != expect.verticesTotal)
        throw std::runtime_error("welded vertex count " + std::to_string(mesh.positions.size()) +
                                 " does not match the closed-form count " +
                                 std::to_string(expect.verticesTotal));

    // canonical generator per vertex: lexicographically smallest (t, s)
    mesh.vertexSeed.resize(mesh.positions.size());
    mesh.vertexTransform.resize(mesh.positions.size());
    for (std::size_t u = 0; u < mesh.positions.size(); ++u) {
        auto best = *std::min_element(provenance[u].begin(), provenance[u].end());
        mesh.vertexTransform[u] = best.first;
        mesh.vertexSeed[u] = best.second;
    }

    // stabilizer projection per seed, from coincident generators
    mesh.seedProjection.assign(nSeeds, Mat3::identity());
    {
        std::vector<char> done(nSeeds, 0);
        for (std::size_t u = 0; u < mesh.positions.size(); ++u) {
            for (auto [t0, s] : provenance[u]) {
                if (done[s]) continue;
                std::vector<Mat3> stab;
                Mat3 inv0 = (mesh.groupRotations[t0 / n] * mesh.cyclicRotations[t0 % n]).transposed();
                for (auto [t1, s1] : provenance[u]) {
                    if (s1 != s) continue;
                    Mat3 sigma = inv0 * (mesh.groupRotations[t1 / n] * mesh.cyclicRotations[t1 % n]);
                    bool seen = false;
                    for (const auto& m : stab)
                        if (m.frobenius_dist(sigma) < 1e-6) { seen = true; break; }
                    if (!seen) stab.push_back(sigma);
                }
                Mat3 avg;
                avg.m.fill(0.0);
                for (const auto& m : stab) avg = avg + m;
                mesh.seedProjection[s] = (1.0 / stab.size()) * avg;
                done[s] = 1;
            }
        }
    }

    mesh.regenerate_positions();

    // global-axis vertices: directions matching base polyhedron vertices
    mesh.vertexGlobalAxis.assign(mesh.positions.size(), 0);
    for (std::size_t u = 0; u < mesh.positions.size(); ++u)
        for (const auto& bv : base.vertices)
            if (dist(mesh.positions[u], bv) < 1e-6) {
                mesh.vertexGlobalAxis[u] = 1;
                break;
            }

    // 2-fold rotations about the canonical face's edge midpoints, used
    // to resolve tile corners that fall beyond the face boundary
    FacePlane face{v.embedding.corners, cross2(v.embedding.corners[0], v.embedding.corners[1],
                                               v.embedding.corners[2]).sign()};
    int sides = (int)face.corners.size();
    std::vector<Mat3> edgeFlip(sides);
    for (int e = 0; e < sides; ++e) {
        Vec3 a = fmap.apply(spec.embed(face.corners[e]));
        Vec3 b = fmap.apply(spec.embed(face.corners[(e + 1) % sides]));
        Vec3 axis = (0.5 * (a + b)).normalized();
        int gi = find_group_element(group, Mat3::axis_angle(axis, kPi), 1e-7);
        if (gi < 0) throw std::runtime_error("edge 2-fold rotation is not a group element");
        edgeFlip[e] = mesh.groupRotations[gi];
    }

    // per-tile corner resolution in the canonical frame
    struct ResolvedTile {
        std::vector<RatVec2> corners;  // in/on lattice points
        std::vector<Mat3> acc;         // accumulated neighbor-side rotations
    };
    std::vector<ResolvedTile> emitted;
    for (const auto& tile : candidate_tiles(face, params.lattice)) {
        int strictlyInside = 0, outside = 0;
        for (const auto& c : tile) {
            int loc = face.locate(c);
            if (loc > 0) ++strictlyInside;
            if (loc < 0) ++outside;
        }
        if (!(strictlyInside >= 1 || outside == 0)) continue;
        ResolvedTile rt;
        bool ok = true;
        for (const auto& c : tile) {
            RatVec2 w = c;
            Mat3 acc = Mat3::identity();
            int guard = 0;
            int side = -1;
            while (face.locate(w, &side) < 0) {
                if (++guard > 8) { ok = false; break; }
                RatVec2 m = face.corners[side] + face.corners[(side + 1) % sides];
                w = RatVec2{m.x - w.x, m.y - w.y};  // 180-degree partner across the edge center
                acc = acc * edgeFlip[side];
            }
            if (!ok) break;
            rt.corners.push_back(w);
            rt.acc.push_back(acc);
        }
        if (!ok) throw std::runtime_error("unresolved tile corner outside the face");
        emitted.push_back(std::move(rt));
    }

    // emit every tile in every group frame, dedup by vertex-id set
    std::map<std::vector<int>, int> seen;
    for (int g = 0; g < (int)group.size(); ++g) {
        for (const auto& rt : emitted) {
            std::vector<int> ids;
            ids.reserve(rt.corners.size());
            bool ok = true;
            for (std::size_t c = 0; c < rt.corners.size(); ++c) {
                Vec3 pos = mesh.groupRotations[g] * (rt.acc[c] * fmap.apply(spec.embed(rt.corners[c])));
                int u = welder.find(pos);
                if (u < 0) { ok = false; break; }
                ids.push_back(u);
            }
            if (!ok) throw std::runtime_error("tile corner does not match a welded vertex");
            std::vector<int> key = ids;
            std::sort(key.begin(), key.end());
            if (std::unique(key.begin(), key.end()) != key.end())
                throw std::runtime_error("degenerate tile after welding");
            if (seen.emplace(key, (int)mesh.faces.size()).second) mesh.faces.push_back(ids);
        }
    }
    if ((long long)mesh.faces.size() != expect.tiles)
        throw std::runtime_error("face count " + std::to_string(mesh.faces.size()) +
                                 " does not match the closed-form count " +
                                 std::to_string(expect.tiles));
    for (auto& f : mesh.faces) orient_face_outward(mesh.positions, f);
    mesh.edges = edges_from_faces(mesh.faces);
    if ((long long)mesh.edges.size() != expect.edges)
        throw std::runtime_error("edge count mismatch");
    return mesh;
}

}  // namespace

TiledMesh generate(const MappingParams& params) {
    Validation v = validate(params);
    if (!v.ok) throw std::invalid_argument("generate: " + v.message);
    if (params.mode == MapMode::Primal) return generate_primal(params);
    TiledMesh primal = generate_primal(scaffold_params(params));
    TiledMesh dual = dualize(primal);
    dual.params = params;
    return dual;
}

TiledMesh dualize(const TiledMesh& mesh) {
    if (mesh.faces.empty()) throw std::invalid_argument("dualize: empty mesh");
    TiledMesh dual;
    dual.params = mesh.params;
    dual.isDual = !mesh.isDual;
    dual.curated = mesh.curated;
    dual.folded = mesh.folded;
    dual.circumradius = mesh.circumradius;
    dual.groupRotations = mesh.groupRotations;

    for (const auto& f : mesh.faces) {
        Vec3 c{0, 0, 0};
        for (int v : f) c += mesh.positions[v];
        dual.positions.push_back(mesh.circumradius * c.normalized());
    }
    dual.vertexSeed.assign(dual.positions.size(), -1);
    dual.vertexTransform.assign(dual.positions.size(), -1);
    dual.vertexGlobalAxis.assign(dual.positions.size(), 0);

    // directed-edge -> face table
    std::map<std::pair<int, int>, int> faceOfEdge;
    for (int fi = 0; fi < (int)mesh.faces.size(); ++fi) {
        const auto& f = mesh.faces[fi];
        for (std::size_t i = 0; i < f.size(); ++i)
            faceOfEdge[{f[i], f[(i + 1) % f.size()]}] = fi;
    }
    auto succ = [&](int fi, int v) {
        const auto& f = mesh.faces[fi];
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] == v) return f[(i + 1) % f.size()];
        throw std::logic_error("vertex not in face");
    };

    int nv = (int)mesh.positions.size();
    std::vector<int> someFace(nv, -1);
    for (int fi = 0; fi < (int)mesh.faces.size(); ++fi)
        for (int v : mesh.faces[fi])
            if (someFace[v] < 0) someFace[v] = fi;

    for (int v = 0; v < nv; ++v) {
        std::vector<int> ring;
        int f0 = someFace[v];
        int f = f0;
        do {
            ring.push_back(f);
            int nxt = succ(f, v);
            auto it = faceOfEdge.find({nxt, v});
            if (it == faceOfEdge.end()) throw std::runtime_error("dualize: open mesh");
            f = it->second;
        } while (f != f0);
        dual.faces.push_back(ring);
    }
    for (auto& f : dual.faces) orient_face_outward(dual.positions, f);
    dual.edges = edges_from_faces(dual.faces);
    return dual;
}

void fold_bisected(TiledMesh& mesh) {
    if (mesh.isDual) throw std::invalid_argument("fold applies to primal meshes");
    if (mesh.params.lattice != LatticeKind::Triangular)
        throw std::invalid_argument("fold is defined for triangular-lattice meshes");
    if (mesh.params.h != mesh.params.k)
        throw std::invalid_argument("fold applies to the bisected case (h == k)");

    int dseed = -1;
    for (int s = 0; s < (int)mesh.seedPositions.size(); ++s) {
        const Vec3& p = mesh.seedPositions[s];
        if (std::hypot(p.x, p.y) < 1e-9) dseed = s;
    }
    if (dseed < 0) throw std::runtime_error("no face-center seed found");

    BasePolyhedron base = BasePolyhedron::make(mesh.params.base);
    Vec3 v0 = base.vertices[base.canonicalFace()[0]];
    Vec3 a = v0;
    Vec3 b = base.vertices[base.canonicalFace()[1]];
    Vec3 axis = (0.5 * (a + b)).normalized();
    double c = axis.z;                    // edge axis vs face axis
    double q2 = 4.0 * (1.0 - c * c);      // |D - flip(D)|^2 = q2 * rho^2
    double cv = v0.z;
    // |corner - D(rho)|^2 = q2 rho^2  =>  (1 - q2) rho^2 - 2 cv rho + 1 = 0
    double A = 1.0 - q2, B = -2.0 * cv, C = 1.0;
    double disc = B * B - 4 * A * C;
    if (disc < 0) throw std::runtime_error("fold: no radial solution");
    double r1 = (-B - std::sqrt(disc)) / (2 * A);
    double r2 = (-B + std::sqrt(disc)) / (2 * A);
    double flat = base.faceCenterDistance;
    double rho = std::abs(r1 - flat) < std::abs(r2 - flat) ? r1 : r2;

    mesh.seedPositions[dseed] = Vec3{0, 0, rho};
    mesh.regenerate_positions();
    mesh.folded = true;
}

double symmetry_residual(const TiledMesh& mesh) {
    double worst = 0;
    for (const auto& R : mesh.groupRotations) {
        for (const auto& p : mesh.positions) {
            Vec3 q = R * p;
            double best = 1e300;
            for (const auto& r : mesh.positions) best = std::min(best, dist2(q, r));
            worst = std::max(worst, best);
        }
    }
    return std::sqrt(worst);
}

}  // namespace arp
