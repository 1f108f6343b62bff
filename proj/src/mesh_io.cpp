#include "arp/mesh_io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace arp {

using nlohmann::ordered_json;

std::string base_name(BaseKind b) {
    switch (b) {
        case BaseKind::Tetrahedron: return "tet";
        case BaseKind::Octahedron: return "oct";
        case BaseKind::Icosahedron: return "icosa";
        case BaseKind::Cube: return "cube";
    }
    return "?";
}
std::string lattice_name(LatticeKind l) {
    switch (l) {
        case LatticeKind::Triangular: return "tri";
        case LatticeKind::Square: return "square";
        case LatticeKind::Hexagonal: return "hex";
    }
    return "?";
}
std::string mode_name(MapMode m) { return m == MapMode::Primal ? "primal" : "dual"; }

BaseKind base_from_name(const std::string& s) {
    if (s == "tet" || s == "tetrahedron") return BaseKind::Tetrahedron;
    if (s == "oct" || s == "octahedron") return BaseKind::Octahedron;
    if (s == "icosa" || s == "icosahedron") return BaseKind::Icosahedron;
    if (s == "cube") return BaseKind::Cube;
    throw std::invalid_argument("unknown base polyhedron: " + s);
}
LatticeKind lattice_from_name(const std::string& s) {
    if (s == "tri" || s == "triangular") return LatticeKind::Triangular;
    if (s == "hex" || s == "hexagonal") return LatticeKind::Hexagonal;
    if (s == "square") return LatticeKind::Square;
    throw std::invalid_argument("unknown lattice: " + s);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_obj(const TiledMesh& mesh) {
    std::string out;
    for (const auto& p : mesh.positions)
        out += "v " + format_double(p.x) + " " + format_double(p.y) + " " + format_double(p.z) +
               "\n";
    for (const auto& f : mesh.faces) {
        out += "f";
        for (int v : f) out += " " + std::to_string(v + 1);
        out += "\n";
    }
    return out;
}

std::string to_off(const TiledMesh& mesh) {
    std::string out = "OFF\n";
    out += std::to_string(mesh.positions.size()) + " " + std::to_string(mesh.faces.size()) + " " +
           std::to_string(mesh.edges.size()) + "\n";
    for (const auto& p : mesh.positions)
        out += format_double(p.x) + " " + format_double(p.y) + " " + format_double(p.z) + "\n";
    for (const auto& f : mesh.faces) {
        out += std::to_string(f.size());
        for (int v : f) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

ordered_json mesh_to_json(const TiledMesh& mesh) {
    ordered_json j;
    j["format"] = "almostreg-mesh";
    j["version"] = 1;
    j["params"] = {{"base", base_name(mesh.params.base)},
                   {"lattice", lattice_name(mesh.params.lattice)},
                   {"h", mesh.params.h},
                   {"k", mesh.params.k},
                   {"mode", mode_name(mesh.params.mode)}};
    j["dual"] = mesh.isDual;
    j["curated"] = mesh.curated;
    j["folded"] = mesh.folded;
    j["circumradius"] = mesh.circumradius;
    j["cyclicOrder"] = mesh.cyclicOrder;

    ordered_json seeds = ordered_json::array();
    for (std::size_t i = 0; i < mesh.seedLattice.size(); ++i) {
        ordered_json s;
        s["h"] = {mesh.seedLattice[i].x.num(), mesh.seedLattice[i].x.den()};
        s["k"] = {mesh.seedLattice[i].y.num(), mesh.seedLattice[i].y.den()};
        const Vec3& p = mesh.seedPositions[i];
        const Vec3& p0 = mesh.seedPositionsInitial[i];
        s["position"] = {p.x, p.y, p.z};
        s["initialPosition"] = {p0.x, p0.y, p0.z};
        seeds.push_back(s);
    }
    j["seeds"] = seeds;

    ordered_json verts = ordered_json::array();
    for (std::size_t u = 0; u < mesh.positions.size(); ++u) {
        ordered_json v;
        v["position"] = {mesh.positions[u].x, mesh.positions[u].y, mesh.positions[u].z};
        v["seed"] = mesh.vertexSeed[u];
        v["transform"] = mesh.vertexTransform[u];
        v["globalAxis"] = (bool)mesh.vertexGlobalAxis[u];
        verts.push_back(v);
    }
    j["vertices"] = verts;
    j["faces"] = mesh.faces;
    return j;
}

TiledMesh mesh_from_json(const ordered_json& j) {
    if (j.value("format", "") != "almostreg-mesh")
        throw std::invalid_argument("not an almostreg mesh file");
    MappingParams params;
    params.base = base_from_name(j.at("params").at("base").get<std::string>());
    params.lattice = lattice_from_name(j.at("params").at("lattice").get<std::string>());
    params.h = j.at("params").at("h").get<long long>();
    params.k = j.at("params").at("k").get<long long>();
    params.mode =
        j.at("params").at("mode").get<std::string>() == "dual" ? MapMode::Dual : MapMode::Primal;

    bool dual = j.at("dual").get<bool>();
    if (!dual) {
        MappingParams gen = params;
        gen.mode = MapMode::Primal;
        TiledMesh mesh = generate(gen);
        mesh.params = params;
        const auto& seeds = j.at("seeds");
        if (seeds.size() != mesh.seedPositions.size())
            throw std::invalid_argument("seed count does not match the parameters");
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const auto& s = seeds[i];
            RatVec2 latt{Rational(s.at("h")[0].get<long long>(), s.at("h")[1].get<long long>()),
                         Rational(s.at("k")[0].get<long long>(), s.at("k")[1].get<long long>())};
            if (latt != mesh.seedLattice[i])
                throw std::invalid_argument("seed lattice coordinates do not match");
            mesh.seedPositions[i] = {s.at("position")[0].get<double>(),
                                     s.at("position")[1].get<double>(),
                                     s.at("position")[2].get<double>()};
            mesh.seedPositionsInitial[i] = {s.at("initialPosition")[0].get<double>(),
                                            s.at("initialPosition")[1].get<double>(),
                                            s.at("initialPosition")[2].get<double>()};
        }
        mesh.curated = j.at("curated").get<bool>();
        mesh.folded = j.at("folded").get<bool>();
        mesh.regenerate_positions();
        return mesh;
    }

    // dual meshes reload from the stored arrays
    TiledMesh mesh;
    mesh.params = params;
    mesh.isDual = true;
    mesh.curated = j.at("curated").get<bool>();
    mesh.folded = j.at("folded").get<bool>();
    mesh.circumradius = j.at("circumradius").get<double>();
    mesh.cyclicOrder = j.at("cyclicOrder").get<int>();
    for (const auto& v : j.at("vertices")) {
        mesh.positions.push_back({v.at("position")[0].get<double>(),
                                  v.at("position")[1].get<double>(),
                                  v.at("position")[2].get<double>()});
        mesh.vertexSeed.push_back(v.at("seed").get<int>());
        mesh.vertexTransform.push_back(v.at("transform").get<int>());
        mesh.vertexGlobalAxis.push_back(v.at("globalAxis").get<bool>() ? 1 : 0);
    }
    for (const auto& f : j.at("faces")) mesh.faces.push_back(f.get<std::vector<int>>());
    for (const auto& g : rotation_group(BasePolyhedron::make(params.base)))
        mesh.groupRotations.push_back(g.R);
    mesh.edges.clear();
    {
        std::map<std::array<int, 2>, int> count;
        for (const auto& f : mesh.faces)
            for (std::size_t i = 0; i < f.size(); ++i) {
                int a = f[i], b = f[(i + 1) % f.size()];
                std::array<int, 2> e{std::min(a, b), std::max(a, b)};
                if (++count[e] == 1) mesh.edges.push_back(e);
            }
        std::sort(mesh.edges.begin(), mesh.edges.end());
    }
    return mesh;
}

TiledMesh load_mesh_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    ordered_json j;
    in >> j;
    return mesh_from_json(j);
}

ordered_json make_report(const TiledMesh& mesh, const CurationReport* curation) {
    ordered_json j;
    FaceCounts c = face_counts(mesh.params);
    j["counts"] = {{"T", c.T},
                   {"tiles", c.tiles},
                   {"verticesTotal", c.verticesTotal},
                   {"verticesGlobal", c.verticesGlobal},
                   {"verticesLocal", c.verticesLocal},
                   {"edges", c.edges},
                   {"seedSize", c.seedSize}};
    if (mesh.params.lattice == LatticeKind::Triangular && mesh.params.mode == MapMode::Primal) {
        PerFaceCounts pf = per_face_counts(mesh.params);
        j["perFace"] = {{"interiorVertices", pf.interiorVertices},
                        {"maxEdgeLinesCrossed", pf.maxEdgeLinesCrossed},
                        {"maxTrianglesCutPerEdge", pf.maxTrianglesCutPerEdge},
                        {"areaUnits", pf.areaUnits}};
    }
    Validation v = validate(mesh.params);
    if (v.ok && v.embedding.primalEquivalent) j["primalEquivalent"] = true;
    j["curationCase"] = mesh.params.h == 0 || mesh.params.k == 0
                            ? "no-warp"
                            : (mesh.params.h == mesh.params.k ? "bisected" : "general");
    if (curation) {
        j["curation"] = {{"iterations", curation->iterations},
                         {"initialEnergy", curation->initialEnergy},
                         {"finalEnergy", curation->finalEnergy},
                         {"initialWorstRatio", curation->initialWorstRatio},
                         {"finalWorstRatio", curation->finalWorstRatio},
                         {"maxVertexDisplacement", curation->maxVertexDisplacement},
                         {"lineSearchFailed", curation->lineSearchFailed}};
    }
    j["worstEdgeRatio"] = worst_edge_ratio(mesh);
    j["symmetryResidual"] = symmetry_residual(mesh);
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace arp
