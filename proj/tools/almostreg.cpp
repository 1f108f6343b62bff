#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "arp/mesh_io.hpp"
#include "arp/shell.hpp"

namespace {

using namespace arp;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalidParams = 2;
constexpr int kExitNoSolution = 3;

struct MappingFlags {
    std::string base = "icosa";
    std::string lattice = "tri";
    long long h = 1, k = 0;
    bool dual = false;

    MappingParams params() const {
        MappingParams p;
        p.base = base_from_name(base);
        p.lattice = lattice_from_name(lattice);
        p.h = h;
        p.k = k;
        p.mode = dual ? MapMode::Dual : MapMode::Primal;
        return p;
    }
};

void add_mapping_flags(CLI::App* cmd, MappingFlags& f) {
    cmd->add_option("--base", f.base, "base polyhedron: tet|oct|icosa|cube")
        ->default_str("icosa");
    cmd->add_option("--lattice", f.lattice, "lattice: tri|hex|square")->default_str("tri");
    cmd->add_option("--h", f.h, "first lattice step")->required();
    cmd->add_option("--k", f.k, "second lattice step")->required();
    cmd->add_flag("--dual", f.dual, "corners on lattice face centers; emits the dual solid");
}

std::string format_from_path(const std::string& path, const std::string& explicitFormat) {
    if (!explicitFormat.empty()) return explicitFormat;
    auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".off") return "off";
    if (ext == ".json") return "json";
    return "obj";
}

void write_mesh(const TiledMesh& mesh, const std::string& path, const std::string& format) {
    if (format == "obj")
        write_text_file(path, to_obj(mesh));
    else if (format == "off")
        write_text_file(path, to_off(mesh));
    else if (format == "json")
        write_text_file(path, mesh_to_json(mesh).dump(2) + "\n");
    else
        throw std::invalid_argument("unknown format: " + format);
}

int cmd_gen(const MappingFlags& flags, bool doCurate, bool doFold, const CurationOptions& copt,
            const std::string& output, const std::string& format) {
    Validation v = validate(flags.params());
    if (!v.ok) {
        std::cerr << "invalid parameters: " << v.message << "\n";
        return kExitInvalidParams;
    }
    if (doFold && (flags.params().lattice != LatticeKind::Triangular || flags.h != flags.k ||
                   flags.dual)) {
        std::cerr << "invalid parameters: --fold needs a primal triangular mapping with h == k\n";
        return kExitInvalidParams;
    }

    bool dual = flags.params().mode == MapMode::Dual;
    MappingParams primal = flags.params();
    primal.mode = MapMode::Primal;
    if (primal.lattice == LatticeKind::Hexagonal) primal.lattice = LatticeKind::Triangular;

    TiledMesh mesh = generate(primal);
    CurationReport report;
    bool curated = false;
    if (doFold) fold_bisected(mesh);
    if (doCurate) {
        auto [m, r] = curate(mesh, copt);
        mesh = std::move(m);
        report = std::move(r);
        curated = true;
    }
    if (dual) {
        mesh = dualize(mesh);
        mesh.params = flags.params();
    }

    write_mesh(mesh, output, format_from_path(output, format));
    write_text_file(output + ".report.json",
                    make_report(mesh, curated ? &report : nullptr).dump(2) + "\n");
    return kExitOk;
}

int cmd_counts(const MappingFlags& flags) {
    Validation v = validate(flags.params());
    if (!v.ok) {
        std::cerr << "invalid parameters: " << v.message << "\n";
        return kExitInvalidParams;
    }
    FaceCounts c = face_counts(flags.params());
    ordered_json j;
    j["T"] = c.T;
    j["tiles"] = c.tiles;
    j["verticesTotal"] = c.verticesTotal;
    j["verticesGlobal"] = c.verticesGlobal;
    j["verticesLocal"] = c.verticesLocal;
    j["edges"] = c.edges;
    j["seedSize"] = c.seedSize;
    if (flags.params().lattice == LatticeKind::Triangular &&
        flags.params().mode == MapMode::Primal) {
        PerFaceCounts pf = per_face_counts(flags.params());
        j["perFace"] = {{"interiorVertices", pf.interiorVertices},
                        {"maxEdgeLinesCrossed", pf.maxEdgeLinesCrossed},
                        {"maxTrianglesCutPerEdge", pf.maxTrianglesCutPerEdge},
                        {"areaUnits", pf.areaUnits}};
    }
    if (v.embedding.primalEquivalent) j["primalEquivalent"] = true;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_validate(const MappingFlags& flags) {
    Validation v = validate(flags.params());
    ordered_json j;
    j["valid"] = v.ok;
    if (v.ok) {
        ordered_json corners = ordered_json::array();
        for (const auto& c : v.embedding.corners)
            corners.push_back({{"h", c.x.str()}, {"k", c.y.str()}});
        j["corners"] = corners;
        j["center"] = {{"h", v.embedding.center.x.str()}, {"k", v.embedding.center.y.str()}};
        j["T"] = v.embedding.tNumber;
        if (v.embedding.primalEquivalent) j["primalEquivalent"] = true;
    } else {
        j["reason"] = v.message;
    }
    std::cout << j.dump(2) << "\n";
    return v.ok ? kExitOk : kExitInvalidParams;
}

int cmd_curate(const std::string& input, const std::string& output, const std::string& format,
               const CurationOptions& copt) {
    TiledMesh mesh = load_mesh_json(input);
    if (mesh.isDual) {
        std::cerr << "invalid parameters: curation operates on primal meshes\n";
        return kExitInvalidParams;
    }
    auto [out, report] = curate(mesh, copt);
    write_mesh(out, output, format_from_path(output, format));
    write_text_file(output + ".report.json", make_report(out, &report).dump(2) + "\n");
    return kExitOk;
}

int cmd_shellgen(long long n, const std::string& blockPath, const std::string& outDir, int top,
                 const std::string& grid, double mMin, double mMax, bool writeSpheres) {
    BlockModel block = load_block_json(blockPath);
    ShellGenOptions opt;
    opt.mMinFactor = mMin;
    opt.mMaxFactor = mMax;
    if (!grid.empty()) {
        auto x = grid.find('x');
        if (x == std::string::npos) throw std::invalid_argument("--grid expects AxR, e.g. 64x32");
        opt.angularSamples = std::stoi(grid.substr(0, x));
        opt.radialSamples = std::stoi(grid.substr(x + 1));
    }

    auto sizes = solve_size(n, BaseKind::Icosahedron, 3);
    if (sizes.empty()) {
        std::cerr << "no integer layout solution for n=" << n << "; terminating\n";
        return kExitNoSolution;
    }
    std::vector<ShellCandidate> candidates = shell_gen(n, block, opt);
    if (top > 0 && (int)candidates.size() > top) candidates.resize(top);

    std::filesystem::create_directories(outDir);
    ordered_json summary = ordered_json::array();
    for (int rank = 0; rank < (int)candidates.size(); ++rank) {
        const ShellCandidate& c = candidates[rank];
        ordered_json j;
        j["rank"] = rank;
        j["h"] = c.h;
        j["k"] = c.k;
        j["mirror"] = c.mirror;
        j["m"] = c.m;
        j["theta"] = c.theta;
        j["score"] = c.score;
        j["blocks"] = c.blockPlacements.size();
        ordered_json placements = ordered_json::array();
        for (const auto& p : c.blockPlacements) {
            placements.push_back(
                {{"rotation", p.R.m}, {"translation", {p.t.x, p.t.y, p.t.z}}});
        }
        j["placements"] = placements;
        write_text_file(outDir + "/candidate_" + std::to_string(rank) + ".json",
                        j.dump(2) + "\n");
        if (writeSpheres) {
            ordered_json spheres = ordered_json::array();
            for (const auto& s : expand_spheres(c, block))
                spheres.push_back(
                    {{"x", s.center.x}, {"y", s.center.y}, {"z", s.center.z}, {"r", s.radius}});
            write_text_file(outDir + "/spheres_" + std::to_string(rank) + ".json",
                            spheres.dump(2) + "\n");
        }
        summary.push_back({{"rank", rank},
                           {"h", c.h},
                           {"k", c.k},
                           {"mirror", c.mirror},
                           {"m", c.m},
                           {"theta", c.theta},
                           {"score", c.score}});
    }
    write_text_file(outDir + "/summary.json", summary.dump(2) + "\n");

    std::cout << "rank  h  k  mirror          m        theta      score\n";
    for (const auto& row : summary)
        std::printf("%4d %2lld %2lld %7s %10.6f %12.8f %10.1f\n", row["rank"].get<int>(),
                    row["h"].get<long long>(), row["k"].get<long long>(),
                    row["mirror"].get<bool>() ? "yes" : "no", row["m"].get<double>(),
                    row["theta"].get<double>(), row["score"].get<double>());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost-regular polyhedra: construction, curation and shell assembly"};
    app.require_subcommand(1);

    MappingFlags genFlags;
    bool genCurate = false, genFold = false;
    CurationOptions copt;
    std::string genOutput, genFormat;
    auto* gen = app.add_subcommand("gen", "generate a tiled polyhedron mesh");
    add_mapping_flags(gen, genFlags);
    gen->add_flag("--curate", genCurate, "regularize warped tiles before writing");
    gen->add_flag("--fold", genFold, "bisected-case radial fold (h == k)");
    gen->add_option("--max-iterations", copt.maxIterations, "curation iteration cap");
    gen->add_option("--grad-tol", copt.gradTolerance, "curation gradient max-norm tolerance");
    gen->add_option("--lambda", copt.lambda, "curation displacement weight");
    gen->add_option("-o,--output", genOutput, "output mesh path")->required();
    gen->add_option("--format", genFormat, "obj|off|json (default from extension)");

    MappingFlags countFlags;
    auto* counts = app.add_subcommand("counts", "print closed-form combinatorics as JSON");
    add_mapping_flags(counts, countFlags);

    MappingFlags valFlags;
    auto* val = app.add_subcommand("validate", "check compatible-mapping conditions");
    add_mapping_flags(val, valFlags);

    std::string curInput, curOutput, curFormat;
    CurationOptions curOpt;
    auto* cur = app.add_subcommand("curate", "curate a mesh stored in the native JSON format");
    cur->add_option("-i,--input", curInput, "input mesh (native JSON)")->required();
    cur->add_option("-o,--output", curOutput, "output mesh path")->required();
    cur->add_option("--format", curFormat, "obj|off|json (default from extension)");
    cur->add_option("--max-iterations", curOpt.maxIterations, "iteration cap");
    cur->add_option("--grad-tol", curOpt.gradTolerance, "gradient max-norm tolerance");
    cur->add_option("--lambda", curOpt.lambda, "displacement weight");

    long long shellN = 0;
    std::string shellBlock, shellOut, shellGrid;
    int shellTop = 5;
    double shellMMin = 0.8, shellMMax = 1.6;
    bool shellSpheres = false;
    auto* shell = app.add_subcommand("shellgen", "search symmetric shell layouts for n blocks");
    shell->add_option("--n", shellN, "total number of building blocks")->required();
    shell->add_option("--block", shellBlock, "block model JSON path")->required();
    shell->add_option("-o,--output", shellOut, "output directory")->required();
    shell->add_option("--top", shellTop, "keep this many candidates");
    shell->add_option("--grid", shellGrid, "search grid AxR (default 64x32)");
    shell->add_option("--m-min", shellMMin, "radial range lower factor");
    shell->add_option("--m-max", shellMMax, "radial range upper factor");
    shell->add_flag("--spheres", shellSpheres, "also write expanded sphere sets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(genFlags, genCurate, genFold, copt, genOutput, genFormat);
        if (counts->parsed()) return cmd_counts(countFlags);
        if (val->parsed()) return cmd_validate(valFlags);
        if (cur->parsed()) return cmd_curate(curInput, curOutput, curFormat, curOpt);
        if (shell->parsed())
            return cmd_shellgen(shellN, shellBlock, shellOut, shellTop, shellGrid, shellMMin,
                                shellMMax, shellSpheres);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
