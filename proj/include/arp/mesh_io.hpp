#pragma once

#include <string>

#include "json.hpp"

#include "arp/curation.hpp"
#include "arp/tiling.hpp"

namespace arp {

std::string base_name(BaseKind b);
std::string lattice_name(LatticeKind l);
std::string mode_name(MapMode m);
BaseKind base_from_name(const std::string& s);
LatticeKind lattice_from_name(const std::string& s);

/// 17-significant-digit decimal, round-trips IEEE doubles exactly.
std::string format_double(double v);

/// Wavefront OBJ: "v x y z" and 1-based "f ..." records only.
std::string to_obj(const TiledMesh& mesh);

/// ASCII OFF with a counts header line "V F E".
std::string to_off(const TiledMesh& mesh);

/// Lossless native format: parameters, exact lattice seeds with their
/// current and initial 3D positions, per-vertex generator indices, and
/// topology. Reloading reproduces a bit-identical mesh.
nlohmann::ordered_json mesh_to_json(const TiledMesh& mesh);
TiledMesh mesh_from_json(const nlohmann::ordered_json& j);

TiledMesh load_mesh_json(const std::string& path);

/// Sidecar report: counts, optional per-face combinatorics, optional
/// curation report, symmetry residual.
nlohmann::ordered_json make_report(const TiledMesh& mesh, const CurationReport* curation);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace arp
