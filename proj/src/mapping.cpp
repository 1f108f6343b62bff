#include "arp/mapping.hpp"

#include <cmath>
#include <stdexcept>

namespace arp {

namespace {

bool triangular_family(BaseKind b) {
    return b == BaseKind::Tetrahedron || b == BaseKind::Octahedron || b == BaseKind::Icosahedron;
}

bool compatible_case(BaseKind base, LatticeKind lattice, MapMode mode) {
    if (triangular_family(base) && lattice == LatticeKind::Triangular && mode == MapMode::Primal)
        return true;
    if (triangular_family(base) && lattice == LatticeKind::Hexagonal && mode == MapMode::Dual)
        return true;
    if (base == BaseKind::Cube && lattice == LatticeKind::Square) return true;
    return false;
}

std::vector<RatVec2> canonical_corners(const MappingParams& p) {
    long long h = p.h, k = p.k;
    if (p.lattice == LatticeKind::Triangular) {
        return {RatVec2{0, 0}, RatVec2{h, k}, RatVec2{h + k, -h}};
    }
    if (p.lattice == LatticeKind::Hexagonal) {
        // (h,k) measured in the hexagon-center sublattice frame
        // f1 = (2,-1), f2 = (1,1), anchored at the face center nearest
        // the origin (lexicographically smallest of the three, (-1,0)).
        RatVec2 a0{-1, 0};
        return {a0, a0 + RatVec2{2 * h + k, -h + k}, a0 + RatVec2{h + 2 * k, -2 * h - k}};
    }
    // square lattice
    RatVec2 a0 = p.mode == MapMode::Dual ? RatVec2{Rational(1, 2), Rational(1, 2)} : RatVec2{0, 0};
    return {a0, a0 + RatVec2{h, k}, a0 + RatVec2{h - k, h + k}, a0 + RatVec2{-k, h}};
}

}  // namespace

std::string reject_reason_text(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "ok";
        case RejectReason::InvalidHK: return "h and k must be non-negative integers, not both zero";
        case RejectReason::IncompatiblePair: return "incompatible base/lattice pair";
        case RejectReason::CornerOffSymmetryPoint:
            return "face corner does not lie on the required lattice symmetry point";
        case RejectReason::CenterLowSymmetry:
            return "face center misses a lattice point of the required rotational order";
        case RejectReason::EdgeMidpointNotTwoFold:
            return "face edge midpoint is not a 2-fold symmetry point of the lattice";
        case RejectReason::IrregularFace: return "corners do not form a regular face";
    }
    return "unknown";
}

Validation validate_embedding(BaseKind base, LatticeKind lattice, MapMode mode,
                              const std::vector<RatVec2>& corners) {
    BasePolyhedron poly = BasePolyhedron::make(base);
    if (!compatible_case(base, lattice, mode))
        return Validation::failure(RejectReason::IncompatiblePair, reject_reason_text(RejectReason::IncompatiblePair));
    if ((int)corners.size() != poly.faceSides)
        return Validation::failure(RejectReason::IrregularFace, "corner count does not match the base face");

    const SymPointKind want =
        mode == MapMode::Primal ? SymPointKind::Vertex : SymPointKind::FaceCenter;
    for (const auto& c : corners) {
        if (classify_point(lattice, c).kind != want)
            return Validation::failure(RejectReason::CornerOffSymmetryPoint,
                                       reject_reason_text(RejectReason::CornerOffSymmetryPoint));
    }

    int n = poly.faceSides;
    Rational invN(1, n);
    RatVec2 center{0, 0};
    for (const auto& c : corners) center = center + c;
    center = {invN * center.x, invN * center.y};

    if (corners[1] == corners[0])
        return Validation::failure(RejectReason::IrregularFace, "degenerate corners");

    // regular face <=> successive corners are successive rotations by
    // 2*pi/n about the centroid (either orientation)
    auto rot_step = [&](const RatVec2& q, int dir) {
        if (lattice == LatticeKind::Square) return rotate90_about(center, q, dir);
        return rotate60_about(center, q, 2 * dir);  // 120 degrees
    };
    bool ccw = true, cw = true;
    for (int i = 0; i < n; ++i) {
        const RatVec2& cur = corners[i];
        const RatVec2& nxt = corners[(i + 1) % n];
        if (rot_step(cur, +1) != nxt) ccw = false;
        if (rot_step(cur, -1) != nxt) cw = false;
    }
    if (!ccw && !cw)
        return Validation::failure(RejectReason::IrregularFace, reject_reason_text(RejectReason::IrregularFace));

    // gf condition: the center must sit on a point whose rotational
    // order is a multiple of the face fold
    SymmetryPointClass cc = classify_point(lattice, center);
    if (cc.maxFold % poly.gfFold != 0)
        return Validation::failure(RejectReason::CenterLowSymmetry,
                                   reject_reason_text(RejectReason::CenterLowSymmetry));

    // ge condition: edge midpoints must be 2-fold points
    Rational half(1, 2);
    for (int i = 0; i < n; ++i) {
        RatVec2 m = corners[i] + corners[(i + 1) % n];
        m = {half * m.x, half * m.y};
        if (classify_point(lattice, m).maxFold % 2 != 0)
            return Validation::failure(RejectReason::EdgeMidpointNotTwoFold,
                                       reject_reason_text(RejectReason::EdgeMidpointNotTwoFold));
    }

    FaceEmbedding emb;
    emb.corners = corners;
    emb.center = center;
    LatticeSpec spec{lattice};
    // T in lattice-edge units: squared corner-to-corner distance over
    // the lattice unit; for the hexagonal dual frame one center-lattice
    // step spans 3 honeycomb units
    Rational side2 = spec.metric2(corners[1] - corners[0]);
    emb.tNumber = lattice == LatticeKind::Hexagonal ? (side2 / Rational(3)).num() : side2.num();
    emb.primalEquivalent = (base == BaseKind::Tetrahedron && mode == MapMode::Dual);
    return Validation::success(std::move(emb));
}

Validation validate(const MappingParams& params) {
    if (params.h < 0 || params.k < 0 || (params.h == 0 && params.k == 0))
        return Validation::failure(RejectReason::InvalidHK, reject_reason_text(RejectReason::InvalidHK));
    if (!compatible_case(params.base, params.lattice, params.mode))
        return Validation::failure(RejectReason::IncompatiblePair,
                                   reject_reason_text(RejectReason::IncompatiblePair));
    return validate_embedding(params.base, params.lattice, params.mode,
                              canonical_corners(params));
}

FaceCounts face_counts(const MappingParams& params) {
    Validation v = validate(params);
    if (!v.ok) throw std::invalid_argument("face_counts: " + v.message);
    BasePolyhedron poly = BasePolyhedron::make(params.base);

    long long T = v.embedding.tNumber;
    FaceCounts c;
    c.T = T;
    long long tiles = (long long)poly.faceCount * T;
    long long edges = tiles * poly.faceSides / 2;
    long long vertsTotal = edges - tiles + 2;  // Euler
    c.seedSize = (T + poly.gfFold - 1) / poly.gfFold;
    c.edges = edges;
    if (params.mode == MapMode::Primal) {
        c.tiles = tiles;
        c.verticesTotal = vertsTotal;
        c.verticesGlobal = poly.vertexCount;
        c.verticesLocal = vertsTotal - poly.vertexCount;
    } else {
        // combinatorial dual: faces and vertices swap
        c.tiles = vertsTotal;
        c.verticesTotal = tiles;
        c.verticesGlobal = 0;
        c.verticesLocal = tiles;
    }
    return c;
}

PerFaceCounts per_face_counts(const MappingParams& params) {
    if (params.lattice != LatticeKind::Triangular || params.mode != MapMode::Primal)
        throw std::invalid_argument("per_face_counts applies to triangular primal mappings");
    Validation v = validate(params);
    if (!v.ok) throw std::invalid_argument("per_face_counts: " + v.message);
    long long T = v.embedding.tNumber;
    PerFaceCounts c;
    c.interiorVertices = (double)(T - 1) / 2.0;
    c.maxEdgeLinesCrossed = 2 * (params.h + params.k) - 3;
    c.maxTrianglesCutPerEdge = 2 * (params.h + params.k - 1);
    c.areaUnits = T;
    return c;
}

CurationCase curation_case(const MappingParams& params) {
    Validation v = validate(params);
    if (!v.ok) throw std::invalid_argument("curation_case: " + v.message);
    if (params.h == 0 || params.k == 0) return CurationCase::NoWarp;
    if (params.h == params.k) return CurationCase::Bisected;
    return CurationCase::General;
}

ScaledTransform face_map(const BasePolyhedron& base, const FaceEmbedding& emb,
                         const LatticeSpec& lattice) {
    Vec3 centerCart = lattice.embed(emb.center);
    Vec3 corner0 = lattice.embed(emb.corners[0]);
    Vec3 corner1 = lattice.embed(emb.corners[1]);

    double side = dist(corner0, corner1);
    double scale = base.edgeLength / side;

    Vec3 v0 = base.vertices[base.canonicalFace()[0]];
    Vec3 c0 = base.faceCentroid(0);
    Vec3 target = v0 - c0;  // lies in the face plane, orthogonal to +Z
    Vec3 source = corner0 - centerCart;
    double angle = std::atan2(target.y, target.x) - std::atan2(source.y, source.x);

    ScaledTransform t;
    t.R = Mat3::axis_angle(Vec3{0, 0, 1}, angle);
    t.scale = scale;
    t.t = Vec3{0, 0, base.faceCenterDistance} - scale * (t.R * centerCart);
    return t;
}

}  // namespace arp
