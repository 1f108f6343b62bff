#include "doctest.h"

#include "arp/mapping.hpp"
#include "arp/polyhedron.hpp"

using namespace arp;

namespace {

bool maps_vertex_set(const BasePolyhedron& p, const RigidTransform& t) {
    for (const auto& v : p.vertices) {
        Vec3 img = t.apply(v);
        double best = 1e300;
        for (const auto& u : p.vertices) best = std::min(best, dist(img, u));
        if (best > 1e-9) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("base polyhedron tables") {
    struct Row {
        BaseKind kind;
        int faces, verts, edges, gf, gv, sides;
    };
    const Row rows[] = {
        {BaseKind::Tetrahedron, 4, 4, 6, 3, 3, 3},
        {BaseKind::Octahedron, 8, 6, 12, 3, 4, 3},
        {BaseKind::Icosahedron, 20, 12, 30, 3, 5, 3},
        {BaseKind::Cube, 6, 8, 12, 4, 3, 4},
    };
    for (const Row& r : rows) {
        BasePolyhedron p = BasePolyhedron::make(r.kind);
        CHECK(p.faceCount == r.faces);
        CHECK(p.vertexCount == r.verts);
        CHECK(p.edgeCount == r.edges);
        CHECK(p.gfFold == r.gf);
        CHECK(p.gvFold == r.gv);
        CHECK(p.faceSides == r.sides);
        for (const auto& v : p.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-12);

        // canonical frame: face 0 centered on +Z, corner 0 in XZ, x > 0
        Vec3 c0 = p.faceCentroid(0);
        CHECK(std::abs(c0.x) < 1e-12);
        CHECK(std::abs(c0.y) < 1e-12);
        CHECK(c0.z > 0);
        Vec3 v0 = p.vertices[p.canonicalFace()[0]];
        CHECK(std::abs(v0.y) < 1e-12);
        CHECK(v0.x > 0);
    }
}

TEST_CASE("rotation group sizes and axioms") {
    struct Row {
        BaseKind kind;
        int order;
    };
    const Row rows[] = {
        {BaseKind::Tetrahedron, 12},
        {BaseKind::Octahedron, 24},
        {BaseKind::Icosahedron, 60},
        {BaseKind::Cube, 24},
    };
    for (const Row& r : rows) {
        BasePolyhedron p = BasePolyhedron::make(r.kind);
        auto group = rotation_group(p);
        CHECK((int)group.size() == r.order);
        CHECK((int)group.size() == 2 * p.edgeCount);

        // identity first
        CHECK(group[0].R.frobenius_dist(Mat3::identity()) < 1e-12);

        for (const auto& g : group) {
            CHECK(std::abs(g.R.det() - 1.0) < 1e-9);
            CHECK(maps_vertex_set(p, g));
        }

        // closure and inverses (full check for the tetrahedron, spot
        // checks for the larger groups)
        int stride = r.kind == BaseKind::Tetrahedron ? 1 : 7;
        for (std::size_t i = 0; i < group.size(); i += stride) {
            CHECK(find_group_element(group, group[i].R.transposed(), 1e-7) >= 0);
            for (std::size_t j = 0; j < group.size(); j += stride) {
                Mat3 prod = group[i].R * group[j].R;
                CHECK(find_group_element(group, prod, 1e-7) >= 0);
            }
        }
    }
}

TEST_CASE("cyclic group") {
    CHECK_THROWS_AS(cyclic_group({0, 0, 0}, {0, 0, 1}, 0), std::invalid_argument);

    auto c3 = cyclic_group({0, 0, 0}, {0, 0, 1}, 3);
    REQUIRE(c3.size() == 3);
    CHECK(c3[0].R.frobenius_dist(Mat3::identity()) < 1e-12);
    Vec3 img = c3[1].apply({1, 0, 0});
    CHECK(dist(img, {-0.5, std::sqrt(3.0) / 2.0, 0}) < 1e-12);
    Mat3 all = c3[1].R * c3[1].R * c3[1].R;
    CHECK(all.frobenius_dist(Mat3::identity()) < 1e-12);

    // off-origin center: the center is the fixed point
    Vec3 center{0.3, -0.2, 0.9};
    auto c5 = cyclic_group(center, {0, 0, 1}, 5);
    for (const auto& t : c5) CHECK(dist(t.apply(center), center) < 1e-12);
}

TEST_CASE("face_map places the lattice face onto the canonical face") {
    LatticeSpec tri{LatticeKind::Triangular};
    BasePolyhedron icosa = BasePolyhedron::make(BaseKind::Icosahedron);

    for (auto [h, k] : {std::pair<long long, long long>{1, 0}, {2, 0}, {2, 1}}) {
        MappingParams params{BaseKind::Icosahedron, LatticeKind::Triangular, h, k,
                             MapMode::Primal};
        Validation v = validate(params);
        REQUIRE(v.ok);
        ScaledTransform t = face_map(icosa, v.embedding, tri);

        double latticeSide = std::sqrt((double)(h * h + h * k + k * k));
        CHECK(t.scale == doctest::Approx(icosa.edgeLength / latticeSide).epsilon(1e-12));

        Vec3 mappedCenter = t.apply(tri.embed(v.embedding.center));
        CHECK(dist(mappedCenter, icosa.faceCentroid(0)) < 1e-12);

        // corners land on the canonical face corner set
        for (const auto& c : v.embedding.corners) {
            Vec3 img = t.apply(tri.embed(c));
            double best = 1e300;
            for (int vi : icosa.canonicalFace())
                best = std::min(best, dist(img, icosa.vertices[vi]));
            CHECK(best < 1e-12);
        }
    }
}
