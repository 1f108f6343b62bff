#include <random>

#include "doctest.h"

#include "arp/mapping.hpp"

using namespace arp;

TEST_CASE("validate accepts exactly the compatible cases") {
    // icosa/tri primal, D = (1,0) for h = k = 1
    Validation v = validate({BaseKind::Icosahedron, LatticeKind::Triangular, 1, 1,
                             MapMode::Primal});
    REQUIRE(v.ok);
    CHECK(v.embedding.center == RatVec2{1, 0});
    CHECK(classify_point(LatticeKind::Triangular, v.embedding.center).kind ==
          SymPointKind::Vertex);
    CHECK(v.embedding.tNumber == 3);

    // icosa on the square lattice has no compatible mapping
    Validation bad = validate({BaseKind::Icosahedron, LatticeKind::Square, 1, 0,
                               MapMode::Primal});
    CHECK_FALSE(bad.ok);
    CHECK(bad.reason == RejectReason::IncompatiblePair);

    // cube/square with the stated corner formulas
    Validation cube = validate({BaseKind::Cube, LatticeKind::Square, 2, 1, MapMode::Primal});
    REQUIRE(cube.ok);
    REQUIRE(cube.embedding.corners.size() == 4);
    CHECK(cube.embedding.corners[0] == RatVec2{0, 0});
    CHECK(cube.embedding.corners[1] == RatVec2{2, 1});
    CHECK(cube.embedding.corners[2] == RatVec2{1, 3});
    CHECK(cube.embedding.corners[3] == RatVec2{-1, 2});
    CHECK(cube.embedding.tNumber == 5);

    CHECK_FALSE(validate({BaseKind::Icosahedron, LatticeKind::Triangular, 0, 0,
                          MapMode::Primal}).ok);
    CHECK_FALSE(validate({BaseKind::Icosahedron, LatticeKind::Triangular, -1, 2,
                          MapMode::Primal}).ok);
}

TEST_CASE("validate compatible-pair table") {
    for (BaseKind base : {BaseKind::Tetrahedron, BaseKind::Octahedron, BaseKind::Icosahedron,
                          BaseKind::Cube}) {
        for (LatticeKind lattice :
             {LatticeKind::Triangular, LatticeKind::Square, LatticeKind::Hexagonal}) {
            for (MapMode mode : {MapMode::Primal, MapMode::Dual}) {
                bool triFamily = base != BaseKind::Cube;
                bool expectOk =
                    (triFamily && lattice == LatticeKind::Triangular && mode == MapMode::Primal) ||
                    (triFamily && lattice == LatticeKind::Hexagonal && mode == MapMode::Dual) ||
                    (base == BaseKind::Cube && lattice == LatticeKind::Square);
                Validation v = validate({base, lattice, 2, 1, mode});
                CAPTURE((int)base);
                CAPTURE((int)lattice);
                CAPTURE((int)mode);
                CHECK(v.ok == expectOk);
            }
        }
    }
}

TEST_CASE("dual corners sit on lattice face centers") {
    for (auto [h, k] : {std::pair<long long, long long>{1, 0}, {1, 1}, {2, 1}, {3, 1}}) {
        Validation v = validate({BaseKind::Icosahedron, LatticeKind::Hexagonal, h, k,
                                 MapMode::Dual});
        REQUIRE(v.ok);
        for (const auto& c : v.embedding.corners)
            CHECK(classify_point(LatticeKind::Hexagonal, c).kind == SymPointKind::FaceCenter);
        CHECK(v.embedding.tNumber == h * h + h * k + k * k);
    }
    Validation sq = validate({BaseKind::Cube, LatticeKind::Square, 2, 1, MapMode::Dual});
    REQUIRE(sq.ok);
    for (const auto& c : sq.embedding.corners)
        CHECK(classify_point(LatticeKind::Square, c).kind == SymPointKind::FaceCenter);

    // the tetra/hex dual is flagged primal-equivalent
    Validation tet = validate({BaseKind::Tetrahedron, LatticeKind::Hexagonal, 1, 0,
                               MapMode::Dual});
    REQUIRE(tet.ok);
    CHECK(tet.embedding.primalEquivalent);
}

TEST_CASE("validate_embedding rejects perturbed corners") {
    Validation good = validate({BaseKind::Icosahedron, LatticeKind::Triangular, 2, 1,
                                MapMode::Primal});
    REQUIRE(good.ok);

    std::mt19937 rng(42);
    std::uniform_int_distribution<long long> num(1, 4);
    std::uniform_int_distribution<long long> den(5, 12);
    std::uniform_int_distribution<int> which(0, 2);
    for (int t = 0; t < 50; ++t) {
        auto corners = good.embedding.corners;
        RatVec2& c = corners[which(rng)];
        c.x += Rational(num(rng), den(rng));
        if (t % 2) c.y += Rational(num(rng), den(rng));
        Validation v = validate_embedding(BaseKind::Icosahedron, LatticeKind::Triangular,
                                          MapMode::Primal, corners);
        CHECK_FALSE(v.ok);
    }

    // moving a corner to a different lattice vertex breaks regularity
    auto corners = good.embedding.corners;
    corners[1] = corners[1] + RatVec2{1, 0};
    Validation v = validate_embedding(BaseKind::Icosahedron, LatticeKind::Triangular,
                                      MapMode::Primal, corners);
    CHECK_FALSE(v.ok);
    CHECK(v.reason == RejectReason::IrregularFace);
}

TEST_CASE("face_counts closed forms") {
    FaceCounts one = face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, 1, 0,
                                  MapMode::Primal});
    CHECK(one.T == 1);
    CHECK(one.tiles == 20);
    CHECK(one.verticesTotal == 12);
    CHECK(one.edges == 30);
    CHECK(one.seedSize == 1);

    FaceCounts seven = face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, 2, 1,
                                    MapMode::Primal});
    CHECK(seven.T == 7);
    CHECK(seven.tiles == 140);
    CHECK(seven.verticesLocal == 60);
    CHECK(seven.verticesGlobal == 12);
    CHECK(seven.verticesTotal == 72);
    CHECK(seven.edges == 210);
    CHECK(seven.seedSize == 3);

    FaceCounts thirteen = face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, 3, 1,
                                       MapMode::Primal});
    CHECK(thirteen.T == 13);
    CHECK(thirteen.tiles == 260);

    // Euler characteristic across a T sweep
    for (long long h = 1; h <= 14; ++h)
        for (long long k = 0; k <= h; ++k) {
            long long T = h * h + h * k + k * k;
            if (T > 200) continue;
            FaceCounts c = face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, h, k,
                                        MapMode::Primal});
            CHECK(c.verticesTotal - c.edges + c.tiles == 2);
            CHECK(c.verticesTotal == 10 * T + 2);
        }

    // other bases by the analogous formulas
    FaceCounts tet = face_counts({BaseKind::Tetrahedron, LatticeKind::Triangular, 1, 0,
                                  MapMode::Primal});
    CHECK(tet.tiles == 4);
    CHECK(tet.verticesTotal == 4);
    FaceCounts cube = face_counts({BaseKind::Cube, LatticeKind::Square, 1, 0, MapMode::Primal});
    CHECK(cube.tiles == 6);
    CHECK(cube.verticesTotal == 8);
    CHECK(cube.edges == 12);
    FaceCounts cube21 = face_counts({BaseKind::Cube, LatticeKind::Square, 2, 1, MapMode::Primal});
    CHECK(cube21.T == 5);
    CHECK(cube21.tiles == 30);
    CHECK(cube21.verticesTotal - cube21.edges + cube21.tiles == 2);

    // dual counts swap faces and vertices
    FaceCounts ball = face_counts({BaseKind::Icosahedron, LatticeKind::Hexagonal, 1, 1,
                                   MapMode::Dual});
    CHECK(ball.T == 3);
    CHECK(ball.tiles == 32);
    CHECK(ball.verticesTotal == 60);
    CHECK(ball.edges == 90);
}

TEST_CASE("per_face_counts") {
    PerFaceCounts one = per_face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, 1, 0,
                                         MapMode::Primal});
    CHECK(one.interiorVertices == 0);
    CHECK(one.areaUnits == 1);

    PerFaceCounts seven = per_face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, 2, 1,
                                           MapMode::Primal});
    CHECK(seven.interiorVertices == 3);
    CHECK(seven.areaUnits == 7);
    CHECK(seven.maxTrianglesCutPerEdge == 4);
    CHECK(seven.maxEdgeLinesCrossed == 3);

    CHECK_THROWS_AS(per_face_counts({BaseKind::Cube, LatticeKind::Square, 1, 0, MapMode::Primal}),
                    std::invalid_argument);
}

TEST_CASE("per-face bounds against exact enumeration") {
    // count the lattice lines h=c, k=d, h+k=e crossing the open edge
    // (0,0)-(h,k), and the tiles its interior passes through
    for (auto [h, k] : {std::pair<long long, long long>{2, 1}, {1, 1}, {3, 1}, {2, 2}, {4, 1}}) {
        PerFaceCounts pf = per_face_counts({BaseKind::Icosahedron, LatticeKind::Triangular, h, k,
                                            MapMode::Primal});
        long long crossings = 0;
        // param t in (0,1): point (t h, t k); line families cross at
        // t = c/h, t = d/k, t = e/(h+k)
        auto countFamily = [](long long span) { return span > 0 ? span - 1 : 0; };
        long long raw = countFamily(h) + countFamily(k) + countFamily(h + k);
        // lattice points interior to the edge sit on one line of each
        // family simultaneously
        long long g = std::gcd(h, k);
        crossings = raw - 2 * (g - 1);
        CHECK(crossings <= pf.maxEdgeLinesCrossed);

        // tiles cut by the edge: crossings split the edge into segments,
        // interior lattice points merge three line crossings into one
        long long tilesCut = crossings - (g - 1) + 1;
        CHECK(tilesCut <= pf.maxTrianglesCutPerEdge);
    }
}

TEST_CASE("curation case classification") {
    CHECK(curation_case({BaseKind::Icosahedron, LatticeKind::Triangular, 3, 0,
                         MapMode::Primal}) == CurationCase::NoWarp);
    CHECK(curation_case({BaseKind::Icosahedron, LatticeKind::Triangular, 2, 2,
                         MapMode::Primal}) == CurationCase::Bisected);
    CHECK(curation_case({BaseKind::Icosahedron, LatticeKind::Triangular, 3, 1,
                         MapMode::Primal}) == CurationCase::General);
}

TEST_CASE("embedded faces are regular and centers carry the face fold") {
    for (auto [h, k] : {std::pair<long long, long long>{1, 0}, {2, 1}, {3, 1}, {2, 2}}) {
        Validation v = validate({BaseKind::Icosahedron, LatticeKind::Triangular, h, k,
                                 MapMode::Primal});
        REQUIRE(v.ok);
        LatticeSpec tri{LatticeKind::Triangular};
        Rational side = tri.metric2(v.embedding.corners[1] - v.embedding.corners[0]);
        for (int e = 0; e < 3; ++e) {
            Rational s = tri.metric2(v.embedding.corners[(e + 1) % 3] - v.embedding.corners[e]);
            CHECK(s == side);
        }
        SymmetryPointClass c = classify_point(LatticeKind::Triangular, v.embedding.center);
        CHECK(c.maxFold % 3 == 0);
        // ge condition at the edge midpoints
        Rational half(1, 2);
        for (int e = 0; e < 3; ++e) {
            RatVec2 m = v.embedding.corners[e] + v.embedding.corners[(e + 1) % 3];
            m = {half * m.x, half * m.y};
            CHECK(classify_point(LatticeKind::Triangular, m).maxFold % 2 == 0);
        }
    }
}
