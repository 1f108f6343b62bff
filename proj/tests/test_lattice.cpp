#include <random>

#include "doctest.h"

#include "arp/lattice.hpp"

using namespace arp;

namespace {

// brute-force oracle: rotating every structure vertex of a patch about
// p by 2*pi/fold must land on structure vertices again
bool patch_rotation_ok(LatticeKind kind, const RatVec2& p, int fold) {
    int steps;
    if (kind == LatticeKind::Square) {
        if (4 % fold != 0) return false;
        steps = 4 / fold;
    } else {
        if (6 % fold != 0) return false;
        steps = 6 / fold;
    }
    long long cx = p.x.floor(), cy = p.y.floor();
    for (long long i = cx - 4; i <= cx + 4; ++i)
        for (long long j = cy - 4; j <= cy + 4; ++j) {
            RatVec2 v{i, j};
            if (!is_structure_vertex(kind, v)) continue;
            RatVec2 img = kind == LatticeKind::Square ? rotate90_about(p, v, steps)
                                                      : rotate60_about(p, v, steps);
            if (!img.is_lattice_point()) return false;
            if (!is_structure_vertex(kind, img)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("classify_point on the stated examples") {
    CHECK(classify_point(LatticeKind::Triangular, {0, 0}).kind == SymPointKind::Vertex);
    CHECK(classify_point(LatticeKind::Triangular, {0, 0}).maxFold == 6);

    SymmetryPointClass e = classify_point(LatticeKind::Triangular,
                                          {Rational(1, 2), Rational(1, 2)});
    CHECK(e.kind == SymPointKind::EdgeCenter);
    CHECK(e.maxFold == 2);

    SymmetryPointClass hx = classify_point(LatticeKind::Hexagonal, {2, 0});
    CHECK(hx.kind == SymPointKind::FaceCenter);
    CHECK(hx.maxFold == 6);

    SymmetryPointClass sq = classify_point(LatticeKind::Square, {Rational(1, 3), Rational(0)});
    CHECK(sq.kind == SymPointKind::None);
    CHECK(sq.maxFold == 1);
    CHECK_FALSE(patch_rotation_ok(LatticeKind::Square, {Rational(1, 3), Rational(0)}, 2));
}

TEST_CASE("classified folds agree with the patch rotation oracle") {
    std::vector<Rational> vals;
    for (long long n = -4; n <= 4; ++n)
        for (long long d : {1, 2, 3}) vals.push_back(Rational(n, d));

    for (LatticeKind kind :
         {LatticeKind::Triangular, LatticeKind::Square, LatticeKind::Hexagonal}) {
        int nontrivial = 0;
        for (const auto& x : vals)
            for (const auto& y : vals) {
                SymmetryPointClass c = classify_point(kind, {x, y});
                if (c.maxFold >= 2) {
                    ++nontrivial;
                    CAPTURE((int)kind);
                    CAPTURE(x.str());
                    CAPTURE(y.str());
                    CHECK(patch_rotation_ok(kind, {x, y}, c.maxFold));
                } else {
                    CHECK_FALSE(patch_rotation_ok(kind, {x, y}, 2));
                }
            }
        CHECK(nontrivial > 0);
    }
}

TEST_CASE("hexagonal edge centers are honeycomb edge midpoints") {
    // midpoint of the edge (0,0)-(1,0)
    CHECK(classify_point(LatticeKind::Hexagonal, {Rational(1, 2), Rational(0)}).kind ==
          SymPointKind::EdgeCenter);
    // midpoint between a vertex and a hexagon center is not 2-fold
    CHECK(classify_point(LatticeKind::Hexagonal, {Rational(3, 2), Rational(0)}).kind ==
          SymPointKind::None);
    // honeycomb vertices carry 3-fold symmetry only
    CHECK(classify_point(LatticeKind::Hexagonal, {0, 0}).maxFold == 3);
    CHECK(classify_point(LatticeKind::Hexagonal, {1, 0}).maxFold == 3);
}

TEST_CASE("triangular and hexagonal lattices are combinatorial duals") {
    // hexagonal frame point p corresponds to the triangular-frame point
    // phi(p) = (p - a0) mapped through the hexagon-center sublattice basis
    auto phi = [](const RatVec2& p) {
        Rational a = p.x + Rational(1), b = p.y;  // p - (-1, 0)
        return RatVec2{(Rational(2) * a + b) * Rational(1, 3),
                       (b - a) * Rational(1, 3)};
    };
    for (long long i = -4; i <= 4; ++i)
        for (long long j = -4; j <= 4; ++j) {
            RatVec2 p{i, j};
            SymPointKind hexKind = classify_point(LatticeKind::Hexagonal, p).kind;
            SymPointKind triKind = classify_point(LatticeKind::Triangular, phi(p)).kind;
            if (hexKind == SymPointKind::FaceCenter) CHECK(triKind == SymPointKind::Vertex);
            if (hexKind == SymPointKind::Vertex) CHECK(triKind == SymPointKind::FaceCenter);
        }
}

TEST_CASE("c3_partners fixed examples") {
    auto [q, r] = c3_partners(1, 0, {0, 0});
    CHECK(q == RatVec2{1, 0});
    CHECK(r == RatVec2{1, -1});

    // the face center itself is the rotation fixed point when h == k
    auto [q2, r2] = c3_partners(2, 2, {2, 0});
    CHECK(q2 == RatVec2{2, 0});
    CHECK(r2 == RatVec2{2, 0});
}

TEST_CASE("c3_partners against the floating rotation oracle") {
    LatticeSpec tri{LatticeKind::Triangular};
    long long h = 2, k = 1;
    RatVec2 d{Rational(2 * h + k, 3), Rational(-h + k, 3)};
    Vec3 dc = tri.embed(d);
    auto rotated = [&](const RatVec2& p, double ang) {
        Vec3 v = tri.embed(p) - dc;
        return Vec3{v.x * std::cos(ang) - v.y * std::sin(ang),
                    v.x * std::sin(ang) + v.y * std::cos(ang), 0} +
               dc;
    };
    RatVec2 p{1, 0};
    auto [q, r] = c3_partners(h, k, p);
    double c240 = 2 * 3.14159265358979323846 * 2 / 3;
    double c120 = 2 * 3.14159265358979323846 / 3;
    CHECK(dist(tri.embed(q), rotated(p, c240)) < 1e-12);
    CHECK(dist(tri.embed(r), rotated(p, c120)) < 1e-12);
}

TEST_CASE("c3_partners cycles") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> di(-5, 5);
    for (int t = 0; t < 200; ++t) {
        long long h = di(rng), k = di(rng);
        if (h == 0 && k == 0) continue;
        RatVec2 p{di(rng), di(rng)};
        auto [q, r] = c3_partners(h, k, p);
        auto [qq, rr] = c3_partners(h, k, q);
        CHECK(((qq == r && rr == p) || (qq == p && rr == r)));
        // three applications return to the start
        auto [qqq, unused] = c3_partners(h, k, qq);
        (void)unused;
        CHECK(c3_partners(h, k, qqq).first == q);
    }
}

TEST_CASE("small triangle ids") {
    SmallTriangleId plus{0, 0, TriSign::Plus};
    auto cp = plus.corners();
    CHECK(cp[1] == RatVec2{1, 0});
    CHECK(cp[2] == RatVec2{0, 1});
    SmallTriangleId minus{0, 0, TriSign::Minus};
    auto cm = minus.corners();
    CHECK(cm[1] == RatVec2{1, -1});
    CHECK(cm[2] == RatVec2{1, 0});
    CHECK(plus == plus);
    CHECK_FALSE(plus == minus);

    auto rt = triangle_from_corners({RatVec2{3, -2}, RatVec2{2, -1}, RatVec2{2, -2}});
    REQUIRE(rt.has_value());
    CHECK(*rt == SmallTriangleId{2, -2, TriSign::Plus});
    auto rm = triangle_from_corners({RatVec2{3, -3}, RatVec2{2, -2}, RatVec2{3, -2}});
    REQUIRE(rm.has_value());
    CHECK(*rm == SmallTriangleId{2, -2, TriSign::Minus});
    CHECK_FALSE(triangle_from_corners({RatVec2{0, 0}, RatVec2{1, 0}, RatVec2{2, 0}}).has_value());
}

TEST_CASE("small_triangle_orbit rejects bad corner triples") {
    CHECK_THROWS_AS(small_triangle_orbit({0, 0}, {1, 0}, {2, 0}, 0, 0, TriSign::Plus),
                    std::invalid_argument);
    // equilateral but not in 120-degree cycle order
    CHECK_THROWS_AS(small_triangle_orbit({0, 0}, {1, 0}, {1, -1}, 0, 0, TriSign::Plus),
                    std::invalid_argument);
}

TEST_CASE("small_triangle_orbit centroids form a C3 orbit") {
    // corners of the (h,k) = (2,1) face in rotation-cycle order
    RatVec2 a{0, 0}, b{3, -2}, c{2, 1};
    auto orbit = small_triangle_orbit(a, b, c, 1, 0, TriSign::Plus);
    RatVec2 center{Rational(5, 3), Rational(-1, 3)};
    RatVec2 c0 = orbit[0].centroid();
    CHECK(rotate60_about(center, c0, 2) == orbit[1].centroid());
    CHECK(rotate60_about(center, c0, 4) == orbit[2].centroid());

    // distinct ids whenever the rotation is not a tile symmetry
    CHECK_FALSE(orbit[0] == orbit[1]);
    CHECK_FALSE(orbit[1] == orbit[2]);
}

TEST_CASE("small_triangle_orbit matches the index formulas") {
    // plus tiles follow t_{b-i-j-1, b+i}; minus tiles shift the second
    // index by one on the rotated corners
    std::mt19937 rng(11);
    std::uniform_int_distribution<long long> di(-4, 4);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        long long h = di(rng), k = di(rng);
        if (h == 0 && k == 0) continue;
        RatVec2 a{di(rng), di(rng)};
        RatVec2 b = a + RatVec2{h, k};
        RatVec2 c = a + RatVec2{h + k, -h};
        Rational third(1, 3);
        RatVec2 centroid{third * (a.x + b.x + c.x), third * (a.y + b.y + c.y)};
        if (rotate60_about(centroid, a, 2) != b) std::swap(b, c);
        REQUIRE(rotate60_about(centroid, a, 2) == b);

        long long i = di(rng), j = di(rng);
        for (TriSign sign : {TriSign::Plus, TriSign::Minus}) {
            auto orbit = small_triangle_orbit(a, b, c, i, j, sign);
            long long shift = sign == TriSign::Plus ? 0 : 1;
            CHECK(orbit[1] ==
                  SmallTriangleId{b.x.num() - i - j - 1, b.y.num() + i + shift, sign});
            CHECK(orbit[2] ==
                  SmallTriangleId{c.x.num() + j - shift, c.y.num() - i - j - 1 + shift, sign});
            ++checked;
        }
    }
    CHECK(checked > 500);
}
