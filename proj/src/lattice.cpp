#include "arp/lattice.hpp"

#include <stdexcept>

namespace arp {

namespace {

long long mod3(long long v) { return ((v % 3) + 3) % 3; }

// Rotation by 60 degrees CCW about the origin in the 60-degree frame:
// e1 -> e2, e2 -> e2 - e1.
RatVec2 rot60(const RatVec2& v) { return {-v.y, v.x + v.y}; }

// Rotation by 90 degrees CCW in the square frame.
RatVec2 rot90(const RatVec2& v) { return {-v.y, v.x}; }

bool twice_integer(const Rational& r) { return r.den() == 1 || r.den() == 2; }
bool thrice_integer(const Rational& r) { return r.den() == 1 || r.den() == 3; }

}  // namespace

RatVec2 rotate60_about(const RatVec2& center, const RatVec2& p, int steps60) {
    RatVec2 v = p - center;
    int s = ((steps60 % 6) + 6) % 6;
    for (int m = 0; m < s; ++m) v = rot60(v);
    return center + v;
}

RatVec2 rotate90_about(const RatVec2& center, const RatVec2& p, int steps90) {
    RatVec2 v = p - center;
    int s = ((steps90 % 4) + 4) % 4;
    for (int m = 0; m < s; ++m) v = rot90(v);
    return center + v;
}

bool is_structure_vertex(LatticeKind kind, const RatVec2& p) {
    if (!p.is_lattice_point()) return false;
    if (kind != LatticeKind::Hexagonal) return true;
    return mod3(p.x.num() - p.y.num()) != 2;
}

SymmetryPointClass classify_point(LatticeKind kind, const RatVec2& p) {
    const bool integral = p.is_lattice_point();
    const bool half = twice_integer(p.x) && twice_integer(p.y);

    switch (kind) {
        case LatticeKind::Triangular: {
            if (integral) return {SymPointKind::Vertex, 6};
            if (half) return {SymPointKind::EdgeCenter, 2};
            if (thrice_integer(p.x) && thrice_integer(p.y)) {
                long long x3 = p.x.num() * (3 / p.x.den());
                long long y3 = p.y.num() * (3 / p.y.den());
                long long rx = mod3(x3), ry = mod3(y3);
                // centroids of up-triangles are == (1,1), down-triangles == (2,2) mod 3
                if ((rx == 1 && ry == 1) || (rx == 2 && ry == 2))
                    return {SymPointKind::FaceCenter, 3};
            }
            return {SymPointKind::None, 1};
        }
        case LatticeKind::Square: {
            if (integral) return {SymPointKind::Vertex, 4};
            if (half) {
                bool hx = p.x.den() == 2, hy = p.y.den() == 2;
                if (hx && hy) return {SymPointKind::FaceCenter, 4};
                return {SymPointKind::EdgeCenter, 2};
            }
            return {SymPointKind::None, 1};
        }
        case LatticeKind::Hexagonal: {
            if (integral) {
                if (mod3(p.x.num() - p.y.num()) == 2) return {SymPointKind::FaceCenter, 6};
                return {SymPointKind::Vertex, 3};
            }
            if (half) {
                // Candidate edge midpoint: the doubled point X = 2p is an
                // integer point; the would-be edge endpoints a, b satisfy
                // a + b = X with b - a the unique unit step matching X's
                // parity. Edge center iff both endpoints are honeycomb
                // vertices (neither is a hexagon center).
                long long X = p.x.num() * (2 / p.x.den());
                long long Y = p.y.num() * (2 / p.y.den());
                long long ux, uy;
                bool ox = (X % 2 + 2) % 2 == 1, oy = (Y % 2 + 2) % 2 == 1;
                if (ox && !oy) { ux = 1; uy = 0; }
                else if (!ox && oy) { ux = 0; uy = 1; }
                else { ux = 1; uy = -1; }  // both odd
                RatVec2 a{(X - ux) / 2, (Y - uy) / 2};
                RatVec2 b{(X + ux) / 2, (Y + uy) / 2};
                if (is_structure_vertex(LatticeKind::Hexagonal, a) &&
                    is_structure_vertex(LatticeKind::Hexagonal, b))
                    return {SymPointKind::EdgeCenter, 2};
            }
            return {SymPointKind::None, 1};
        }
    }
    return {SymPointKind::None, 1};
}

std::pair<RatVec2, RatVec2> c3_partners(long long h, long long k, const RatVec2& p) {
    RatVec2 center{Rational(2 * h + k, 3), Rational(-h + k, 3)};
    RatVec2 q = rotate60_about(center, p, 4);  // 240 degrees
    RatVec2 r = rotate60_about(center, p, 2);  // 120 degrees
    return {q, r};
}

std::optional<SmallTriangleId> triangle_from_corners(const std::array<RatVec2, 3>& corners) {
    for (const auto& c : corners)
        if (!c.is_lattice_point()) return std::nullopt;
    for (int base = 0; base < 3; ++base) {
        long long i = corners[base].x.num(), j = corners[base].y.num();
        auto has = [&](long long x, long long y) {
            for (int t = 0; t < 3; ++t)
                if (t != base && corners[t].x.num() == x && corners[t].y.num() == y) return true;
            return false;
        };
        if (has(i + 1, j) && has(i, j + 1)) return SmallTriangleId{i, j, TriSign::Plus};
        if (has(i + 1, j - 1) && has(i + 1, j)) return SmallTriangleId{i, j, TriSign::Minus};
    }
    return std::nullopt;
}

std::array<SmallTriangleId, 3> small_triangle_orbit(const RatVec2& a, const RatVec2& b,
                                                    const RatVec2& c, long long i, long long j,
                                                    TriSign sign) {
    if (!a.is_lattice_point() || !b.is_lattice_point() || !c.is_lattice_point())
        throw std::invalid_argument("triangle corners must be lattice points");
    Rational third(1, 3);
    RatVec2 centroid{third * (a.x + b.x + c.x), third * (a.y + b.y + c.y)};
    if (rotate60_about(centroid, a, 2) != b || rotate60_about(centroid, b, 2) != c)
        throw std::invalid_argument(
            "corners must be an equilateral lattice triangle in 120-degree cycle order");

    SmallTriangleId t0{a.x.num() + i, a.y.num() + j, sign};
    auto rotated = [&](int steps) {
        auto cs = t0.corners();
        std::array<RatVec2, 3> img;
        for (int m = 0; m < 3; ++m) img[m] = rotate60_about(centroid, cs[m], steps);
        auto id = triangle_from_corners(img);
        if (!id)
            throw std::logic_error("rotated small triangle is not lattice-aligned");
        return *id;
    };
    return {t0, rotated(2), rotated(4)};
}

}  // namespace arp
