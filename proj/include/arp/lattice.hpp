#pragma once

#include <array>
#include <optional>
#include <utility>

#include "arp/geom.hpp"
#include "arp/rational.hpp"

namespace arp {

enum class LatticeKind { Triangular, Square, Hexagonal };

enum class SymPointKind { Vertex, EdgeCenter, FaceCenter, None };

struct SymmetryPointClass {
    SymPointKind kind = SymPointKind::None;
    int maxFold = 1;  // rotational order of the lattice about the point
};

/// The three regular 2D lattices in the (h,k) frame.
///
/// Axes convention: e1 along Cartesian +X, e2 at +60 degrees for
/// Triangular/Hexagonal and +90 degrees for Square; |e1| = |e2| = 1.
/// Triangular/Square: integer (h,k) are exactly the lattice vertices.
/// Hexagonal: the honeycomb lives on the integer points of the same
/// 60-degree frame; points with (x - y) = 2 (mod 3) are hexagon centers
/// and the other two residue classes are the honeycomb vertices.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::Triangular;

    Vec3 e1() const { return {1, 0, 0}; }
    Vec3 e2() const {
        if (kind == LatticeKind::Square) return {0, 1, 0};
        return {0.5, std::sqrt(3.0) / 2.0, 0};
    }
    /// Cartesian embedding of an (h,k) point, z = 0.
    Vec3 embed(const RatVec2& p) const {
        double x = p.x.to_double(), y = p.y.to_double();
        if (kind == LatticeKind::Square) return {x, y, 0};
        return {x + 0.5 * y, y * (std::sqrt(3.0) / 2.0), 0};
    }
    /// Squared Euclidean length of an (h,k) vector, exact.
    Rational metric2(const RatVec2& v) const {
        if (kind == LatticeKind::Square) return v.x * v.x + v.y * v.y;
        return v.x * v.x + v.x * v.y + v.y * v.y;
    }
};

/// Classify a rational point of the (h,k) plane as a lattice vertex,
/// edge center, face center or nothing, together with the lattice's
/// rotational order about it. Total function, exact arithmetic.
SymmetryPointClass classify_point(LatticeKind kind, const RatVec2& p);

/// True when an integer point is a vertex of the given lattice
/// structure (for Hexagonal this excludes the hexagon-center class).
bool is_structure_vertex(LatticeKind kind, const RatVec2& p);

/// Exact rotation by m * (2*pi/n) CCW about a rational center, where n
/// is the lattice's maximal fold usable here (6 for the 60-degree frame
/// lattices, 4 for square). steps60 counts 60-degree steps for
/// tri/hex; steps90 counts 90-degree steps for square.
RatVec2 rotate60_about(const RatVec2& center, const RatVec2& p, int steps60);
RatVec2 rotate90_about(const RatVec2& center, const RatVec2& p, int steps90);

/// C3 orbit of p about the center of the face with corners
/// (0,0), (h,k), (h+k,-h): q is the 240-degree image, r the 120-degree
/// image. Computed by exact rotation.
std::pair<RatVec2, RatVec2> c3_partners(long long h, long long k, const RatVec2& p);

enum class TriSign { Plus, Minus };

/// One face of the triangular lattice. t_{ij+} has vertices
/// (i,j), (i+1,j), (i,j+1); t_{ij-} has (i,j), (i+1,j-1), (i+1,j).
/// Two ids coincide iff all three fields are equal.
struct SmallTriangleId {
    long long i = 0, j = 0;
    TriSign sign = TriSign::Plus;

    std::array<RatVec2, 3> corners() const {
        if (sign == TriSign::Plus)
            return {RatVec2{i, j}, RatVec2{i + 1, j}, RatVec2{i, j + 1}};
        return {RatVec2{i, j}, RatVec2{i + 1, j - 1}, RatVec2{i + 1, j}};
    }
    RatVec2 centroid() const {
        if (sign == TriSign::Plus)
            return {Rational(3 * i + 1, 3), Rational(3 * j + 1, 3)};
        return {Rational(3 * i + 2, 3), Rational(3 * j - 1, 3)};
    }
    friend bool operator==(const SmallTriangleId& a, const SmallTriangleId& b) {
        return a.i == b.i && a.j == b.j && a.sign == b.sign;
    }
};

/// Recover a small-triangle id from its (unordered) integer corners.
std::optional<SmallTriangleId> triangle_from_corners(const std::array<RatVec2, 3>& corners);

/// The three small triangles t_{a+(i,j),s} and its images under the C3
/// rotation about the centroid of the equilateral corner triple
/// (a, b, c). Requires b and c to be the 120- and 240-degree images of
/// a about the centroid (this subsumes equilaterality); throws
/// std::invalid_argument otherwise.
std::array<SmallTriangleId, 3> small_triangle_orbit(const RatVec2& a, const RatVec2& b,
                                                    const RatVec2& c, long long i, long long j,
                                                    TriSign sign);

}  // namespace arp
