#pragma once

#include <vector>

#include "arp/geom.hpp"

namespace arp {

enum class BaseKind { Tetrahedron, Octahedron, Icosahedron, Cube };

/// A regular base polyhedron in canonical orientation: centroid at the
/// origin, circumradius 1, the centroid of face 0 on +Z, and corner 0
/// of face 0 in the XZ half-plane with x > 0. Canonicalization makes
/// every downstream output deterministic.
struct BasePolyhedron {
    BaseKind kind;
    int faceSides;    // 3 or 4
    int gfFold;       // rotational order about face axes
    int gvFold;       // rotational order about vertex axes
    int faceCount, vertexCount, edgeCount;

    std::vector<Vec3> vertices;             // |V|, unit norm
    std::vector<std::vector<int>> faces;    // CCW from outside
    double faceCenterDistance;              // centroid-to-face-center
    double edgeLength;

    const std::vector<int>& canonicalFace() const { return faces[0]; }
    Vec3 faceCentroid(int f) const;

    static BasePolyhedron make(BaseKind kind);
};

/// All proper rotations of the base polyhedron, identity first, in a
/// deterministic closure order. Sizes: tetra 12, cube/octa 24, icosa 60.
std::vector<RigidTransform> rotation_group(const BasePolyhedron& base);

/// n rotations by 2*pi*m/n about the axis through `center` with
/// direction `axis`, m = 0..n-1. Throws std::invalid_argument for n <= 0.
std::vector<RigidTransform> cyclic_group(const Vec3& center, const Vec3& axis, int n);

/// Index of the group element matching R within tol; -1 if none.
int find_group_element(const std::vector<RigidTransform>& group, const Mat3& R, double tol = 1e-9);

}  // namespace arp
