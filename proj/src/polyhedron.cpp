#include "arp/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arp {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::vector<int>> triangle_faces_by_min_edge(const std::vector<Vec3>& v) {
    // faces of tet/octa/icosa are exactly the vertex triples at minimal
    // pairwise distance
    double dmin = 1e300;
    int n = (int)v.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dmin = std::min(dmin, dist(v[i], v[j]));
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (std::abs(dist(v[i], v[j]) - dmin) < 1e-9 &&
                    std::abs(dist(v[j], v[k]) - dmin) < 1e-9 &&
                    std::abs(dist(v[i], v[k]) - dmin) < 1e-9)
                    faces.push_back({i, j, k});
            }
    return faces;
}

void orient_outward(const std::vector<Vec3>& v, std::vector<std::vector<int>>& faces) {
    for (auto& f : faces) {
        Vec3 c{0, 0, 0};
        for (int i : f) c += v[i];
        c = (1.0 / f.size()) * c;
        Vec3 n = (v[f[1]] - v[f[0]]).cross(v[f[2]] - v[f[0]]);
        if (n.dot(c) < 0) std::reverse(f.begin(), f.end());
    }
}

// order the corners of a (convex planar) face CCW about its centroid
void sort_face_ccw(const std::vector<Vec3>& v, std::vector<int>& f) {
    Vec3 c{0, 0, 0};
    for (int i : f) c += v[i];
    c = (1.0 / f.size()) * c;
    Vec3 n = c.normalized();
    Vec3 ref = (v[f[0]] - c).normalized();
    Vec3 ortho = n.cross(ref);
    std::sort(f.begin(), f.end(), [&](int a, int b) {
        Vec3 da = v[a] - c, db = v[b] - c;
        double aa = std::atan2(da.dot(ortho), da.dot(ref));
        double ab = std::atan2(db.dot(ortho), db.dot(ref));
        return aa < ab;
    });
}

}  // namespace

Vec3 BasePolyhedron::faceCentroid(int f) const {
    Vec3 c{0, 0, 0};
    for (int i : faces[f]) c += vertices[i];
    return (1.0 / faces[f].size()) * c;
}

BasePolyhedron BasePolyhedron::make(BaseKind kind) {
    BasePolyhedron p;
    p.kind = kind;
    std::vector<Vec3> v;
    std::vector<std::vector<int>> faces;
    switch (kind) {
        case BaseKind::Tetrahedron: {
            double s = 1.0 / std::sqrt(3.0);
            v = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
            faces = triangle_faces_by_min_edge(v);
            p.faceSides = 3; p.gfFold = 3; p.gvFold = 3;
            break;
        }
        case BaseKind::Octahedron: {
            v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
            faces = triangle_faces_by_min_edge(v);
            p.faceSides = 3; p.gfFold = 3; p.gvFold = 4;
            break;
        }
        case BaseKind::Icosahedron: {
            double phi = (1.0 + std::sqrt(5.0)) / 2.0;
            double n = std::sqrt(1.0 + phi * phi);
            for (double a : {1.0, -1.0})
                for (double b : {phi, -phi}) {
                    v.push_back({0, a / n, b / n});
                    v.push_back({a / n, b / n, 0});
                    v.push_back({b / n, 0, a / n});
                }
            faces = triangle_faces_by_min_edge(v);
            p.faceSides = 3; p.gfFold = 3; p.gvFold = 5;
            break;
        }
        case BaseKind::Cube: {
            double s = 1.0 / std::sqrt(3.0);
            for (double x : {s, -s})
                for (double y : {s, -s})
                    for (double z : {s, -s}) v.push_back({x, y, z});
            for (int axis = 0; axis < 3; ++axis)
                for (double sign : {1.0, -1.0}) {
                    std::vector<int> f;
                    for (int i = 0; i < 8; ++i) {
                        double c = axis == 0 ? v[i].x : (axis == 1 ? v[i].y : v[i].z);
                        if (c * sign > 0) f.push_back(i);
                    }
                    faces.push_back(f);
                }
            p.faceSides = 4; p.gfFold = 4; p.gvFold = 3;
            break;
        }
    }
    orient_outward(v, faces);

    // canonicalize: face 0 centroid to +Z, its corner 0 into XZ (x > 0)
    Vec3 c0{0, 0, 0};
    for (int i : faces[0]) c0 += v[i];
    c0 = (1.0 / faces[0].size()) * c0;
    Vec3 zc = c0.normalized();
    Vec3 axis = zc.cross(Vec3{0, 0, 1});
    Mat3 R1 = Mat3::identity();
    if (axis.norm() > 1e-12) {
        double ang = std::acos(std::clamp(zc.dot(Vec3{0, 0, 1}), -1.0, 1.0));
        R1 = Mat3::axis_angle(axis, ang);
    } else if (zc.z < 0) {
        R1 = Mat3::axis_angle(Vec3{1, 0, 0}, kPi);
    }
    for (auto& x : v) x = R1 * x;
    Vec3 corner = v[faces[0][0]];
    double ang2 = std::atan2(corner.y, corner.x);
    Mat3 R2 = Mat3::axis_angle(Vec3{0, 0, 1}, -ang2);
    for (auto& x : v) x = R2 * x;

    for (auto& f : faces) sort_face_ccw(v, f);
    // rotate face 0's corner list so corner 0 is the XZ-plane one
    {
        auto& f0 = faces[0];
        auto offAxis = [&](int i) { return std::abs(std::atan2(v[f0[i]].y, v[f0[i]].x)); };
        int best = 0;
        for (int t = 1; t < (int)f0.size(); ++t)
            if (offAxis(t) < offAxis(best)) best = t;
        std::rotate(f0.begin(), f0.begin() + best, f0.end());
    }

    p.vertices = v;
    p.faces = faces;
    p.faceCount = (int)faces.size();
    p.vertexCount = (int)v.size();
    p.edgeCount = p.faceCount * p.faceSides / 2;
    p.edgeLength = dist(v[faces[0][0]], v[faces[0][1]]);
    p.faceCenterDistance = p.faceCentroid(0).norm();
    return p;
}

std::vector<RigidTransform> rotation_group(const BasePolyhedron& base) {
    // closure of the face-0 and vertex-0 axis rotations
    Mat3 gf = Mat3::axis_angle(base.faceCentroid(0).normalized(), 2 * kPi / base.gfFold);
    Mat3 gv = Mat3::axis_angle(base.vertices[base.faces[0][0]].normalized(), 2 * kPi / base.gvFold);

    std::vector<Mat3> elems = {Mat3::identity()};
    auto contains = [&](const Mat3& m) {
        for (const auto& e : elems)
            if (e.frobenius_dist(m) < 1e-6) return true;
        return false;
    };
    std::size_t next = 0;
    while (next < elems.size()) {
        Mat3 cur = elems[next++];
        for (const Mat3* g : {&gf, &gv}) {
            Mat3 prod = (*g) * cur;
            if (!contains(prod)) elems.push_back(prod);
        }
    }
    int expected = 2 * base.edgeCount;
    if ((int)elems.size() != expected)
        throw std::logic_error("rotation group closure has unexpected size");

    std::vector<RigidTransform> out;
    out.reserve(elems.size());
    for (const auto& m : elems) out.push_back({m, Vec3{0, 0, 0}});
    return out;
}

std::vector<RigidTransform> cyclic_group(const Vec3& center, const Vec3& axis, int n) {
    if (n <= 0) throw std::invalid_argument("cyclic group order must be positive");
    std::vector<RigidTransform> out;
    out.reserve(n);
    for (int m = 0; m < n; ++m) {
        Mat3 R = Mat3::axis_angle(axis, 2 * kPi * m / n);
        out.push_back({R, center - R * center});
    }
    return out;
}

int find_group_element(const std::vector<RigidTransform>& group, const Mat3& R, double tol) {
    for (int i = 0; i < (int)group.size(); ++i)
        if (group[i].R.frobenius_dist(R) < tol) return i;
    return -1;
}

}  // namespace arp
