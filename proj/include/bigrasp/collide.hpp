#pragma once

#include <array>

#include "bigrasp/mesh.hpp"
#include "bigrasp/types.hpp"

namespace bigrasp {

// Oriented box: columns of `rot` are the box axes in the parent frame.
struct OrientedBox {
  Vec3 center = Vec3::Zero();
  Mat3 rot = Mat3::Identity();
  Vec3 half = Vec3::Zero();

  Aabb bounds() const {
    const Vec3 r = rot.cwiseAbs() * half;
    Aabb box;
    box.expand(center - r);
    box.expand(center + r);
    return box;
  }
  bool contains(const Vec3& p) const {
    const Vec3 local = rot.transpose() * (p - center);
    return (local.cwiseAbs().array() <= half.array()).all();
  }
};

// Separating-axis tests. Exact surface contact (shared boundary, zero
// penetration) counts as NOT intersecting, which is what lets fingertips
// touch the contact points they were sampled at.
bool tri_intersects_box(const Vec3& a, const Vec3& b, const Vec3& c,
                        const OrientedBox& box);
bool box_intersects_box(const OrientedBox& a, const OrientedBox& b);

// True when any mesh triangle intersects the box. The accelerated path walks
// the mesh BVH; the exhaustive variant scans every face and exists as the
// oracle for it.
bool mesh_intersects_box(const TriangleMesh& mesh, const OrientedBox& box);
bool mesh_intersects_box_bruteforce(const TriangleMesh& mesh, const OrientedBox& box);

}  // namespace bigrasp
