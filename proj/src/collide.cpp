#include "bigrasp/collide.hpp"

#include <cmath>

namespace bigrasp {

namespace {

// Axis-aligned triangle-box SAT in the box's local frame (Akenine-Moller).
// Comparisons are closed, so projections that merely touch count as
// separated: contact with zero penetration is not an intersection.
bool tri_aabb_sat(const Vec3& v0, const Vec3& v1, const Vec3& v2, const Vec3& h) {
  auto axis_separates = [&](const Vec3& axis, double radius) {
    const double p0 = axis.dot(v0);
    const double p1 = axis.dot(v1);
    const double p2 = axis.dot(v2);
    const double lo = std::min({p0, p1, p2});
    const double hi = std::max({p0, p1, p2});
    return lo >= radius || hi <= -radius;
  };

  // box face normals
  for (int a = 0; a < 3; ++a) {
    const double lo = std::min({v0[a], v1[a], v2[a]});
    const double hi = std::max({v0[a], v1[a], v2[a]});
    if (lo >= h[a] || hi <= -h[a]) return false;
  }

  const Vec3 e0 = v1 - v0;
  const Vec3 e1 = v2 - v1;
  const Vec3 e2 = v0 - v2;

  // triangle normal
  const Vec3 n = e0.cross(e1);
  if (n.squaredNorm() > 0.0) {
    const double r = h.dot(n.cwiseAbs());
    if (axis_separates(n, r)) return false;
  }

  // nine edge cross axes
  const std::array<Vec3, 3> edges = {e0, e1, e2};
  for (int a = 0; a < 3; ++a) {
    Vec3 unit = Vec3::Zero();
    unit[a] = 1.0;
    for (const Vec3& e : edges) {
      const Vec3 axis = unit.cross(e);
      const double len2 = axis.squaredNorm();
      if (len2 < 1e-24) continue;  // edge parallel to the box axis
      const double r = h.dot(axis.cwiseAbs());
      if (axis_separates(axis, r)) return false;
    }
  }
  return true;
}

}  // namespace

bool tri_intersects_box(const Vec3& a, const Vec3& b, const Vec3& c,
                        const OrientedBox& box) {
  const Mat3 rt = box.rot.transpose();
  return tri_aabb_sat(rt * (a - box.center), rt * (b - box.center),
                      rt * (c - box.center), box.half);
}

bool box_intersects_box(const OrientedBox& a, const OrientedBox& b) {
  // Gottschalk's OBB SAT: 3 + 3 face axes, 9 edge-pair axes.
  const Mat3 r = a.rot.transpose() * b.rot;
  const Vec3 t = a.rot.transpose() * (b.center - a.center);
  const Mat3 abs_r = r.cwiseAbs() + Mat3::Constant(1e-12);  // robust near-parallel

  for (int i = 0; i < 3; ++i) {
    const double ra = a.half[i];
    const double rb = abs_r.row(i).dot(b.half);
    if (std::abs(t[i]) >= ra + rb) return false;
  }
  for (int j = 0; j < 3; ++j) {
    const double ra = abs_r.col(j).dot(a.half);
    const double rb = b.half[j];
    if (std::abs(t.dot(r.col(j))) >= ra + rb) return false;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      const double ra = a.half[i1] * abs_r(i2, j) + a.half[i2] * abs_r(i1, j);
      const double rb = b.half[j1] * abs_r(i, j2) + b.half[j2] * abs_r(i, j1);
      const double dist = std::abs(t[i2] * r(i1, j) - t[i1] * r(i2, j));
      if (dist >= ra + rb) return false;
    }
  }
  return true;
}

bool mesh_intersects_box(const TriangleMesh& mesh, const OrientedBox& box) {
  const Aabb query = box.bounds();
  bool hit = false;
  mesh.faces_overlapping(query, [&](int f) {
    if (hit) return;
    if (tri_intersects_box(mesh.face_vertex(f, 0), mesh.face_vertex(f, 1),
                           mesh.face_vertex(f, 2), box)) {
      hit = true;
    }
  });
  return hit;
}

bool mesh_intersects_box_bruteforce(const TriangleMesh& mesh, const OrientedBox& box) {
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    if (tri_intersects_box(mesh.face_vertex(static_cast<int>(f), 0),
                           mesh.face_vertex(static_cast<int>(f), 1),
                           mesh.face_vertex(static_cast<int>(f), 2), box)) {
      return true;
    }
  }
  return false;
}

}  // namespace bigrasp
