#include "bigrasp/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bigrasp {

namespace {

// Slab test; returns false when the ray misses, otherwise the entry distance
// clamped to t_lo. Axes with zero direction reject boxes the origin is
// outside of.
bool ray_box(const Aabb& box, const Vec3& origin, const Vec3& dir,
             double t_lo, double t_hi, double& t_entry) {
  double tmin = t_lo;
  double tmax = t_hi;
  for (int a = 0; a < 3; ++a) {
    const double d = dir[a];
    if (std::abs(d) < 1e-300) {
      if (origin[a] < box.lo[a] || origin[a] > box.hi[a]) return false;
      continue;
    }
    const double inv = 1.0 / d;
    double t0 = (box.lo[a] - origin[a]) * inv;
    double t1 = (box.hi[a] - origin[a]) * inv;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  t_entry = tmin;
  return true;
}

}  // namespace

void Bvh::build(const std::vector<Aabb>& prim_boxes, int leaf_size) {
  nodes_.clear();
  order_.clear();
  const auto n = static_cast<std::int32_t>(prim_boxes.size());
  if (n == 0) return;
  std::vector<std::int32_t> prims(n);
  std::iota(prims.begin(), prims.end(), 0);
  nodes_.reserve(2 * n);
  build_node(prims, 0, n, prim_boxes, std::max(1, leaf_size));
  order_ = std::move(prims);
}

std::int32_t Bvh::build_node(std::vector<std::int32_t>& prims, int lo, int hi,
                             const std::vector<Aabb>& prim_boxes, int leaf_size) {
  const auto index = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box;
  for (int i = lo; i < hi; ++i) box.expand(prim_boxes[prims[i]]);
  nodes_[index].box = box;

  const int count = hi - lo;
  if (count <= leaf_size) {
    nodes_[index].begin = lo;
    nodes_[index].count = count;
    return index;
  }

  Aabb centroid_box;
  for (int i = lo; i < hi; ++i) centroid_box.expand(prim_boxes[prims[i]].center());
  int axis = 0;
  const Vec3 ext = centroid_box.extent();
  if (ext[1] > ext[axis]) axis = 1;
  if (ext[2] > ext[axis]) axis = 2;

  const int mid = lo + count / 2;
  std::nth_element(prims.begin() + lo, prims.begin() + mid, prims.begin() + hi,
                   [&](std::int32_t a, std::int32_t b) {
                     const double ca = prim_boxes[a].center()[axis];
                     const double cb = prim_boxes[b].center()[axis];
                     if (ca != cb) return ca < cb;
                     return a < b;  // deterministic tie-break
                   });

  const std::int32_t left = build_node(prims, lo, mid, prim_boxes, leaf_size);
  const std::int32_t right = build_node(prims, mid, hi, prim_boxes, leaf_size);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

kernels::RayHit Bvh::raycast(const kernels::TriSoa& soa, const Vec3& origin,
                             const Vec3& dir, double t_min,
                             kernels::RayBlockFn ray) const {
  kernels::RayHit best;
  if (nodes_.empty()) return best;

  struct Entry {
    std::int32_t node;
    double t_entry;
  };
  Entry stack[64];
  int top = 0;

  double t0 = 0.0;
  if (!ray_box(nodes_[0].box, origin, dir, t_min,
               std::numeric_limits<double>::infinity(), t0)) {
    return best;
  }
  stack[top++] = {0, t0};

  const double org[3] = {origin.x(), origin.y(), origin.z()};
  const double d[3] = {dir.x(), dir.y(), dir.z()};

  while (top > 0) {
    const Entry entry = stack[--top];
    if (best.valid() && entry.t_entry > best.t) continue;
    const Node& node = nodes_[entry.node];
    if (node.leaf()) {
      ray(soa, node.begin, node.begin + node.count, org, d, t_min, best);
      continue;
    }
    const double limit = best.valid() ? best.t : std::numeric_limits<double>::infinity();
    double tl = 0.0, tr = 0.0;
    const bool hit_l = ray_box(nodes_[node.left].box, origin, dir, t_min, limit, tl);
    const bool hit_r = ray_box(nodes_[node.right].box, origin, dir, t_min, limit, tr);
    if (hit_l && hit_r) {
      // near child on top of the stack
      if (tl <= tr) {
        stack[top++] = {node.right, tr};
        stack[top++] = {node.left, tl};
      } else {
        stack[top++] = {node.left, tl};
        stack[top++] = {node.right, tr};
      }
    } else if (hit_l) {
      stack[top++] = {node.left, tl};
    } else if (hit_r) {
      stack[top++] = {node.right, tr};
    }
  }
  return best;
}

}  // namespace bigrasp
