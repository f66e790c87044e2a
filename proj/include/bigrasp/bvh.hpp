#pragma once

#include <cstdint>
#include <vector>

#include "bigrasp/kernels.hpp"
#include "bigrasp/types.hpp"

namespace bigrasp {

// Binary AABB tree over triangle bounding boxes. Building permutes the
// primitives so every leaf owns a contiguous range; that permutation is
// applied to the mesh's SoA storage, which lets leaf queries run the batch
// kernels over [begin, begin+count).
class Bvh {
 public:
  struct Node {
    Aabb box;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t begin = 0;
    std::int32_t count = 0;  // > 0 marks a leaf
    bool leaf() const { return count > 0; }
  };

  void build(const std::vector<Aabb>& prim_boxes, int leaf_size = 8);

  bool empty() const { return nodes_.empty(); }
  const std::vector<std::int32_t>& order() const { return order_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Nearest hit over the SoA using `ray` for leaf ranges. Nodes are pruned
  // only when strictly farther than the current best so exact-tie results
  // match an exhaustive scan.
  kernels::RayHit raycast(const kernels::TriSoa& soa, const Vec3& origin,
                          const Vec3& dir, double t_min,
                          kernels::RayBlockFn ray) const;

  // Invokes fn(begin, count) for every leaf range whose box overlaps `query`.
  template <class Fn>
  void leaves_overlapping(const Aabb& query, Fn&& fn) const {
    if (nodes_.empty()) return;
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& node = nodes_[stack[--top]];
      if (!node.box.overlaps(query)) continue;
      if (node.leaf()) {
        fn(node.begin, node.count);
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
  }

 private:
  std::int32_t build_node(std::vector<std::int32_t>& prims, int lo, int hi,
                          const std::vector<Aabb>& prim_boxes, int leaf_size);

  std::vector<Node> nodes_;
  std::vector<std::int32_t> order_;
};

}  // namespace bigrasp
