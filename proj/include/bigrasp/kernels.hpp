#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bigrasp::kernels {

// Structure-of-arrays triangle storage: v0 plus the two edge vectors
// e1 = v1 - v0, e2 = v2 - v0. Layout is chosen for the batch kernels; the
// mesh keeps triangles in BVH-leaf order so leaf queries hit contiguous runs.
struct TriSoa {
  std::vector<double> v0x, v0y, v0z;
  std::vector<double> e1x, e1y, e1z;
  std::vector<double> e2x, e2y, e2z;

  std::size_t size() const { return v0x.size(); }
  void reserve(std::size_t n);
  void push(const double v0[3], const double v1[3], const double v2[3]);
};

struct RayHit {
  double t = -1.0;
  std::int64_t prim = -1;  // index into the SoA ordering, -1 when no hit
  bool valid() const { return prim >= 0; }
};

// Lexicographic (t, prim) order makes nearest-hit reductions independent of
// the traversal order that produced the candidates.
inline bool hit_better(double t, std::int64_t prim, const RayHit& best) {
  if (!best.valid()) return true;
  if (t != best.t) return t < best.t;
  return prim < best.prim;
}

// Accumulated divergence-theorem face moments: signed tetra volumes against
// the origin and their first moments, plus the total unsigned face area.
struct TriMoments {
  double volume = 0.0;
  double mx = 0.0, my = 0.0, mz = 0.0;
  double area = 0.0;
};

// Watertight-irrelevant primitives over a SoA range [begin, end):
//  ray_block: nearest Moller-Trumbore intersection with t > t_min, folded
//             into `best` under the (t, prim) order above.
//  moments_block: TriMoments accumulated over the range; when face_area is
//             non-null, face_area[i] receives the area of triangle i.
using RayBlockFn = void (*)(const TriSoa& soa, std::size_t begin, std::size_t end,
                            const double origin[3], const double dir[3],
                            double t_min, RayHit& best);
using MomentsBlockFn = TriMoments (*)(const TriSoa& soa, std::size_t begin,
                                      std::size_t end, double* face_area);

struct KernelTable {
  RayBlockFn ray_block;
  MomentsBlockFn moments_block;
  const char* name;
};

const KernelTable& scalar_table();
bool avx2_compiled();
bool avx2_supported();                       // compiled in and usable on this CPU
const KernelTable* table_by_name(const std::string& name);  // "scalar"/"avx2"

// Active table, chosen once per process: AVX2 when available, else scalar.
// BIGRASP_KERNEL=scalar|avx2 overrides the choice (unusable values fall back
// to scalar).
const KernelTable& active();

}  // namespace bigrasp::kernels
