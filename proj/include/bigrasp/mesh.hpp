#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bigrasp/bvh.hpp"
#include "bigrasp/kernels.hpp"
#include "bigrasp/rng.hpp"
#include "bigrasp/types.hpp"

namespace bigrasp {

struct MassProperties {
  double volume = 0.0;     // m^3
  Vec3 center_of_mass = Vec3::Zero();
  double mass = 0.0;       // kg
};

struct SurfaceSample {
  Vec3 point;
  Vec3 normal;  // outward face normal
  int face_index = -1;
};

struct RaycastHit {
  Vec3 point;
  Vec3 normal;  // outward normal of the hit face
  int face_index = -1;
  double distance = 0.0;
};

// Self-hit exclusion on the ray parameter (meters, since directions are unit).
inline constexpr double kRayEpsilon = 1e-9;

// Immutable triangle mesh with face normals, area table, and a BVH over the
// faces. All queries are const and safe to call concurrently.
class TriangleMesh {
 public:
  TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const Vec3& face_normal(int f) const { return face_normals_[f]; }
  double face_area(int f) const { return face_areas_[f]; }
  const Vec3& face_vertex(int f, int k) const { return vertices_[faces_[f][k]]; }
  double surface_area() const { return total_area_; }
  const Aabb& bounds() const { return bounds_; }
  std::size_t dropped_degenerate_faces() const { return dropped_faces_; }

  // Open (boundary or over-shared) edges as vertex-index pairs; empty for a
  // watertight, consistently wound mesh.
  std::vector<std::array<int, 2>> open_edges() const;
  bool is_watertight() const { return open_edges().empty(); }
  void validate_watertight() const;  // throws naming the offending edges

  MassProperties mass_properties(double density) const;

  // Face chosen with probability proportional to area, point uniform in the
  // face. Draw order per sample: (face pick, b1, b2).
  SurfaceSample sample_surface(Rng& rng) const;

  std::optional<RaycastHit> raycast(const Vec3& origin, const Vec3& dir) const;
  // Exhaustive per-face scan, used as the oracle for the BVH path.
  std::optional<RaycastHit> raycast_bruteforce(const Vec3& origin, const Vec3& dir) const;

  // Ray-parity containment test along a fixed direction.
  bool contains(const Vec3& point) const;

  // fn(face_index) for every face whose BVH leaf box overlaps `query`;
  // faces may repeat scanning work but each index is reported once per leaf.
  template <class Fn>
  void faces_overlapping(const Aabb& query, Fn&& fn) const {
    bvh_.leaves_overlapping(query, [&](std::int32_t begin, std::int32_t count) {
      for (std::int32_t k = begin; k < begin + count; ++k) fn(soa_to_face_[k]);
    });
  }

  const kernels::TriSoa& soa() const { return soa_; }
  const std::vector<int>& soa_to_face() const { return soa_to_face_; }

 private:
  std::optional<RaycastHit> make_hit(const kernels::RayHit& hit, const Vec3& origin,
                                     const Vec3& dir) const;

  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<Vec3> face_normals_;
  std::vector<double> face_areas_;
  std::vector<double> area_cdf_;
  double total_area_ = 0.0;
  Aabb bounds_;
  std::size_t dropped_faces_ = 0;

  kernels::TriSoa soa_;          // faces in BVH order
  std::vector<int> soa_to_face_;
  Bvh bvh_;
  kernels::TriMoments moments_;  // cached over the whole surface
};

// Loads an OBJ or STL (ASCII or binary) file and scales vertices by `scale`.
// Degenerate faces are dropped; more than 1% degenerate is rejected.
TriangleMesh load_mesh(const std::filesystem::path& path, double scale);

}  // namespace bigrasp
