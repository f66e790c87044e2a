#include "bigrasp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bigrasp/errors.hpp"

namespace bigrasp {

namespace {

// Fixed containment-test direction with irrational-ish components so that
// axis-aligned geometry is never hit edge-on.
const Vec3 kParityDir = Vec3(0.57735026918962584, 0.57721566490153287,
                             0.61803398874989490).normalized();

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices,
                           std::vector<std::array<int, 3>> faces)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw IoError("mesh has no vertices");
  const auto nv = static_cast<int>(vertices_.size());
  for (const Vec3& v : vertices_) {
    if (!v.allFinite()) throw IoError("mesh has non-finite vertex coordinates");
    bounds_.expand(v);
  }

  const double diag = bounds_.diagonal();
  const double area_tol = std::max(1e-300, 1e-12 * diag * diag);

  face_normals_.reserve(faces.size());
  face_areas_.reserve(faces.size());
  faces_.reserve(faces.size());
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) {
      if (f[k] < 0 || f[k] >= nv) {
        throw IoError("mesh face references vertex " + std::to_string(f[k]) +
                      " out of range [0, " + std::to_string(nv) + ")");
      }
    }
    const Vec3& a = vertices_[f[0]];
    const Vec3 e1 = vertices_[f[1]] - a;
    const Vec3 e2 = vertices_[f[2]] - a;
    const Vec3 cr = e1.cross(e2);
    const double area = 0.5 * cr.norm();
    if (area < area_tol) {
      ++dropped_faces_;
      continue;
    }
    faces_.push_back(f);
    face_normals_.push_back(cr / cr.norm());
    face_areas_.push_back(area);
  }
  if (faces_.empty()) throw IoError("mesh has no non-degenerate faces");
  if (dropped_faces_ * 100 > (faces_.size() + dropped_faces_)) {
    throw IoError("mesh rejected: " + std::to_string(dropped_faces_) + " of " +
                  std::to_string(faces_.size() + dropped_faces_) +
                  " faces are degenerate (>1%)");
  }

  area_cdf_.resize(faces_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    acc += face_areas_[i];
    area_cdf_[i] = acc;
  }
  total_area_ = acc;

  std::vector<Aabb> prim_boxes(faces_.size());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (int k = 0; k < 3; ++k) prim_boxes[i].expand(vertices_[faces_[i][k]]);
  }
  bvh_.build(prim_boxes);

  soa_.reserve(faces_.size());
  soa_to_face_.reserve(faces_.size());
  for (const std::int32_t f : bvh_.order()) {
    const auto& tri = faces_[f];
    soa_.push(vertices_[tri[0]].data(), vertices_[tri[1]].data(),
              vertices_[tri[2]].data());
    soa_to_face_.push_back(f);
  }

  moments_ = kernels::active().moments_block(soa_, 0, soa_.size(), nullptr);
}

std::vector<std::array<int, 2>> TriangleMesh::open_edges() const {
  // forward/backward use counts per undirected edge; watertight two-manifold
  // geometry has exactly one of each.
  std::map<std::pair<int, int>, std::pair<int, int>> edges;
  for (const auto& f : faces_) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[k];
      const int b = f[(k + 1) % 3];
      if (a < b) {
        edges[{a, b}].first++;
      } else {
        edges[{b, a}].second++;
      }
    }
  }
  std::vector<std::array<int, 2>> bad;
  for (const auto& [edge, counts] : edges) {
    if (counts.first != 1 || counts.second != 1) {
      bad.push_back({edge.first, edge.second});
    }
  }
  return bad;
}

void TriangleMesh::validate_watertight() const {
  const auto bad = open_edges();
  if (bad.empty()) return;
  std::ostringstream msg;
  msg << "mesh is not watertight: " << bad.size() << " open or non-manifold edges:";
  const std::size_t show = std::min<std::size_t>(bad.size(), 8);
  for (std::size_t i = 0; i < show; ++i) {
    msg << " (" << bad[i][0] << "," << bad[i][1] << ")";
  }
  if (bad.size() > show) msg << " ...";
  throw ConfigError(msg.str());
}

MassProperties TriangleMesh::mass_properties(double density) const {
  if (density <= 0.0) throw ConfigError("density must be positive");
  validate_watertight();
  if (moments_.volume <= 0.0) {
    throw ConfigError("mesh volume is non-positive (" +
                      std::to_string(moments_.volume) +
                      "); face winding is likely inverted");
  }
  MassProperties mp;
  mp.volume = moments_.volume;
  mp.center_of_mass = Vec3(moments_.mx, moments_.my, moments_.mz) / moments_.volume;
  mp.mass = density * moments_.volume;
  return mp;
}

SurfaceSample TriangleMesh::sample_surface(Rng& rng) const {
  const double u = rng.uniform() * total_area_;
  const auto it = std::lower_bound(area_cdf_.begin(), area_cdf_.end(), u);
  const int f = static_cast<int>(std::min<std::size_t>(
      std::distance(area_cdf_.begin(), it), faces_.size() - 1));

  const double b1 = rng.uniform();
  const double b2 = rng.uniform();
  const double s = std::sqrt(b1);
  const Vec3& a = vertices_[faces_[f][0]];
  const Vec3& b = vertices_[faces_[f][1]];
  const Vec3& c = vertices_[faces_[f][2]];
  SurfaceSample out;
  out.point = (1.0 - s) * a + s * (1.0 - b2) * b + s * b2 * c;
  out.normal = face_normals_[f];
  out.face_index = f;
  return out;
}

std::optional<RaycastHit> TriangleMesh::make_hit(const kernels::RayHit& hit,
                                                 const Vec3& origin,
                                                 const Vec3& dir) const {
  if (!hit.valid()) return std::nullopt;
  RaycastHit out;
  out.face_index = soa_to_face_[hit.prim];
  out.distance = hit.t;
  out.point = origin + hit.t * dir;
  out.normal = face_normals_[out.face_index];
  return out;
}

std::optional<RaycastHit> TriangleMesh::raycast(const Vec3& origin,
                                                const Vec3& dir) const {
  const kernels::RayHit hit =
      bvh_.raycast(soa_, origin, dir, kRayEpsilon, kernels::active().ray_block);
  return make_hit(hit, origin, dir);
}

std::optional<RaycastHit> TriangleMesh::raycast_bruteforce(const Vec3& origin,
                                                           const Vec3& dir) const {
  kernels::RayHit hit;
  const double org[3] = {origin.x(), origin.y(), origin.z()};
  const double d[3] = {dir.x(), dir.y(), dir.z()};
  kernels::active().ray_block(soa_, 0, soa_.size(), org, d, kRayEpsilon, hit);
  return make_hit(hit, origin, dir);
}

bool TriangleMesh::contains(const Vec3& point) const {
  // Parity of crossings; marches the origin forward past each hit.
  int crossings = 0;
  Vec3 origin = point;
  double travelled = 0.0;
  const double limit = bounds_.diagonal() * 4.0 + 1.0;
  while (travelled < limit) {
    const auto hit = raycast(origin, kParityDir);
    if (!hit) break;
    ++crossings;
    travelled += hit->distance;
    origin = hit->point + kRayEpsilon * 2.0 * kParityDir;
  }
  return (crossings % 2) == 1;
}

}  // namespace bigrasp
