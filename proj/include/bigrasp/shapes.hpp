#pragma once

#include <array>
#include <utility>
#include <vector>

#include "bigrasp/types.hpp"

namespace bigrasp {

// Raw indexed geometry for procedural shapes, merged viewer exports, and
// test fixtures. All generators produce watertight, outward-wound surfaces.
struct MeshData {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  void append(const MeshData& other, const Iso3& transform = Iso3::Identity());
};

MeshData box_mesh(const Vec3& half_extents);
MeshData icosphere_mesh(double radius, int subdivisions);
// Closed cylinder along z, centered at the origin.
MeshData cylinder_mesh(double radius, double height, int segments, int stacks = 1);
// Extruded L cross-section: outer legs sized leg_x by leg_y in the xy plane,
// both legs `thickness` wide, extruded by `depth` along z. Corner at origin.
MeshData l_prism_mesh(double leg_x, double leg_y, double thickness, double depth);
// Surface of revolution around z from an (r, z) profile; the profile must
// start and end at r = 0 to close the surface.
MeshData lathe_mesh(const std::vector<std::pair<double, double>>& profile_rz,
                    int segments);
// A bottle-like lathed body (flat bottom, wide body, narrow neck, closed lip).
MeshData bottle_mesh(double body_radius, double neck_radius, double height,
                     int segments = 48);

}  // namespace bigrasp
