#include "bigrasp/shapes.hpp"

#include <cmath>
#include <map>

#include "bigrasp/errors.hpp"

namespace bigrasp {

void MeshData::append(const MeshData& other, const Iso3& transform) {
  const int base = static_cast<int>(vertices.size());
  vertices.reserve(vertices.size() + other.vertices.size());
  for (const Vec3& v : other.vertices) vertices.push_back(transform * v);
  faces.reserve(faces.size() + other.faces.size());
  for (const auto& f : other.faces) {
    faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
}

MeshData box_mesh(const Vec3& h) {
  MeshData m;
  m.vertices = {
      {-h.x(), -h.y(), -h.z()}, {h.x(), -h.y(), -h.z()},
      {h.x(), h.y(), -h.z()},   {-h.x(), h.y(), -h.z()},
      {-h.x(), -h.y(), h.z()},  {h.x(), -h.y(), h.z()},
      {h.x(), h.y(), h.z()},    {-h.x(), h.y(), h.z()},
  };
  m.faces = {
      {0, 2, 1}, {0, 3, 2},  // -z
      {4, 5, 6}, {4, 6, 7},  // +z
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 3, 7}, {2, 7, 6},  // +y
      {1, 2, 6}, {1, 6, 5},  // +x
      {3, 0, 4}, {3, 4, 7},  // -x
  };
  return m;
}

MeshData icosphere_mesh(double radius, int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  MeshData m;
  m.vertices = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
  };
  m.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      const auto [it, inserted] =
          midpoint.try_emplace(key, static_cast<int>(m.vertices.size()));
      if (inserted) m.vertices.push_back(0.5 * (m.vertices[a] + m.vertices[b]));
      return it->second;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
  }

  for (Vec3& v : m.vertices) v = radius * v.normalized();
  return m;
}

MeshData cylinder_mesh(double radius, double height, int segments, int stacks) {
  if (segments < 3 || stacks < 1) throw ConfigError("cylinder needs >=3 segments");
  MeshData m;
  const double hz = height / 2.0;
  // rings bottom to top
  for (int s = 0; s <= stacks; ++s) {
    const double z = -hz + height * s / stacks;
    for (int k = 0; k < segments; ++k) {
      const double a = 2.0 * M_PI * k / segments;
      m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
    }
  }
  const int bottom_center = static_cast<int>(m.vertices.size());
  m.vertices.emplace_back(0, 0, -hz);
  const int top_center = static_cast<int>(m.vertices.size());
  m.vertices.emplace_back(0, 0, hz);

  auto ring = [&](int s, int k) { return s * segments + (k % segments); };
  for (int s = 0; s < stacks; ++s) {
    for (int k = 0; k < segments; ++k) {
      const int a = ring(s, k), b = ring(s, k + 1);
      const int c = ring(s + 1, k + 1), d = ring(s + 1, k);
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  }
  for (int k = 0; k < segments; ++k) {
    m.faces.push_back({bottom_center, ring(0, k + 1), ring(0, k)});
    m.faces.push_back({top_center, ring(stacks, k), ring(stacks, k + 1)});
  }
  return m;
}

MeshData l_prism_mesh(double leg_x, double leg_y, double thickness, double depth) {
  if (thickness >= leg_x || thickness >= leg_y) {
    throw ConfigError("l_prism thickness must be smaller than both legs");
  }
  // L cross-section, counter-clockwise in xy
  const std::vector<Vec3> profile = {
      {0, 0, 0},         {leg_x, 0, 0},         {leg_x, thickness, 0},
      {thickness, thickness, 0}, {thickness, leg_y, 0}, {0, leg_y, 0},
  };
  MeshData m;
  const int n = static_cast<int>(profile.size());
  for (const Vec3& p : profile) m.vertices.push_back(p);                    // z=0
  for (const Vec3& p : profile) m.vertices.push_back(p + Vec3(0, 0, depth));  // z=depth

  // caps: the L splits into two rectangles (0,1,2,3) and (0,3,4,5)
  const std::vector<std::array<int, 3>> cap = {
      {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}};
  for (const auto& t : cap) m.faces.push_back({t[0], t[2], t[1]});          // bottom, -z out
  for (const auto& t : cap) m.faces.push_back({t[0] + n, t[1] + n, t[2] + n});  // top
  for (int k = 0; k < n; ++k) {
    const int a = k, b = (k + 1) % n;
    m.faces.push_back({a, b, b + n});
    m.faces.push_back({a, b + n, a + n});
  }
  return m;
}

MeshData lathe_mesh(const std::vector<std::pair<double, double>>& profile,
                    int segments) {
  if (profile.size() < 3 || segments < 3) throw ConfigError("lathe profile too small");
  if (profile.front().first != 0.0 || profile.back().first != 0.0) {
    throw ConfigError("lathe profile must start and end on the axis (r = 0)");
  }
  MeshData m;
  const int bottom = 0;
  m.vertices.emplace_back(0, 0, profile.front().second);
  std::vector<int> ring_start;
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    ring_start.push_back(static_cast<int>(m.vertices.size()));
    const auto [r, z] = profile[i];
    for (int k = 0; k < segments; ++k) {
      const double a = 2.0 * M_PI * k / segments;
      m.vertices.emplace_back(r * std::cos(a), r * std::sin(a), z);
    }
  }
  const int top = static_cast<int>(m.vertices.size());
  m.vertices.emplace_back(0, 0, profile.back().second);

  auto at = [&](int ring, int k) { return ring_start[ring] + (k % segments); };
  for (int k = 0; k < segments; ++k) {
    m.faces.push_back({bottom, at(0, k + 1), at(0, k)});
  }
  for (std::size_t ring = 0; ring + 1 < ring_start.size(); ++ring) {
    for (int k = 0; k < segments; ++k) {
      const int a = at(ring, k), b = at(ring, k + 1);
      const int c = at(ring + 1, k + 1), d = at(ring + 1, k);
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  }
  const int last = static_cast<int>(ring_start.size()) - 1;
  for (int k = 0; k < segments; ++k) {
    m.faces.push_back({top, at(last, k), at(last, k + 1)});
  }
  return m;
}

MeshData bottle_mesh(double body_radius, double neck_radius, double height,
                     int segments) {
  const double body_top = 0.62 * height;
  const double shoulder = 0.72 * height;
  std::vector<std::pair<double, double>> profile = {
      {0.0, 0.0},
      {0.86 * body_radius, 0.0},
      {body_radius, 0.04 * height},
      {body_radius, body_top},
      {neck_radius, shoulder},
      {neck_radius, 0.97 * height},
      {1.12 * neck_radius, 0.985 * height},  // lip
      {1.12 * neck_radius, height},
      {0.0, height},
  };
  return lathe_mesh(profile, segments);
}

}  // namespace bigrasp
