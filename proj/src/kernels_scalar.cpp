// Scalar reference kernels. The AVX2 variants in kernels_avx2.cpp perform the
// same arithmetic lane-wise; this file is the behavior they are tested
// against, so it is compiled with FP contraction off (see CMakeLists).

#include "bigrasp/kernels.hpp"

#include <cmath>

namespace bigrasp::kernels {

void TriSoa::reserve(std::size_t n) {
  v0x.reserve(n); v0y.reserve(n); v0z.reserve(n);
  e1x.reserve(n); e1y.reserve(n); e1z.reserve(n);
  e2x.reserve(n); e2y.reserve(n); e2z.reserve(n);
}

void TriSoa::push(const double v0[3], const double v1[3], const double v2[3]) {
  v0x.push_back(v0[0]); v0y.push_back(v0[1]); v0z.push_back(v0[2]);
  e1x.push_back(v1[0] - v0[0]); e1y.push_back(v1[1] - v0[1]); e1z.push_back(v1[2] - v0[2]);
  e2x.push_back(v2[0] - v0[0]); e2y.push_back(v2[1] - v0[1]); e2z.push_back(v2[2] - v0[2]);
}

namespace {

void ray_block_scalar(const TriSoa& soa, std::size_t begin, std::size_t end,
                      const double origin[3], const double dir[3],
                      double t_min, RayHit& best) {
  // Moller-Trumbore, double precision, no backface culling.
  for (std::size_t i = begin; i < end; ++i) {
    const double px = dir[1] * soa.e2z[i] - dir[2] * soa.e2y[i];
    const double py = dir[2] * soa.e2x[i] - dir[0] * soa.e2z[i];
    const double pz = dir[0] * soa.e2y[i] - dir[1] * soa.e2x[i];
    const double det = soa.e1x[i] * px + soa.e1y[i] * py + soa.e1z[i] * pz;
    if (std::abs(det) < 1e-300) continue;
    const double inv_det = 1.0 / det;
    const double sx = origin[0] - soa.v0x[i];
    const double sy = origin[1] - soa.v0y[i];
    const double sz = origin[2] - soa.v0z[i];
    const double u = (sx * px + sy * py + sz * pz) * inv_det;
    if (u < 0.0 || u > 1.0) continue;
    const double qx = sy * soa.e1z[i] - sz * soa.e1y[i];
    const double qy = sz * soa.e1x[i] - sx * soa.e1z[i];
    const double qz = sx * soa.e1y[i] - sy * soa.e1x[i];
    const double v = (dir[0] * qx + dir[1] * qy + dir[2] * qz) * inv_det;
    if (v < 0.0 || u + v > 1.0) continue;
    const double t = (soa.e2x[i] * qx + soa.e2y[i] * qy + soa.e2z[i] * qz) * inv_det;
    if (t <= t_min) continue;
    if (hit_better(t, static_cast<std::int64_t>(i), best)) {
      best.t = t;
      best.prim = static_cast<std::int64_t>(i);
    }
  }
}

TriMoments moments_block_scalar(const TriSoa& soa, std::size_t begin,
                                std::size_t end, double* face_area) {
  TriMoments acc;
  for (std::size_t i = begin; i < end; ++i) {
    const double v0x = soa.v0x[i], v0y = soa.v0y[i], v0z = soa.v0z[i];
    const double v1x = v0x + soa.e1x[i], v1y = v0y + soa.e1y[i], v1z = v0z + soa.e1z[i];
    const double v2x = v0x + soa.e2x[i], v2y = v0y + soa.e2y[i], v2z = v0z + soa.e2z[i];

    // Signed volume of the tetra (origin, v0, v1, v2); centroid at the
    // vertex average. Summing over a closed surface yields the solid's
    // volume and first moments (divergence theorem).
    const double cx = v1y * v2z - v1z * v2y;
    const double cy = v1z * v2x - v1x * v2z;
    const double cz = v1x * v2y - v1y * v2x;
    const double vol = (v0x * cx + v0y * cy + v0z * cz) / 6.0;
    acc.volume += vol;
    const double m = vol * 0.25;
    acc.mx += m * (v0x + v1x + v2x);
    acc.my += m * (v0y + v1y + v2y);
    acc.mz += m * (v0z + v1z + v2z);

    const double nx = soa.e1y[i] * soa.e2z[i] - soa.e1z[i] * soa.e2y[i];
    const double ny = soa.e1z[i] * soa.e2x[i] - soa.e1x[i] * soa.e2z[i];
    const double nz = soa.e1x[i] * soa.e2y[i] - soa.e1y[i] * soa.e2x[i];
    const double area = 0.5 * std::sqrt(nx * nx + ny * ny + nz * nz);
    acc.area += area;
    if (face_area != nullptr) face_area[i] = area;
  }
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{&ray_block_scalar, &moments_block_scalar, "scalar"};
  return table;
}

}  // namespace bigrasp::kernels
