// AVX2 variants of the batch kernels (4 doubles per lane). Lane arithmetic
// mirrors kernels_scalar.cpp operation for operation, FP contraction off and
// no FMA, so per-triangle results agree with the scalar reference; block
// remainders fall through to the scalar code.

#include "bigrasp/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace bigrasp::kernels {
namespace {

inline __m256d cross_a(__m256d ay, __m256d az, __m256d by, __m256d bz) {
  return _mm256_sub_pd(_mm256_mul_pd(ay, bz), _mm256_mul_pd(az, by));
}

void ray_block_avx2(const TriSoa& soa, std::size_t begin, std::size_t end,
                    const double origin[3], const double dir[3],
                    double t_min, RayHit& best) {
  const __m256d dx = _mm256_set1_pd(dir[0]);
  const __m256d dy = _mm256_set1_pd(dir[1]);
  const __m256d dz = _mm256_set1_pd(dir[2]);
  const __m256d ox = _mm256_set1_pd(origin[0]);
  const __m256d oy = _mm256_set1_pd(origin[1]);
  const __m256d oz = _mm256_set1_pd(origin[2]);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d det_eps = _mm256_set1_pd(1e-300);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  const __m256d vt_min = _mm256_set1_pd(t_min);

  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    const __m256d e1x = _mm256_loadu_pd(&soa.e1x[i]);
    const __m256d e1y = _mm256_loadu_pd(&soa.e1y[i]);
    const __m256d e1z = _mm256_loadu_pd(&soa.e1z[i]);
    const __m256d e2x = _mm256_loadu_pd(&soa.e2x[i]);
    const __m256d e2y = _mm256_loadu_pd(&soa.e2y[i]);
    const __m256d e2z = _mm256_loadu_pd(&soa.e2z[i]);

    const __m256d px = cross_a(dy, dz, e2y, e2z);
    const __m256d py = cross_a(dz, dx, e2z, e2x);
    const __m256d pz = cross_a(dx, dy, e2x, e2y);

    const __m256d det = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(e1x, px), _mm256_mul_pd(e1y, py)),
        _mm256_mul_pd(e1z, pz));
    const __m256d det_ok = _mm256_cmp_pd(_mm256_and_pd(det, abs_mask), det_eps, _CMP_GE_OQ);
    if (_mm256_movemask_pd(det_ok) == 0) continue;
    const __m256d inv_det = _mm256_div_pd(one, det);

    const __m256d sx = _mm256_sub_pd(ox, _mm256_loadu_pd(&soa.v0x[i]));
    const __m256d sy = _mm256_sub_pd(oy, _mm256_loadu_pd(&soa.v0y[i]));
    const __m256d sz = _mm256_sub_pd(oz, _mm256_loadu_pd(&soa.v0z[i]));

    const __m256d u = _mm256_mul_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(sx, px), _mm256_mul_pd(sy, py)),
                      _mm256_mul_pd(sz, pz)),
        inv_det);

    const __m256d qx = cross_a(sy, sz, e1y, e1z);
    const __m256d qy = cross_a(sz, sx, e1z, e1x);
    const __m256d qz = cross_a(sx, sy, e1x, e1y);

    const __m256d v = _mm256_mul_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, qx), _mm256_mul_pd(dy, qy)),
                      _mm256_mul_pd(dz, qz)),
        inv_det);

    const __m256d t = _mm256_mul_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(e2x, qx), _mm256_mul_pd(e2y, qy)),
                      _mm256_mul_pd(e2z, qz)),
        inv_det);

    __m256d ok = det_ok;
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(u, zero, _CMP_GE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(u, one, _CMP_LE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(v, zero, _CMP_GE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(_mm256_add_pd(u, v), one, _CMP_LE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(t, vt_min, _CMP_GT_OQ));

    int mask = _mm256_movemask_pd(ok);
    if (mask == 0) continue;

    alignas(32) double t_lane[4];
    _mm256_store_pd(t_lane, t);
    for (int lane = 0; lane < 4; ++lane) {
      if ((mask & (1 << lane)) == 0) continue;
      const auto prim = static_cast<std::int64_t>(i + lane);
      if (hit_better(t_lane[lane], prim, best)) {
        best.t = t_lane[lane];
        best.prim = prim;
      }
    }
  }
  if (i < end) scalar_table().ray_block(soa, i, end, origin, dir, t_min, best);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

TriMoments moments_block_avx2(const TriSoa& soa, std::size_t begin,
                              std::size_t end, double* face_area) {
  __m256d acc_vol = _mm256_setzero_pd();
  __m256d acc_mx = _mm256_setzero_pd();
  __m256d acc_my = _mm256_setzero_pd();
  __m256d acc_mz = _mm256_setzero_pd();
  __m256d acc_area = _mm256_setzero_pd();
  const __m256d sixth = _mm256_set1_pd(1.0 / 6.0);
  const __m256d quarter = _mm256_set1_pd(0.25);
  const __m256d half = _mm256_set1_pd(0.5);

  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    const __m256d v0x = _mm256_loadu_pd(&soa.v0x[i]);
    const __m256d v0y = _mm256_loadu_pd(&soa.v0y[i]);
    const __m256d v0z = _mm256_loadu_pd(&soa.v0z[i]);
    const __m256d e1x = _mm256_loadu_pd(&soa.e1x[i]);
    const __m256d e1y = _mm256_loadu_pd(&soa.e1y[i]);
    const __m256d e1z = _mm256_loadu_pd(&soa.e1z[i]);
    const __m256d e2x = _mm256_loadu_pd(&soa.e2x[i]);
    const __m256d e2y = _mm256_loadu_pd(&soa.e2y[i]);
    const __m256d e2z = _mm256_loadu_pd(&soa.e2z[i]);

    const __m256d v1x = _mm256_add_pd(v0x, e1x);
    const __m256d v1y = _mm256_add_pd(v0y, e1y);
    const __m256d v1z = _mm256_add_pd(v0z, e1z);
    const __m256d v2x = _mm256_add_pd(v0x, e2x);
    const __m256d v2y = _mm256_add_pd(v0y, e2y);
    const __m256d v2z = _mm256_add_pd(v0z, e2z);

    const __m256d cx = cross_a(v1y, v1z, v2y, v2z);
    const __m256d cy = cross_a(v1z, v1x, v2z, v2x);
    const __m256d cz = cross_a(v1x, v1y, v2x, v2y);
    const __m256d vol = _mm256_mul_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(v0x, cx), _mm256_mul_pd(v0y, cy)),
                      _mm256_mul_pd(v0z, cz)),
        sixth);
    acc_vol = _mm256_add_pd(acc_vol, vol);
    const __m256d m = _mm256_mul_pd(vol, quarter);
    acc_mx = _mm256_add_pd(acc_mx, _mm256_mul_pd(m, _mm256_add_pd(_mm256_add_pd(v0x, v1x), v2x)));
    acc_my = _mm256_add_pd(acc_my, _mm256_mul_pd(m, _mm256_add_pd(_mm256_add_pd(v0y, v1y), v2y)));
    acc_mz = _mm256_add_pd(acc_mz, _mm256_mul_pd(m, _mm256_add_pd(_mm256_add_pd(v0z, v1z), v2z)));

    const __m256d nx = cross_a(e1y, e1z, e2y, e2z);
    const __m256d ny = cross_a(e1z, e1x, e2z, e2x);
    const __m256d nz = cross_a(e1x, e1y, e2x, e2y);
    const __m256d area = _mm256_mul_pd(
        half, _mm256_sqrt_pd(_mm256_add_pd(
                  _mm256_add_pd(_mm256_mul_pd(nx, nx), _mm256_mul_pd(ny, ny)),
                  _mm256_mul_pd(nz, nz))));
    acc_area = _mm256_add_pd(acc_area, area);
    if (face_area != nullptr) _mm256_storeu_pd(face_area + i, area);
  }

  TriMoments acc;
  acc.volume = hsum(acc_vol);
  acc.mx = hsum(acc_mx);
  acc.my = hsum(acc_my);
  acc.mz = hsum(acc_mz);
  acc.area = hsum(acc_area);
  if (i < end) {
    const TriMoments tail = scalar_table().moments_block(
        soa, i, end, face_area);
    acc.volume += tail.volume;
    acc.mx += tail.mx;
    acc.my += tail.my;
    acc.mz += tail.mz;
    acc.area += tail.area;
  }
  return acc;
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{&ray_block_avx2, &moments_block_avx2, "avx2"};
  return &table;
}

}  // namespace bigrasp::kernels

#else  // !defined(__AVX2__)

namespace bigrasp::kernels {
const KernelTable* avx2_table_impl() { return nullptr; }
}  // namespace bigrasp::kernels

#endif
