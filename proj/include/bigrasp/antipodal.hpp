#pragma once

#include <cstdint>
#include <vector>

#include "bigrasp/gripper.hpp"
#include "bigrasp/mesh.hpp"
#include "bigrasp/types.hpp"

namespace bigrasp {

struct SamplerConfig {
  double mu = 0.5;            // friction coefficient
  int n_grasps = 500;
  int max_attempts = 0;       // 0 means 100 * n_grasps
  int rolls_per_contact = 4;
  double standoff = 0.0;      // m, pose origin offset behind the contacts
  std::uint64_t rng_seed = 0;

  // Friction cone half-angle and the ray-cone threshold derived from it.
  // Recomputed on demand so they can never go stale against mu.
  double cone_angle() const;       // alpha = atan(mu)
  double ray_cone_gamma() const;   // gamma = tan(alpha / 2)
  int effective_max_attempts() const {
    return max_attempts > 0 ? max_attempts : 100 * n_grasps;
  }
  void validate() const;
};

// Dual friction-cone test on a contact pair; normals point inward as stored
// on GraspPose. True iff the contact line lies inside both cones.
bool antipodality_check(const Vec3& c1, const Vec3& n1, const Vec3& c2,
                        const Vec3& n2, double mu);

struct SamplerStats {
  std::int64_t attempts = 0;       // attempts actually evaluated
  std::int64_t ray_misses = 0;
  std::int64_t too_wide = 0;
  std::int64_t not_antipodal = 0;
  std::int64_t collisions = 0;     // contact pairs with no collision-free roll
  std::int64_t accepted = 0;       // grasps returned after truncation
  bool exhausted = false;          // ran out of attempts before n_grasps
};

// Samples collision-free antipodal grasps: pick a surface point, trace a ray
// inside the cone of half-angle alpha/2 around the inward normal, keep the
// pair when the contact line sits in both friction cones and some roll of
// the gripper is collision-free. Attempt k draws from Rng::stream(seed, k),
// so the result is a pure function of (mesh, gripper, cfg) for any thread
// count.
std::vector<GraspPose> sample_antipodal(const TriangleMesh& mesh,
                                        const GripperModel& gripper,
                                        const SamplerConfig& cfg,
                                        int threads = 1,
                                        SamplerStats* stats = nullptr);

}  // namespace bigrasp
