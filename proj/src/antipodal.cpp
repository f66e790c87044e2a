#include "bigrasp/antipodal.hpp"

#include <cmath>
#include <optional>

#include "bigrasp/errors.hpp"
#include "bigrasp/parallel.hpp"
#include "bigrasp/rng.hpp"

namespace bigrasp {

double SamplerConfig::cone_angle() const { return std::atan(mu); }

double SamplerConfig::ray_cone_gamma() const { return std::tan(cone_angle() / 2.0); }

void SamplerConfig::validate() const {
  if (mu <= 0.0) throw ConfigError("sampler mu must be positive");
  if (n_grasps < 0) throw ConfigError("sampler n_grasps must be non-negative");
  if (rolls_per_contact < 1) throw ConfigError("rolls_per_contact must be >= 1");
  if (standoff < 0.0) throw ConfigError("standoff must be non-negative");
}

bool antipodality_check(const Vec3& c1, const Vec3& n1, const Vec3& c2,
                        const Vec3& n2, double mu) {
  const Vec3 span = c2 - c1;
  const double len = span.norm();
  if (len < 1e-12) return false;
  const Vec3 u = span / len;
  const double cos_alpha = 1.0 / std::sqrt(1.0 + mu * mu);
  return u.dot(n1) >= cos_alpha && (-u).dot(n2) >= cos_alpha;
}

namespace {

enum class AttemptOutcome { kRayMiss, kTooWide, kNotAntipodal, kCollision, kAccepted };

struct AttemptResult {
  AttemptOutcome outcome = AttemptOutcome::kRayMiss;
  std::optional<GraspPose> pose;
};

AttemptResult run_attempt(const TriangleMesh& mesh, const GripperModel& gripper,
                          const SamplerConfig& cfg, std::uint64_t attempt) {
  AttemptResult result;
  Rng rng = Rng::stream(cfg.rng_seed, attempt);

  const SurfaceSample first = mesh.sample_surface(rng);
  const Vec3 inward_1 = -first.normal;

  // The ray cone half-angle alpha/2 keeps the traced direction within the
  // gamma = tan(alpha/2) band around the inward normal.
  const Vec3 dir = rng.in_cone(inward_1, cfg.cone_angle() / 2.0);
  const auto hit = mesh.raycast(first.point, dir);
  if (!hit) return result;

  const Vec3 c1 = first.point;
  const Vec3 c2 = hit->point;
  const Vec3 inward_2 = -hit->normal;
  const double width = (c2 - c1).norm();
  if (width < 1e-9 || width > gripper.max_opening) {
    result.outcome = AttemptOutcome::kTooWide;
    return result;
  }
  if (!antipodality_check(c1, inward_1, c2, inward_2, cfg.mu)) {
    result.outcome = AttemptOutcome::kNotAntipodal;
    return result;
  }

  const double base_roll = rng.uniform(0.0, 2.0 * M_PI);
  for (int k = 0; k < cfg.rolls_per_contact; ++k) {
    const double roll =
        std::fmod(base_roll + 2.0 * M_PI * k / cfg.rolls_per_contact, 2.0 * M_PI);
    GraspPose pose = pose_from_contacts(c1, c2, roll, cfg.standoff, gripper);
    if (collision_free(pose, gripper, mesh)) {
      pose.normal_1 = inward_1;
      pose.normal_2 = inward_2;
      result.outcome = AttemptOutcome::kAccepted;
      result.pose = std::move(pose);
      return result;
    }
  }
  result.outcome = AttemptOutcome::kCollision;
  return result;
}

}  // namespace

std::vector<GraspPose> sample_antipodal(const TriangleMesh& mesh,
                                        const GripperModel& gripper,
                                        const SamplerConfig& cfg, int threads,
                                        SamplerStats* stats) {
  cfg.validate();
  gripper.validate();

  std::vector<GraspPose> grasps;
  SamplerStats local;
  const std::int64_t attempt_cap = cfg.effective_max_attempts();
  // Attempts run in fixed-size blocks; block boundaries depend only on the
  // config, so parallel runs visit exactly the same attempt set.
  const std::int64_t block =
      std::max<std::int64_t>(512, 2 * static_cast<std::int64_t>(cfg.n_grasps));

  std::int64_t next_attempt = 0;
  while (static_cast<int>(grasps.size()) < cfg.n_grasps &&
         next_attempt < attempt_cap) {
    const std::int64_t count = std::min(block, attempt_cap - next_attempt);
    std::vector<AttemptResult> results(count);
    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
      results[i] = run_attempt(mesh, gripper, cfg,
                               static_cast<std::uint64_t>(next_attempt + i));
    });
    for (auto& r : results) {
      ++local.attempts;
      switch (r.outcome) {
        case AttemptOutcome::kRayMiss: ++local.ray_misses; break;
        case AttemptOutcome::kTooWide: ++local.too_wide; break;
        case AttemptOutcome::kNotAntipodal: ++local.not_antipodal; break;
        case AttemptOutcome::kCollision: ++local.collisions; break;
        case AttemptOutcome::kAccepted:
          if (static_cast<int>(grasps.size()) < cfg.n_grasps) {
            grasps.push_back(std::move(*r.pose));
          }
          break;
      }
    }
    next_attempt += count;
  }

  local.accepted = static_cast<std::int64_t>(grasps.size());
  local.exhausted = static_cast<int>(grasps.size()) < cfg.n_grasps;
  if (stats != nullptr) *stats = local;
  return grasps;
}

}  // namespace bigrasp
