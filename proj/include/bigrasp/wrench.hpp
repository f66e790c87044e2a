#pragma once

#include <array>

#include "bigrasp/types.hpp"

namespace bigrasp {

// Contact frame in the object frame: column 3 of `rot` is the inward contact
// normal, columns 1-2 a deterministic tangent basis. Friction cones are
// symmetric about the normal, so any smooth tangent choice gives the same
// cone; the fixed choice makes losses reproducible run to run.
struct ContactFrame {
  Vec3 p = Vec3::Zero();
  Mat3 rot = Mat3::Identity();
};

ContactFrame contact_frame(const Vec3& point, const Vec3& inward_normal);

// 6x12 grasp map under point-contact-with-friction: per-contact block
// [R; [p]x R] takes contact-frame forces to object-frame wrenches. Contacts
// are ordered (left-1, left-2, right-1, right-2).
struct GraspMatrix {
  Mat6x12 g = Mat6x12::Zero();

  Mat6x3 block(int contact) const { return g.middleCols<3>(3 * contact); }
};

GraspMatrix grasp_matrix(const std::array<ContactFrame, 4>& frames);

// Full-rank screen on the singular value ratio of G.
bool rank_test(const GraspMatrix& g, double tol_ratio = 1e-8);

// Q(G) = sqrt(det(G G^T)), the grasp wrench space volume; equals the product
// of the singular values of G and is zero at singular configurations.
double grasp_quality(const GraspMatrix& g);

}  // namespace bigrasp
