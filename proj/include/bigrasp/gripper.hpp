#pragma once

#include <array>

#include "bigrasp/collide.hpp"
#include "bigrasp/mesh.hpp"
#include "bigrasp/types.hpp"

namespace bigrasp {

// Parallel-jaw gripper dimensions plus the per-contact force cap used by the
// force-closure program. Defaults are Franka-like and come from the config.
struct GripperModel {
  double max_opening = 0.08;      // m
  double finger_length = 0.05;    // m
  double finger_thickness = 0.01; // m
  double palm_depth = 0.02;       // m
  double f_high = 70.0;           // N

  void validate() const;
};

// Fingertips may touch the surface; anything deeper counts as penetration.
inline constexpr double kContactTolerance = 1e-4;

// One parallel-jaw grasp in the object frame.
//
// Frame convention (the pose's rotation columns):
//   col 0  closing axis, from contact_1 towards contact_2
//   col 1  lateral axis (col2 x col0)
//   col 2  approach axis; the gripper approaches the object along it
// The origin sits at the contact midpoint, backed off by `standoff` against
// the approach axis. Contacts lie in the fingertip plane (local z = 0).
struct GraspPose {
  Iso3 transform = Iso3::Identity();
  Vec3 contact_1 = Vec3::Zero();
  Vec3 contact_2 = Vec3::Zero();
  Vec3 normal_1 = Vec3::Zero();  // inward unit normals
  Vec3 normal_2 = Vec3::Zero();
  double width = 0.0;

  Vec3 midpoint() const { return 0.5 * (contact_1 + contact_2); }
  Vec3 closing_axis() const { return transform.linear().col(0); }
  Vec3 approach_axis() const { return transform.linear().col(2); }
};

// Builds the pose for a contact pair. `roll` spins the approach axis about
// the closing axis; roll = 0 picks the deterministic tangent reference of
// orthonormal_basis(). Throws when the contacts are degenerate or wider than
// the gripper opening. Inward normals are left zero for the caller to fill.
GraspPose pose_from_contacts(const Vec3& c1, const Vec3& c2, double roll,
                             double standoff, const GripperModel& gripper);

// Collision proxy: two finger boxes and one palm box at this grasp's closing
// width. Finger inner faces are pulled back by the contact tolerance.
std::array<OrientedBox, 3> gripper_boxes(const GraspPose& pose,
                                         const GripperModel& gripper);

// True iff the gripper placed at `pose` is collision-free against the mesh:
// no triangle intersects a gripper box, no box sits inside the mesh, and the
// mesh does not sit inside a box.
bool collision_free(const GraspPose& pose, const GripperModel& gripper,
                    const TriangleMesh& mesh);
// Exhaustive-scan oracle for the BVH-accelerated decision above.
bool collision_free_bruteforce(const GraspPose& pose, const GripperModel& gripper,
                               const TriangleMesh& mesh);

}  // namespace bigrasp
