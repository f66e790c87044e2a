#include "bigrasp/gripper.hpp"

#include <cmath>

#include "bigrasp/errors.hpp"

namespace bigrasp {

void GripperModel::validate() const {
  if (max_opening <= 0 || finger_length <= 0 || finger_thickness <= 0 ||
      palm_depth <= 0 || f_high <= 0) {
    throw ConfigError("gripper dimensions and f_high must all be positive");
  }
  if (finger_thickness <= kContactTolerance) {
    throw ConfigError("finger_thickness must exceed the contact tolerance");
  }
}

GraspPose pose_from_contacts(const Vec3& c1, const Vec3& c2, double roll,
                             double standoff, const GripperModel& gripper) {
  const Vec3 span = c2 - c1;
  const double width = span.norm();
  if (width < 1e-9) throw ConfigError("grasp contacts coincide");
  if (width > gripper.max_opening) {
    throw ConfigError("grasp width " + std::to_string(width) +
                      " exceeds gripper opening " +
                      std::to_string(gripper.max_opening));
  }

  const Vec3 closing = span / width;
  Vec3 t1, t2;
  orthonormal_basis(closing, t1, t2);
  const Vec3 approach = std::cos(roll) * t1 + std::sin(roll) * t2;
  const Vec3 lateral = approach.cross(closing);

  GraspPose pose;
  pose.transform.linear().col(0) = closing;
  pose.transform.linear().col(1) = lateral;
  pose.transform.linear().col(2) = approach;
  pose.transform.translation() = 0.5 * (c1 + c2) - standoff * approach;
  pose.contact_1 = c1;
  pose.contact_2 = c2;
  pose.width = width;
  return pose;
}

std::array<OrientedBox, 3> gripper_boxes(const GraspPose& pose,
                                         const GripperModel& gripper) {
  const Mat3 rot = pose.transform.linear();
  const Vec3 mid = pose.midpoint();
  const Vec3 closing = rot.col(0);
  const Vec3 approach = rot.col(2);

  const double w2 = pose.width / 2.0;
  const double t = gripper.finger_thickness;
  const double len = gripper.finger_length;

  // Fingertip plane holds the contacts; fingers extend back along -approach.
  // Inner faces sit at +-(w/2 + tolerance) so sampled contacts do not
  // register as penetration.
  const double finger_mid = w2 + kContactTolerance + (t - kContactTolerance) / 2.0;
  const Vec3 finger_half((t - kContactTolerance) / 2.0, t / 2.0, len / 2.0);

  OrientedBox finger_a{mid - finger_mid * closing - (len / 2.0) * approach, rot,
                       finger_half};
  OrientedBox finger_b{mid + finger_mid * closing - (len / 2.0) * approach, rot,
                       finger_half};
  OrientedBox palm{mid - (len + gripper.palm_depth / 2.0) * approach, rot,
                   Vec3(w2 + kContactTolerance + t, t / 2.0,
                        gripper.palm_depth / 2.0)};
  return {finger_a, finger_b, palm};
}

namespace {

template <class MeshBoxTest>
bool collision_free_impl(const GraspPose& pose, const GripperModel& gripper,
                         const TriangleMesh& mesh, MeshBoxTest&& intersects) {
  const auto boxes = gripper_boxes(pose, gripper);
  for (const OrientedBox& box : boxes) {
    if (intersects(mesh, box)) return false;
  }
  // No surface crossing: either fully outside (fine), a box swallowed by the
  // mesh, or the mesh swallowed by a box.
  for (const OrientedBox& box : boxes) {
    if (mesh.contains(box.center)) return false;
  }
  const Vec3 probe = mesh.vertices().front();
  for (const OrientedBox& box : boxes) {
    if (box.contains(probe)) return false;
  }
  return true;
}

}  // namespace

bool collision_free(const GraspPose& pose, const GripperModel& gripper,
                    const TriangleMesh& mesh) {
  return collision_free_impl(pose, gripper, mesh,
                             [](const TriangleMesh& m, const OrientedBox& b) {
                               return mesh_intersects_box(m, b);
                             });
}

bool collision_free_bruteforce(const GraspPose& pose, const GripperModel& gripper,
                               const TriangleMesh& mesh) {
  return collision_free_impl(pose, gripper, mesh,
                             [](const TriangleMesh& m, const OrientedBox& b) {
                               return mesh_intersects_box_bruteforce(m, b);
                             });
}

}  // namespace bigrasp
