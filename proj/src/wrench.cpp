#include "bigrasp/wrench.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace bigrasp {

ContactFrame contact_frame(const Vec3& point, const Vec3& inward_normal) {
  ContactFrame frame;
  frame.p = point;
  Vec3 t1, t2;
  orthonormal_basis(inward_normal, t1, t2);
  frame.rot.col(0) = t1;
  frame.rot.col(1) = t2;
  frame.rot.col(2) = inward_normal;
  return frame;
}

GraspMatrix grasp_matrix(const std::array<ContactFrame, 4>& frames) {
  GraspMatrix out;
  for (int i = 0; i < 4; ++i) {
    out.g.block<3, 3>(0, 3 * i) = frames[i].rot;
    out.g.block<3, 3>(3, 3 * i) = skew(frames[i].p) * frames[i].rot;
  }
  return out;
}

bool rank_test(const GraspMatrix& g, double tol_ratio) {
  const Eigen::JacobiSVD<Mat6x12> svd(g.g);
  const auto& sigma = svd.singularValues();
  const double s_max = sigma(0);
  if (s_max <= 0.0) return false;
  return sigma(sigma.size() - 1) / s_max > tol_ratio;
}

double grasp_quality(const GraspMatrix& g) {
  const Eigen::Matrix<double, 6, 6> ggt = g.g * g.g.transpose();
  const double det = ggt.determinant();
  if (det <= 0.0) return 0.0;  // round-off below 1e-12 clamps to zero
  return std::sqrt(det);
}

}  // namespace bigrasp
