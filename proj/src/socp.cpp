#include "bigrasp/socp.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "bigrasp/errors.hpp"

namespace bigrasp {

ConeProgram assemble(const std::array<ContactFrame, 4>& frames,
                     const ExternalWrench& w_ext, double mu, double f_high) {
  if (mu < 0.0) throw ConfigError("friction coefficient must be non-negative");
  if (f_high <= 0.0) throw ConfigError("f_high must be positive");
  ConeProgram prog;
  prog.g = grasp_matrix(frames).g;
  prog.w_ext = w_ext.w;
  prog.mu = mu;
  prog.f_high = f_high;
  return prog;
}

Vec3 project_friction_cone(const Vec3& f, double mu) {
  const double fn = f.z();
  const double s = std::hypot(f.x(), f.y());
  if (s <= mu * fn) return f;                      // inside
  if (mu * s <= -fn) return Vec3::Zero();          // inside the polar cone
  const double fn_new = (fn + mu * s) / (1.0 + mu * mu);
  if (fn_new <= 0.0) return Vec3::Zero();
  if (s <= 0.0) return Vec3(0.0, 0.0, fn_new);
  const double scale = mu * fn_new / s;
  return Vec3(scale * f.x(), scale * f.y(), fn_new);
}

Vec3 project_ball(const Vec3& f, double radius) {
  const double n = f.norm();
  if (n <= radius) return f;
  return f * (radius / n);
}

namespace {

Vec12 project_balls(const Vec12& v, double radius) {
  Vec12 out;
  for (int i = 0; i < 4; ++i) {
    out.segment<3>(3 * i) = project_ball(v.segment<3>(3 * i), radius);
  }
  return out;
}

Vec12 project_cones(const Vec12& v, double mu) {
  Vec12 out;
  for (int i = 0; i < 4; ++i) {
    out.segment<3>(3 * i) = project_friction_cone(v.segment<3>(3 * i), mu);
  }
  return out;
}

}  // namespace

ConeSolution solve(const ConeProgram& prog, const SolverOptions& opts) {
  if (!prog.g.allFinite() || !prog.w_ext.allFinite()) {
    throw NumericalError("cone program has non-finite entries");
  }
  if (!(prog.f_high > 0.0) || prog.mu < 0.0) {
    throw NumericalError("cone program has invalid mu or f_high");
  }

  using Mat12 = Eigen::Matrix<double, 12, 12>;
  const Mat12 gtg2 = 2.0 * (prog.g.transpose() * prog.g);
  const Vec12 q = -2.0 * (prog.g.transpose() * prog.w_ext);

  double rho = opts.rho;
  Eigen::LDLT<Mat12> chol(gtg2 + 2.0 * rho * Mat12::Identity());

  Vec12 x = Vec12::Zero();
  Vec12 z_ball = Vec12::Zero(), z_cone = Vec12::Zero();
  Vec12 u_ball = Vec12::Zero(), u_cone = Vec12::Zero();

  const double alpha = opts.over_relax;
  double primal = 0.0, dual = 0.0;
  int iter = 0;
  bool converged = false;

  for (iter = 1; iter <= opts.max_iterations; ++iter) {
    x = chol.solve(q + rho * (z_ball - u_ball) + rho * (z_cone - u_cone));

    const Vec12 xh_ball = alpha * x + (1.0 - alpha) * z_ball;
    const Vec12 xh_cone = alpha * x + (1.0 - alpha) * z_cone;

    const Vec12 z_ball_new = project_balls(xh_ball + u_ball, prog.f_high);
    const Vec12 z_cone_new = project_cones(xh_cone + u_cone, prog.mu);

    u_ball += xh_ball - z_ball_new;
    u_cone += xh_cone - z_cone_new;

    primal = std::sqrt((x - z_ball_new).squaredNorm() +
                       (x - z_cone_new).squaredNorm());
    dual = rho * std::sqrt((z_ball_new - z_ball).squaredNorm() +
                           (z_cone_new - z_cone).squaredNorm());
    z_ball = z_ball_new;
    z_cone = z_cone_new;

    if (primal <= opts.tol && dual <= opts.tol) {
      converged = true;
      break;
    }

    // Residual balancing keeps the two residuals within a decade of each
    // other; the scaled duals rescale with rho.
    if (opts.adapt_interval > 0 && iter % opts.adapt_interval == 0) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u_ball *= 0.5;
        u_cone *= 0.5;
        chol.compute(gtg2 + 2.0 * rho * Mat12::Identity());
      } else if (dual > 10.0 * primal) {
        rho *= 0.5;
        u_ball *= 2.0;
        u_cone *= 2.0;
        chol.compute(gtg2 + 2.0 * rho * Mat12::Identity());
      }
    }
  }

  ConeSolution sol;
  // Cone projection first, then the radial ball clamp: scaling a cone point
  // towards the origin stays in the cone, so the result satisfies both
  // constraint families exactly.
  sol.f = project_balls(project_cones(x, prog.mu), prog.f_high);
  sol.loss = (prog.g * sol.f + prog.w_ext).squaredNorm();
  sol.iterations = std::min(iter, opts.max_iterations);
  sol.converged = converged;
  sol.primal_residual = primal;
  sol.dual_residual = dual;
  return sol;
}

WrenchSet WrenchSet::standard(double mass, double g, double char_len,
                              double torque_frac) {
  WrenchSet set;
  const double load = mass * g;
  for (int axis = 0; axis < 3; ++axis) {
    for (const double sign : {1.0, -1.0}) {
      Vec6 w = Vec6::Zero();
      w[axis] = sign * load;
      set.wrenches.push_back(w);
    }
  }
  const double torque = torque_frac * load * char_len;
  for (int axis = 0; axis < 3; ++axis) {
    for (const double sign : {1.0, -1.0}) {
      Vec6 w = Vec6::Zero();
      w[2] = -load;
      w[3 + axis] = sign * torque;
      set.wrenches.push_back(w);
    }
  }
  return set;
}

double perturbation_eval(const std::array<ContactFrame, 4>& frames, double mu,
                         double f_high, const WrenchSet& set,
                         const SolverOptions& opts) {
  if (set.wrenches.empty()) return 0.0;
  ConeProgram prog;
  prog.g = grasp_matrix(frames).g;
  prog.mu = mu;
  prog.f_high = f_high;
  int passed = 0;
  for (const Vec6& w : set.wrenches) {
    prog.w_ext = w;
    if (label(solve(prog, opts))) ++passed;
  }
  return static_cast<double>(passed) / static_cast<double>(set.wrenches.size());
}

}  // namespace bigrasp
