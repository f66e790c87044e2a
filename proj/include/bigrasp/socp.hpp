#pragma once

#include <array>
#include <vector>

#include "bigrasp/types.hpp"
#include "bigrasp/wrench.hpp"

namespace bigrasp {

// A grasp passes when the optimal residual satisfies L <= 1e-5.
inline constexpr double kLossThreshold = 1e-5;

inline constexpr double kDefaultGravity = 9.81;  // m/s^2

// External wrench on the object, expressed in the COM-origin object frame
// (so plain gravity has a zero torque part).
struct ExternalWrench {
  Vec6 w = Vec6::Zero();

  static ExternalWrench gravity(double mass, double g = kDefaultGravity) {
    ExternalWrench out;
    out.w[2] = -mass * g;
    return out;
  }
};

// Force-distribution cone program:
//   minimize   L = || G f + w_ext ||^2
//   subject to ||f_i||_2 <= f_high          (per contact, i = 1..4)
//              ||f_t,i||_2 <= mu * f_n,i    (friction cone, per contact)
// with f in contact-frame coordinates, grouped 3 per contact; within a
// group the first two components are tangential, the third normal.
struct ConeProgram {
  Mat6x12 g = Mat6x12::Zero();
  Vec6 w_ext = Vec6::Zero();
  double mu = 0.5;
  double f_high = 70.0;
};

// mu = 0 is accepted here (the cone degenerates to the normal ray) even
// though the sampler requires mu > 0.
ConeProgram assemble(const std::array<ContactFrame, 4>& frames,
                     const ExternalWrench& w_ext, double mu, double f_high);

struct SolverOptions {
  double rho = 1.0;          // ADMM penalty, adapted by residual balancing
  double over_relax = 1.6;
  double tol = 1e-10;        // primal and dual residual target
  int max_iterations = 10000;
  int adapt_interval = 25;   // iterations between penalty updates
};

struct ConeSolution {
  Vec12 f = Vec12::Zero();   // contact forces, feasible by construction
  double loss = 0.0;         // ||G f + w_ext||^2 recomputed from f
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

// Operator-splitting (consensus ADMM) solve of the cone program: the
// quadratic step is a prefactored 12x12 solve, the two constraint families
// are handled by closed-form projections. Throws on non-finite input;
// hitting the iteration cap flags converged = false instead of throwing.
ConeSolution solve(const ConeProgram& prog, const SolverOptions& opts = {});

// Unconverged solutions never pass.
inline bool label(const ConeSolution& sol) {
  return sol.converged && sol.loss <= kLossThreshold;
}

// Closed-form projections used by the splitting (exposed for tests).
//
// Friction cone K = {(ft, fn): ||ft|| <= mu fn} with s = ||ft||:
//   inside  (s <= mu fn)          -> unchanged
//   polar   (mu s <= -fn)         -> 0
//   else    fn' = (fn + mu s) / (1 + mu^2), ft' = mu fn' ft / s
// Ball of radius r: radial scaling when ||f|| > r.
Vec3 project_friction_cone(const Vec3& f, double mu);
Vec3 project_ball(const Vec3& f, double radius);

// Wrench set for the simulation-free robustness proxy: the load magnitude
// applied along +-x/y/z, plus downward load with +-torque_frac * load *
// char_len torque about each axis (12 wrenches).
struct WrenchSet {
  std::vector<Vec6> wrenches;

  static WrenchSet standard(double mass, double g, double char_len,
                            double torque_frac = 0.2);
};

// Fraction of the wrench set the grasp holds under the loss threshold. The
// set is typically WrenchSet::standard built from the object's mass.
double perturbation_eval(const std::array<ContactFrame, 4>& frames, double mu,
                         double f_high, const WrenchSet& set,
                         const SolverOptions& opts = {});

}  // namespace bigrasp
