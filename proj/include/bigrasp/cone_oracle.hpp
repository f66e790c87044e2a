#pragma once

#include "bigrasp/socp.hpp"

namespace bigrasp {

struct OracleResult {
  bool feasible_to_threshold = false;  // min loss over the inner model <= 1e-5
  double loss_bound = 0.0;  // minimal loss over the discretized cones
  double gap = 0.0;         // Frank-Wolfe duality gap at termination
  bool certified = false;   // gap below the requested tolerance
  int iterations = 0;
};

// Independent verification route for the cone program: each friction cone is
// replaced by the polyhedral cone spanned by `cone_edges` rays on its
// boundary and the force cap by a weight cap, an inner approximation on both
// counts. The reachable-wrench polytope is then searched with a
// fully-corrective Frank-Wolfe / min-norm-point scheme (active-set
// corrections over the current vertex set), which shares nothing with the
// ADMM path in socp.cpp.
//
// Because the model is inner, loss_bound >= the true optimum, so
// feasible_to_threshold implies the true program passes the threshold too.
OracleResult oracle_check(const ConeProgram& prog, int cone_edges = 64);

}  // namespace bigrasp
