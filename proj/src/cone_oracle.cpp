#include "bigrasp/cone_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "bigrasp/errors.hpp"

namespace bigrasp {

namespace {

// Minimize ||V a + w||^2 over the unit simplex in a. Equality-constrained
// least squares on the working support, with Wolfe-style minor cycles that
// walk back to the feasible region and drop zeroed coordinates.
void solve_simplex_ls(const std::vector<Vec6>& verts, const Vec6& w,
                      std::vector<double>& alpha) {
  const int n = static_cast<int>(verts.size());
  if (n == 1) {
    alpha.assign(1, 1.0);
    return;
  }

  for (int cycle = 0; cycle < 16 * n; ++cycle) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (alpha[i] > 0.0) support.push_back(i);
    }
    const int k = static_cast<int>(support.size());

    // KKT system of min ||V a + w||^2 s.t. sum(a) = 1 on the support.
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        kkt(r, c) = 2.0 * verts[support[r]].dot(verts[support[c]]);
      }
      kkt(r, k) = 1.0;
      kkt(k, r) = 1.0;
      rhs(r) = -2.0 * verts[support[r]].dot(w);
    }
    rhs(k) = 1.0;
    // Tiny Tikhonov term keeps duplicated vertices from making this singular.
    for (int r = 0; r < k; ++r) kkt(r, r) += 1e-13;
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);

    bool feasible = true;
    for (int r = 0; r < k; ++r) {
      if (sol(r) < -1e-14) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      std::vector<double> next(n, 0.0);
      for (int r = 0; r < k; ++r) next[support[r]] = std::max(0.0, sol(r));
      alpha = std::move(next);
      return;
    }

    // Step from the current point towards the affine solution until the
    // first coordinate hits zero, then drop it and re-solve.
    double theta = 1.0;
    for (int r = 0; r < k; ++r) {
      const double cur = alpha[support[r]];
      const double tgt = sol(r);
      if (tgt < cur) {
        const double denom = cur - tgt;
        if (denom > 1e-300) theta = std::min(theta, cur / denom);
      }
    }
    std::vector<double> next(n, 0.0);
    double total = 0.0;
    for (int r = 0; r < k; ++r) {
      const int i = support[r];
      double v = alpha[i] + theta * (sol(r) - alpha[i]);
      if (v < 1e-14) v = 0.0;
      next[i] = v;
      total += v;
    }
    if (total <= 0.0) {
      next[support[0]] = 1.0;
      total = 1.0;
    }
    for (double& v : next) v /= total;
    alpha = std::move(next);
  }
}

}  // namespace

OracleResult oracle_check(const ConeProgram& prog, int cone_edges) {
  if (cone_edges < 8) throw ConfigError("oracle_check needs cone_edges >= 8");
  if (!prog.g.allFinite() || !prog.w_ext.allFinite()) {
    throw NumericalError("cone program has non-finite entries");
  }

  // Unit rays on each friction cone boundary, mapped to wrench space. The
  // reachable set of contact i is f_high * conv({0} u {rays}), and the full
  // reachable-wrench set is the Minkowski sum over the four contacts.
  const double denom = std::sqrt(1.0 + prog.mu * prog.mu);
  std::vector<std::vector<Vec6>> rays(4);
  for (int i = 0; i < 4; ++i) {
    rays[i].reserve(cone_edges);
    const Eigen::Matrix<double, 6, 3> block = prog.g.middleCols<3>(3 * i);
    for (int j = 0; j < cone_edges; ++j) {
      const double th = 2.0 * M_PI * j / cone_edges;
      const Vec3 edge(prog.mu * std::cos(th) / denom,
                      prog.mu * std::sin(th) / denom, 1.0 / denom);
      rays[i].push_back(block * edge);
    }
  }

  auto lmo = [&](const Vec6& grad) {
    Vec6 s = Vec6::Zero();
    for (int i = 0; i < 4; ++i) {
      double best = 0.0;  // the zero force is always available
      int best_j = -1;
      for (int j = 0; j < cone_edges; ++j) {
        const double val = grad.dot(rays[i][j]);
        if (val < best) {
          best = val;
          best_j = j;
        }
      }
      if (best_j >= 0) s += prog.f_high * rays[i][best_j];
    }
    return s;
  };

  std::vector<Vec6> verts = {Vec6::Zero()};
  std::vector<double> alpha = {1.0};
  Vec6 y = Vec6::Zero();

  const double scale = std::max(1.0, prog.w_ext.squaredNorm());
  const double gap_tol = 1e-11 * scale;
  OracleResult out;

  constexpr int kMaxIterations = 2000;
  int iter = 0;
  double gap = 0.0;
  for (iter = 1; iter <= kMaxIterations; ++iter) {
    const Vec6 grad = 2.0 * (y + prog.w_ext);
    const Vec6 s = lmo(grad);
    gap = grad.dot(y - s);
    if (gap <= gap_tol) break;

    bool duplicate = false;
    for (const Vec6& v : verts) {
      if ((v - s).squaredNorm() <= 1e-24 * scale) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      verts.push_back(s);
      alpha.push_back(0.0);
    }

    solve_simplex_ls(verts, prog.w_ext, alpha);

    // compact the active set
    std::vector<Vec6> kept_v;
    std::vector<double> kept_a;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (alpha[i] > 0.0 || i == 0) {  // always keep the origin vertex
        kept_v.push_back(verts[i]);
        kept_a.push_back(alpha[i]);
      }
    }
    verts = std::move(kept_v);
    alpha = std::move(kept_a);

    y = Vec6::Zero();
    for (std::size_t i = 0; i < verts.size(); ++i) y += alpha[i] * verts[i];
  }

  out.loss_bound = (y + prog.w_ext).squaredNorm();
  out.gap = gap;
  out.certified = gap <= gap_tol;
  out.iterations = iter;
  out.feasible_to_threshold = out.loss_bound <= kLossThreshold;
  return out;
}

}  // namespace bigrasp
