// Copyright 2026 The mclab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Nuclear-norm completion: minimize ||X||_* subject to P_Omega(X) = P_Omega(M).
//
// Default method (ADMM on the split X = Y, Y in the affine feasible set):
//
//   X^t       = shrink(P_Omega^perp(X^{t-1}) + B - tau L^{t-1}, tau)
//   L^t       = L^{t-1} + P_Omega(X^t - M) / tau
//
// with B = P_Omega(M) and tau = 0.05 ||B|| / p. The multiplier L lives on
// Omega. This converges to a minimizer of the program itself.
//
// Alternative (singular value thresholding, dual ascent):
//
//   X^t       = shrink(Y^{t-1}, tau)
//   Y^t       = Y^{t-1} + step * P_Omega(M - X^t)
//
// with tau = 5 n mean|M_ij| over Omega and step = min(1.2 / p, 1.9). Its
// fixed point minimizes tau ||X||_* + ||X||_F^2 / 2 on the feasible set,
// which differs from the nuclear-norm minimizer unless tau is large.

#ifndef MCLAB_SOLVER_HPP_
#define MCLAB_SOLVER_HPP_

#include "mclab/core.hpp"
#include "mclab/sampling.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace mclab {

enum class SolverMethod { Admm, Svt };

inline const char* to_string(SolverMethod m) { return m == SolverMethod::Admm ? "admm" : "svt"; }

inline SolverMethod parse_solver_method(const std::string& s) {
  if (s == "admm") return SolverMethod::Admm;
  if (s == "svt") return SolverMethod::Svt;
  throw InvalidParameter("unknown solver '" + s + "' (expected admm or svt)");
}

struct SolverParams {
  SolverMethod method = SolverMethod::Admm;
  double tau = 0;          // 0: method default (see top of file)
  double step = 0;         // svt only; 0: min(1.2 / p, 1.9)
  double tol_feas = 1e-7;  // ||P_Omega(X - M)||_F at convergence
  double tol_obj = 1e-7;   // relative change of ||X||_* between iterations
  int max_iter = 3000;
  Index rank_cap = 0;      // 0: no truncation

  static SolverParams with_rank_hint(Index n, Index r) {
    SolverParams p;
    p.rank_cap = std::min(n, 4 * r + 10);
    return p;
  }
};

struct SolveResult {
  Mat Xhat;
  int iters = 0;
  double feas_resid = 0;
  double nuclear_value = 0;
  bool converged = false;
  double tau = 0;
  double step = 0;
};

// Proximal map of tau ||.||_*: U diag(max(S - tau, 0)) V^T. A positive
// rank_cap keeps at most that many singular triplets.
//
// The triplets above tau come from the eigendecomposition of X^T X, which
// is several times cheaper than a full SVD and loses accuracy only for
// singular values far below the largest. If any kept value falls below
// 1e-4 sigma_1 the routine recomputes with a bidiagonal SVD.
inline Mat shrink(const Mat& x, double tau, Index rank_cap = 0, double* nuclear = nullptr) {
  require(tau >= 0, "shrink: tau must be nonnegative");
  const bool wide = x.cols() > x.rows();
  const Mat g = wide ? Mat(x * x.transpose()) : Mat(x.transpose() * x);
  Eigen::SelfAdjointEigenSolver<Mat> eig(g);
  const Vec ev = eig.eigenvalues().reverse();
  const double s1 = std::sqrt(std::max(ev(0), 0.0));
  Index keep = 0;
  while (keep < ev.size() && ev(keep) > 0 && std::sqrt(ev(keep)) > tau) ++keep;
  if (rank_cap > 0) keep = std::min(keep, rank_cap);
  if (keep == 0) {
    if (nuclear) *nuclear = 0;
    return Mat::Zero(x.rows(), x.cols());
  }
  if (std::sqrt(ev(keep - 1)) < 1e-4 * s1) {
    const SvdFactors f = svd(x);
    const Vec s = (f.S.head(keep).array() - tau).matrix();
    if (nuclear) *nuclear = s.sum();
    return f.U.leftCols(keep) * s.asDiagonal() * f.V.leftCols(keep).transpose();
  }
  const Mat w = eig.eigenvectors().rowwise().reverse().leftCols(keep);
  const Vec sv = ev.head(keep).cwiseSqrt();
  const Vec shrunk = (sv.array() - tau).matrix();
  if (nuclear) *nuclear = shrunk.sum();
  // X = U S W^T (or W S V^T when wide), so U = X W / S.
  const Vec scale = shrunk.cwiseQuotient(sv);
  if (wide) return w * scale.asDiagonal() * (w.transpose() * x);
  return (x * w) * scale.asDiagonal() * w.transpose();
}

namespace detail {

inline bool stalled(double prev, double cur, double tol) {
  return prev >= 0 && std::abs(cur - prev) <= tol * std::max(cur, 1e-300);
}

}  // namespace detail

inline SolveResult complete(const SampleSet& s, const Mat& observed, const SolverParams& params) {
  using detail::stalled;
  check_dims(observed, s, "complete");
  require(params.max_iter >= 1, "complete: max_iter must be >= 1");
  require(params.tol_feas > 0 && params.tol_obj > 0, "complete: tolerances must be positive");
  const Mat b = project_omega(observed, s);
  SolveResult res;
  if (s.empty() || b.isZero(0.0)) {
    res.Xhat = Mat::Zero(observed.rows(), observed.cols());
    res.feas_resid = 0;
    res.converged = true;
    return res;
  }
  if (is_full(s)) {
    // The feasible set is the single point M.
    res.Xhat = b;
    res.nuclear_value = nuclear_norm(b);
    res.converged = true;
    return res;
  }
  const double frac = double(s.size()) / (double(s.n1()) * double(s.n2()));
  if (params.method == SolverMethod::Admm) {
    res.tau = params.tau > 0 ? params.tau : 0.05 * op_norm(b) / frac;
    const Mat off = Mat::Ones(b.rows(), b.cols()) - s.mask();
    Mat x = Mat::Zero(b.rows(), b.cols());
    Mat mult = Mat::Zero(b.rows(), b.cols());
    double prev_nuc = -1;
    for (int it = 1; it <= params.max_iter; ++it) {
      double nuc = 0;
      x = shrink(x.cwiseProduct(off) + b - res.tau * mult, res.tau, params.rank_cap, &nuc);
      const Mat resid = project_omega(x, s) - b;
      const double feas = resid.norm();
      res.iters = it;
      res.feas_resid = feas;
      res.nuclear_value = nuc;
      if (!std::isfinite(feas)) break;
      if (feas <= params.tol_feas && stalled(prev_nuc, nuc, params.tol_obj)) {
        res.converged = true;
        break;
      }
      prev_nuc = nuc;
      mult += resid / res.tau;
    }
    res.Xhat = std::move(x);
    return res;
  }

  const double n = double(std::max(s.n1(), s.n2()));
  double mean_abs = 0;
  for (const auto& e : s.omega()) mean_abs += std::abs(b(e.row, e.col));
  mean_abs /= double(s.size());
  res.tau = params.tau > 0 ? params.tau : 5.0 * n * mean_abs;
  // Steps of 2 or more make the dual ascent oscillate.
  res.step = params.step > 0 ? params.step : std::min(1.2 / frac, 1.9);

  // Warm start: skip the iterations in which shrink would return zero.
  const double k0 = std::ceil(res.tau / (res.step * op_norm(b)));
  Mat y = k0 * res.step * b;
  double prev_nuc = -1;
  Mat x;
  for (int it = 1; it <= params.max_iter; ++it) {
    double nuc = 0;
    x = shrink(y, res.tau, params.rank_cap, &nuc);
    Mat resid = b - project_omega(x, s);
    const double feas = resid.norm();
    res.iters = it;
    res.feas_resid = feas;
    res.nuclear_value = nuc;
    if (!std::isfinite(feas)) break;
    if (feas <= params.tol_feas && stalled(prev_nuc, nuc, params.tol_obj)) {
      res.converged = true;
      break;
    }
    prev_nuc = nuc;
    y += res.step * resid;
  }
  res.Xhat = std::move(x);
  return res;
}

struct RecoveryDecision {
  bool recovered = false;
  double relerr = 0;
};

inline constexpr double kRecoveryTol = 1e-4;

// relerr = ||Xhat - M||_F / max(1, ||M||_F)
inline RecoveryDecision recovered(const Mat& m, const Mat& xhat, double tol = kRecoveryTol) {
  if (m.rows() != xhat.rows() || m.cols() != xhat.cols())
    throw InvalidParameter("recovered: dimension mismatch");
  const double rel = (xhat - m).norm() / std::max(1.0, m.norm());
  return {rel <= tol, rel};
}

}  // namespace mclab

#endif  // MCLAB_SOLVER_HPP_
