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

// Dual certificates for nuclear-norm completion.
//
// M is the unique minimizer of ||X||_* subject to P_Omega(X) = P_Omega(M)
// whenever P_Omega restricted to T is injective and some Y obeys
//
//   P_Omega(Y) = Y,   P_T(Y) = E,   ||P_Tperp(Y)|| < 1.
//
// The candidate built here is the minimum-Frobenius one,
//
//   Y = P_Omega P_T (P_T P_Omega P_T)^{-1} E,
//
// computed either from the Neumann series
//
//   p (P_T P_Omega P_T)^{-1} = sum_k (-1)^k (P_T Q_Omega P_T)^k   on T,
//
// which converges when a = p^{-1} ||P_T P_Omega P_T - p P_T|| < 1, or by
// conjugate gradients on the positive-definite restriction to T.
//
// The header also carries the diagnostics around the series: term norms of
// (Q_Omega P_T)^k Q_Omega(E) and (Q_Omega Q_T)^k Q_Omega(E), the
// coefficient recurrences that rewrite the first string in terms of the
// second, and Monte-Carlo trace moments.

#ifndef MCLAB_CERTIFICATE_HPP_
#define MCLAB_CERTIFICATE_HPP_

#include "mclab/core.hpp"
#include "mclab/geometry.hpp"
#include "mclab/sampling.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace mclab {

class CertificateDivergence : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class InjectivityFailure : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class SolveNonConvergence : public NumericFailure {
 public:
  SolveNonConvergence(const std::string& what, double residual)
      : NumericFailure(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// sqrt(sigma0) = 1/24 makes 5 sqrt(sigma) / (1 - 4 sqrt(sigma)) equal 1/4,
// the early-series budget. Diagnostic only.
inline constexpr double kSigma0 = 1.0 / 576.0;

// P_T P_Omega P_T applied in factor form.
inline Mat apply_gram(const TangentSpace& t, const SampleSet& s, const Mat& x) {
  return apply_PT_factored(t, project_omega(apply_PT_factored(t, x), s));
}

// ---------------------------------------------------------------------------
// Deviation statistic a = p^{-1} sigma_1(P_T P_Omega P_T - p P_T)
// ---------------------------------------------------------------------------

struct DeviationOptions {
  double tol = 1e-9;
  int max_iter = 50000;
  int restarts = 2;
  std::uint64_t seed = 0xa57a7;
};

inline double deviation_stat(const TangentSpace& t, const SampleSet& s,
                             const DeviationOptions& opt = {}) {
  require(!s.empty(), "deviation_stat: empty sample set");
  check_dims(t.E(), s, "deviation_stat");
  if (is_full(s)) return 0.0;
  const double p = s.p();
  const auto op = [&](const Mat& x) -> Mat {
    const Mat tx = apply_PT_factored(t, x);
    return apply_PT_factored(t, project_omega(tx, s)) - p * tx;
  };
  double best = 0.0;
  for (int rs = 0; rs < opt.restarts; ++rs) {
    Rng rng(opt.seed, rs);
    Mat x = apply_PT_factored(t, rng.gaussian(t.n(), t.n()));
    x /= x.norm();
    double est = 0.0;
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
      Mat y = op(x);
      const double ny = y.norm();  // nondecreasing for symmetric operators
      if (ny == 0.0) {
        converged = true;
        break;
      }
      x = y / ny;
      if (it > 0 && ny - est <= opt.tol * ny) {
        est = ny;
        converged = true;
        break;
      }
      est = ny;
    }
    if (!converged) {
      Vec last = Eigen::Map<const Vec>(x.data(), x.size());
      throw NumericFailure("deviation_stat: power iteration did not converge", last);
    }
    best = std::max(best, est);
  }
  return best / p;
}

// ---------------------------------------------------------------------------
// Lanczos on a symmetric operator restricted to T (full reorthogonalization).
// Returns the extreme Ritz values after at most `steps` steps.
// ---------------------------------------------------------------------------

struct RitzBounds {
  double min = 0;
  double max = 0;
  int steps = 0;
};

template <class Op>
RitzBounds lanczos_on_tangent(const TangentSpace& t, Op&& op, int steps, std::uint64_t seed) {
  const Index n = t.n();
  const int k_max = static_cast<int>(std::min<Index>(steps, t.dim()));
  std::vector<Mat> basis;
  basis.reserve(k_max);
  std::vector<double> alpha, beta;
  Rng rng(seed, 17);
  Mat q = apply_PT_factored(t, rng.gaussian(n, n));
  q /= q.norm();
  double scale = 0.0;
  for (int k = 0; k < k_max; ++k) {
    basis.push_back(q);
    Mat w = op(q);
    const double a = frob_inner(q, w);
    alpha.push_back(a);
    // Two passes of Gram-Schmidt keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= frob_inner(b, w) * b;
    // Rounding leaves a component off T; normalizing a small residual would
    // amplify it into a spurious zero Ritz value.
    w = apply_PT_factored(t, w);
    const double bnorm = w.norm();
    scale = std::max(scale, std::abs(a));
    if (k + 1 == k_max || bnorm <= 1e-10 * scale) break;
    beta.push_back(bnorm);
    q = w / bnorm;
  }
  const Index m = static_cast<Index>(alpha.size());
  Mat tri = Mat::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    tri(i, i) = alpha[i];
    if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(tri, Eigen::EigenvaluesOnly);
  return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff(), static_cast<int>(m)};
}

inline constexpr int kInjectivitySteps = 200;

// Smallest Ritz value of P_T P_Omega P_T on T.
inline double gram_min_eigenvalue(const TangentSpace& t, const SampleSet& s,
                                  int steps = kInjectivitySteps) {
  return lanczos_on_tangent(t, [&](const Mat& x) { return apply_gram(t, s, x); }, steps, 0x1a2c)
      .min;
}

// Injective when a < 1 and the smallest Ritz value clears p (1 - a) / 2.
inline bool injectivity_holds(const TangentSpace& t, const SampleSet& s, double a_stat,
                              double* lambda_min = nullptr) {
  const double lam = gram_min_eigenvalue(t, s);
  if (lambda_min) *lambda_min = lam;
  return a_stat < 1.0 && lam >= s.p() * (1.0 - a_stat) / 2.0;
}

// ---------------------------------------------------------------------------
// Certificate construction
// ---------------------------------------------------------------------------

enum class CertificateMethod { Neumann, IterativeSolve };

struct CertificateReport {
  Mat Y;
  double resid_T = 0;      // ||P_T(Y) - E||_F
  bool supp_ok = false;    // Y vanishes off Omega exactly
  double ptperp_norm = 0;  // spectral norm of P_Tperp(Y)
  double a_stat = 0;
  bool injective = false;
  double lambda_min = 0;   // smallest Ritz value of P_T P_Omega P_T on T
  CertificateMethod method = CertificateMethod::Neumann;
  int k_max = 0;           // Neumann: order cap; solve: iteration cap
  double tol = 0;
  int terms = 0;           // Neumann terms summed / CG iterations
  bool truncated = false;  // k_max hit before the term norm fell below tol
  std::vector<double> term_norms;  // Frobenius norms of (P_T Q_Omega P_T)^k E

  bool certified(double resid_tol) const {
    return supp_ok && resid_T <= resid_tol && ptperp_norm < 1.0 && injective;
  }
};

inline bool vanishes_off_omega(const Mat& y, const SampleSet& s) {
  const Mat mask = s.mask();
  for (Index j = 0; j < y.cols(); ++j)
    for (Index i = 0; i < y.rows(); ++i)
      if (mask(i, j) == 0.0 && y(i, j) != 0.0) return false;
  return true;
}

inline void fill_report(const TangentSpace& t, const SampleSet& s, CertificateReport& rep) {
  rep.supp_ok = vanishes_off_omega(rep.Y, s);
  rep.resid_T = (apply_PT_factored(t, rep.Y) - t.E()).norm();
  rep.ptperp_norm = op_norm(apply_PTperp_factored(t, rep.Y));
  rep.injective = injectivity_holds(t, s, rep.a_stat, &rep.lambda_min);
}

inline CertificateReport build_certificate_neumann(const TangentSpace& t, const SampleSet& s,
                                                   int k_max, double tol) {
  require(k_max >= 0 && tol > 0, "build_certificate_neumann: need k_max >= 0 and tol > 0");
  CertificateReport rep;
  rep.method = CertificateMethod::Neumann;
  rep.k_max = k_max;
  rep.tol = tol;
  rep.a_stat = deviation_stat(t, s);
  if (rep.a_stat >= 1.0)
    throw CertificateDivergence("build_certificate_neumann: deviation statistic a = " +
                                std::to_string(rep.a_stat) + " >= 1, series may diverge");
  Mat term = t.E();
  Mat sum = term;
  rep.term_norms.push_back(term.norm());
  rep.truncated = true;
  int k = 0;
  for (; k < k_max; ++k) {
    term = -apply_PT_factored(t, q_omega(apply_PT_factored(t, term), s));
    const double tn = term.norm();
    rep.term_norms.push_back(tn);
    sum += term;
    if (tn < tol) {
      rep.truncated = false;
      ++k;
      break;
    }
  }
  if (rep.term_norms.front() < tol) rep.truncated = false;
  rep.terms = k + 1;
  rep.Y = project_omega(sum, s) / s.p();
  fill_report(t, s, rep);
  return rep;
}

inline CertificateReport build_certificate_solve(const TangentSpace& t, const SampleSet& s,
                                                 double tol, int max_iter) {
  require(tol > 0 && max_iter >= 1, "build_certificate_solve: need tol > 0 and max_iter >= 1");
  CertificateReport rep;
  rep.method = CertificateMethod::IterativeSolve;
  rep.k_max = max_iter;
  rep.tol = tol;
  rep.a_stat = deviation_stat(t, s);
  if (rep.a_stat >= 1.0)
    throw InjectivityFailure("build_certificate_solve: deviation statistic a = " +
                             std::to_string(rep.a_stat) + " >= 1");
  // Conjugate gradients for P_T P_Omega P_T (W) = E with W in T.
  Mat w = Mat::Zero(t.n(), t.n());
  Mat res = t.E();
  Mat dir = res;
  double rr = res.squaredNorm();
  int it = 0;
  while (std::sqrt(rr) > tol) {
    if (it == max_iter)
      throw SolveNonConvergence("build_certificate_solve: max_iter reached", std::sqrt(rr));
    const Mat ad = apply_gram(t, s, dir);
    const double curv = frob_inner(dir, ad);
    if (curv <= 1e-14 * dir.squaredNorm())
      throw InjectivityFailure("build_certificate_solve: operator not positive definite on T");
    const double step = rr / curv;
    w += step * dir;
    res -= step * ad;
    const double rr_next = res.squaredNorm();
    dir = res + (rr_next / rr) * dir;
    rr = rr_next;
    ++it;
  }
  rep.terms = it;
  rep.truncated = false;
  rep.Y = project_omega(w, s);
  fill_report(t, s, rep);
  return rep;
}

struct CertificateCheck {
  bool certified = false;
  bool support = false;
  bool tangent = false;    // ||P_T(Y) - E||_F <= tol
  bool contraction = false;  // ||P_Tperp(Y)|| < 1
  bool injective = false;
  double resid_T = 0;
  double ptperp_norm = 0;
  double a_stat = 0;
  double lambda_min = 0;

  explicit operator bool() const { return certified; }
};

// Re-derives every condition from Y, T and Omega; report flags are not trusted.
inline CertificateCheck verify_certificate(const TangentSpace& t, const SampleSet& s,
                                           const CertificateReport& rep, double tol) {
  CertificateCheck c;
  check_dims(rep.Y, s, "verify_certificate");
  c.support = vanishes_off_omega(rep.Y, s);
  c.resid_T = (apply_PT_factored(t, rep.Y) - t.E()).norm();
  c.tangent = c.resid_T <= tol;
  c.ptperp_norm = op_norm(apply_PTperp_factored(t, rep.Y));
  c.contraction = c.ptperp_norm < 1.0;
  if (s.empty()) {
    c.injective = false;
  } else {
    c.a_stat = deviation_stat(t, s);
    c.injective = injectivity_holds(t, s, c.a_stat, &c.lambda_min);
  }
  c.certified = c.support && c.tangent && c.contraction && c.injective;
  return c;
}

inline const char* to_string(CertificateMethod m) {
  return m == CertificateMethod::Neumann ? "neumann" : "solve";
}

inline std::string certificate_csv_header() {
  return "method,k_max,tol,terms,truncated,resid_T,supp_ok,ptperp_norm,a_stat,injective,"
         "lambda_min";
}

inline std::string to_csv_row(const CertificateReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(rep.method) << ',' << rep.k_max << ',' << rep.tol << ',' << rep.terms << ','
     << int(rep.truncated) << ',' << rep.resid_T << ',' << int(rep.supp_ok) << ','
     << rep.ptperp_norm << ',' << rep.a_stat << ',' << int(rep.injective) << ','
     << rep.lambda_min;
  return os.str();
}

// ---------------------------------------------------------------------------
// Neumann term norms
// ---------------------------------------------------------------------------

struct TermNorms {
  std::vector<double> with_PT;  // ||(Q_Omega P_T)^k Q_Omega(E)||
  std::vector<double> with_QT;  // ||(Q_Omega Q_T)^k Q_Omega(E)||
};

inline TermNorms neumann_term_norms(const TangentSpace& t, const SampleSet& s, int k_max) {
  require(k_max >= 0 && k_max <= 8, "neumann_term_norms: need 0 <= k_max <= 8");
  TermNorms out;
  Mat zp = q_omega(t.E(), s);
  Mat zq = zp;
  for (int k = 0; k <= k_max; ++k) {
    out.with_PT.push_back(op_norm(zp));
    out.with_QT.push_back(op_norm(zq));
    if (k == k_max) break;
    zp = q_omega(apply_PT_factored(t, zp), s);
    zq = q_omega(apply_QT_factored(t, zq), s);
  }
  return out;
}

// Transfer from Q_T-string bounds to P_T-string bounds. With sigma fitted as
// the smallest value obeying ||(Q_Omega Q_T)^k Q_Omega E|| <= sigma^{(k+1)/2}
// for every recorded k, and 8nr/m < sigma^{3/2}, the P_T-string norms must
// stay below (1 + 4^{k+1}) sigma^{(k+1)/2}.
struct TransferCheck {
  double sigma = 0;
  bool applicable = false;  // sigma < 1 and 8nr/m < sigma^{3/2}
  bool holds = true;        // meaningful only when applicable
  double worst_ratio = 0;   // max_k with_PT[k] / bound_k
};

inline TransferCheck transfer_bound_check(const TermNorms& tn, Index n, Index r, double m) {
  TransferCheck c;
  for (std::size_t k = 0; k < tn.with_QT.size(); ++k)
    c.sigma = std::max(c.sigma, std::pow(tn.with_QT[k], 2.0 / double(k + 1)));
  c.applicable = c.sigma < 1.0 && 8.0 * double(n) * double(r) / m < std::pow(c.sigma, 1.5);
  for (std::size_t k = 0; k < tn.with_PT.size(); ++k) {
    const double bound = (1.0 + std::pow(4.0, double(k + 1))) * std::pow(c.sigma, double(k + 1) / 2);
    const double ratio = bound > 0 ? tn.with_PT[k] / bound : (tn.with_PT[k] > 0 ? INFINITY : 0.0);
    c.worst_ratio = std::max(c.worst_ratio, ratio);
  }
  c.holds = c.worst_ratio <= 1.0;
  return c;
}

// ---------------------------------------------------------------------------
// Coefficients rewriting (Q_Omega P_T)^k Q_Omega in Q_T-strings:
//
//   sum_{j<=k}   alpha_j (Q_Omega Q_T)^j Q_Omega + sum_{j<=k-1} beta_j (Q_Omega Q_T)^j
// + sum_{j<=k-2} gamma_j Q_T (Q_Omega Q_T)^j Q_Omega
// + sum_{j<=k-3} delta_j Q_T (Q_Omega Q_T)^j
//
// Writing a_j = alpha_j + (1 - rho') gamma_j, b_j = beta_j + (1 - rho') delta_j,
// c = rho' (1 - 2p)/p and d = rho' (1 - p)/p, one step k -> k+1 is
//
//   alpha'_j = a_{j-1} + c a_j + 1_{j=0} rho' b_0
//   beta'_j  = b_{j-1} + c b_j 1_{j>0} + 1_{j=0} d a_0
//   gamma'_j = d a_{j+1}
//   delta'_j = d b_{j+1}
// ---------------------------------------------------------------------------

struct NeumannCoeffs {
  int k = 0;
  std::vector<double> alpha;  // j = 0..k
  std::vector<double> beta;   // j = 0..k-1
  std::vector<double> gamma;  // j = 0..k-2
  std::vector<double> delta;  // j = 0..k-3

  // lambda^{ceil((k-j)/2)} 4^k with lambda = rho'/p
  static double bound(int k, int j, double lambda) {
    return std::pow(lambda, std::ceil((k - j) / 2.0)) * std::pow(4.0, k);
  }
};

inline NeumannCoeffs neumann_coeffs(int k, double rho_prime, double p) {
  require(k >= 0, "neumann_coeffs: k must be >= 0");
  require(p > 0 && p <= 1, "neumann_coeffs: p must lie in (0, 1]");
  require(rho_prime >= 0 && rho_prime < 1, "neumann_coeffs: rho' must lie in [0, 1)");
  const double c = rho_prime * (1 - 2 * p) / p;
  const double d = rho_prime * (1 - p) / p;
  // Padded storage of width k+2; entries outside the valid ranges stay zero.
  std::vector<double> al(k + 2, 0.0), be(k + 2, 0.0), ga(k + 2, 0.0), de(k + 2, 0.0);
  al[0] = 1.0;
  for (int step = 0; step < k; ++step) {
    std::vector<double> a(k + 2, 0.0), b(k + 2, 0.0);
    for (int j = 0; j < k + 2; ++j) {
      a[j] = al[j] + (1 - rho_prime) * ga[j];
      b[j] = be[j] + (1 - rho_prime) * de[j];
    }
    std::vector<double> al2(k + 2, 0.0), be2(k + 2, 0.0), ga2(k + 2, 0.0), de2(k + 2, 0.0);
    for (int j = 0; j < k + 2; ++j) {
      al2[j] = (j > 0 ? a[j - 1] : 0.0) + c * a[j] + (j == 0 ? rho_prime * b[0] : 0.0);
      be2[j] = (j > 0 ? b[j - 1] + c * b[j] : d * a[0]);
      ga2[j] = j + 1 < k + 2 ? d * a[j + 1] : 0.0;
      de2[j] = j + 1 < k + 2 ? d * b[j + 1] : 0.0;
    }
    al = std::move(al2);
    be = std::move(be2);
    ga = std::move(ga2);
    de = std::move(de2);
  }
  NeumannCoeffs out;
  out.k = k;
  out.alpha.assign(al.begin(), al.begin() + (k + 1));
  out.beta.assign(be.begin(), be.begin() + std::max(k, 0));
  out.gamma.assign(ga.begin(), ga.begin() + std::max(k - 1, 0));
  out.delta.assign(de.begin(), de.begin() + std::max(k - 2, 0));
  return out;
}

// Applies both sides of the coefficient expansion to random matrices and
// returns the largest relative Frobenius discrepancy
// ||lhs - rhs||_F / max(1, ||lhs||_F) over the trials.
inline double expand_identity_check(const TangentSpace& t, const SampleSet& s, int k, int trials,
                                    Rng& rng) {
  require(k >= 0 && k <= 4, "expand_identity_check: need 0 <= k <= 4");
  require(trials >= 1, "expand_identity_check: trials must be >= 1");
  const NeumannCoeffs co = neumann_coeffs(k, t.rho_prime(), s.p());
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Mat x = rng.gaussian(t.n(), t.n());
    x /= x.norm();
    Mat lhs = q_omega(x, s);
    for (int i = 0; i < k; ++i) lhs = q_omega(apply_PT(t, lhs), s);

    Mat rhs = Mat::Zero(t.n(), t.n());
    Mat a_str = q_omega(x, s);  // (Q_Omega Q_T)^j Q_Omega X
    Mat b_str = x;              // (Q_Omega Q_T)^j X
    for (int j = 0; j <= k; ++j) {
      rhs += co.alpha[j] * a_str;
      if (j < k) rhs += co.beta[j] * b_str;
      if (j + 1 < k) rhs += co.gamma[j] * apply_QT(t, a_str);
      if (j + 2 < k) rhs += co.delta[j] * apply_QT(t, b_str);
      a_str = q_omega(apply_QT(t, a_str), s);
      b_str = q_omega(apply_QT(t, b_str), s);
    }
    worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Trace moments E tr((A^T A)^j) with A = (Q_Omega Q_T)^k Q_Omega(E), over
// fresh Bernoulli(p) draws of Omega for a fixed tangent space.
// ---------------------------------------------------------------------------

struct MomentEstimate {
  double mean = 0;
  double std_error = 0;
  double mu = 0;         // max(mu1, mu2) of T
  double r_mu = 0;       // mu^2 r
  double m = 0;          // p n^2
  double bound_one = 0;  // (j(k+1))^{2j(k+1)} n (n r_mu^2 / m)^{j(k+1)}
  double bound_two = 0;  // ((j(k+1))^6 n r_mu / m)^{j(k+1)}
};

inline double trace_power(const Mat& a, int j) {
  const Vec sv = singular_values(a);
  double acc = 0.0;
  for (Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), 2.0 * j);
  return acc;
}

inline MomentEstimate trace_moment_estimate(const TangentSpace& t, double p, int j, int k,
                                            int trials, Rng& rng) {
  require(j >= 1 && k >= 0 && j * (k + 1) <= 6, "trace_moment_estimate: need j >= 1, j(k+1) <= 6");
  require(t.n() <= 64, "trace_moment_estimate: n must be <= 64");
  require(trials >= 2, "trace_moment_estimate: trials must be >= 2");
  require(p > 0 && p <= 1, "trace_moment_estimate: p must lie in (0, 1]");
  const Index n = t.n();
  double sum = 0.0, sumsq = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const SampleSet s = sample_bernoulli(n, p, rng);
    Mat a = q_omega(t.E(), s);
    for (int i = 0; i < k; ++i) a = q_omega(apply_QT_factored(t, a), s);
    const double v = a.isZero(0.0) ? 0.0 : trace_power(a, j);
    sum += v;
    sumsq += v * v;
  }
  MomentEstimate e;
  e.mean = sum / trials;
  const double var = std::max(0.0, (sumsq - trials * e.mean * e.mean) / (trials - 1));
  e.std_error = std::sqrt(var / trials);
  const IncoherenceReport inc = incoherence(t);
  e.mu = inc.mu;
  e.r_mu = inc.mu * inc.mu * double(t.r());
  e.m = p * double(n) * double(n);
  const double jk = double(j) * double(k + 1);
  e.bound_two = std::pow(std::pow(jk, 6) * double(n) * e.r_mu / e.m, jk);
  e.bound_one = std::pow(jk, 2 * jk) * double(n) * std::pow(double(n) * e.r_mu * e.r_mu / e.m, jk);
  return e;
}

}  // namespace mclab

#endif  // MCLAB_CERTIFICATE_HPP_
