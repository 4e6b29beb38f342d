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

// Ground-truth low-rank matrices: the uniformly bounded orthogonal model,
// the low-rank low-coherence model, the random orthogonal model and the
// block-diagonal construction used for sampling lower bounds.

#ifndef MCLAB_MODELS_HPP_
#define MCLAB_MODELS_HPP_

#include "mclab/core.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mclab {

enum class ModelKind { UniformlyBounded, LowCoherence, RandomOrthogonal, Block };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::UniformlyBounded: return "unif_bounded";
    case ModelKind::LowCoherence: return "low_coherence";
    case ModelKind::RandomOrthogonal: return "random_orth";
    case ModelKind::Block: return "block";
  }
  return "?";
}

inline ModelKind parse_model_kind(const std::string& s) {
  if (s == "unif_bounded") return ModelKind::UniformlyBounded;
  if (s == "low_coherence") return ModelKind::LowCoherence;
  if (s == "random_orth") return ModelKind::RandomOrthogonal;
  if (s == "block") return ModelKind::Block;
  throw InvalidParameter("unknown model '" + s + "'");
}

struct GroundTruth {
  Mat U;               // n x r
  Mat V;               // n x r, signs folded in
  Vec sigma;           // r positive values
  Vec signs;           // r values in {-1, +1}, as drawn
  Mat M;               // U diag(sigma) V^T
  double mu_b = 0;     // n max(|U_ik|^2, |V_ik|^2)
  std::string model;   // generator name, carried through serialization
  std::uint64_t seed = 0;

  Index n() const { return M.rows(); }
  Index r() const { return U.cols(); }
};

inline double measured_mu_b(const Mat& u, const Mat& v) {
  const double mu = u.cwiseAbs().maxCoeff();
  const double mv = v.cwiseAbs().maxCoeff();
  return double(u.rows()) * std::max(mu * mu, mv * mv);
}

// M = u diag(signs .* sigma) v^T. The signs move into V so that (U, sigma, V)
// is an SVD of M and E = U V^T is its sign pattern.
inline GroundTruth assemble_truth(Mat u, Mat v, Vec sigma, Vec signs, std::string model,
                                  std::uint64_t seed) {
  GroundTruth g;
  v = v * signs.asDiagonal();
  g.M = u * sigma.asDiagonal() * v.transpose();
  g.mu_b = measured_mu_b(u, v);
  g.U = std::move(u);
  g.V = std::move(v);
  g.sigma = std::move(sigma);
  g.signs = std::move(signs);
  g.model = std::move(model);
  g.seed = seed;
  return g;
}

// sigma_k = 1 + (r - k)/r, k = 1..r: distinct, within [1, 2).
inline Vec default_sigma(Index r) {
  Vec s(r);
  for (Index k = 0; k < r; ++k) s(k) = 1.0 + double(r - 1 - k) / double(r);
  return s;
}

inline void check_sigma(const Vec& sigma, Index r, const char* who) {
  require(sigma.size() == r, std::string(who) + ": need exactly r singular values");
  for (Index k = 0; k < r; ++k) {
    require(sigma(k) > 0 && std::isfinite(sigma(k)), std::string(who) + ": sigma must be positive");
    for (Index l = 0; l < k; ++l)
      require(sigma(k) != sigma(l), std::string(who) + ": sigma must be distinct");
  }
}

// Sylvester Hadamard matrix scaled to be orthogonal; n must be a power of 2.
inline Mat hadamard_basis(Index n) {
  require(n >= 1 && (n & (n - 1)) == 0, "hadamard_basis: n must be a power of two");
  Mat h = Mat::Ones(1, 1);
  while (h.rows() < n) {
    const Index k = h.rows();
    Mat next(2 * k, 2 * k);
    next << h, h, h, -h;
    h = std::move(next);
  }
  return h / std::sqrt(double(n));
}

// Orthonormal DCT-II basis (columns). Max entry sqrt(2/n), so mu_B = 2.
inline Mat dct_basis(Index n) {
  require(n >= 1, "dct_basis: n must be >= 1");
  Mat c(n, n);
  const double pi = std::acos(-1.0);
  for (Index k = 0; k < n; ++k) {
    const double s = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (Index i = 0; i < n; ++i) c(i, k) = s * std::cos(pi * (i + 0.5) * k / n);
  }
  return c;
}

// Flat-amplitude orthonormal family for the uniformly bounded model.
inline Mat bounded_family(Index n) {
  return (n & (n - 1)) == 0 ? hadamard_basis(n) : dct_basis(n);
}

struct UniformlyBoundedOptions {
  bool couple = false;            // beta(k) = alpha(k)
  bool signs = true;              // i.i.d. random signs epsilon_k
  bool with_replacement = false;  // literal draw; duplicates merged by summing
};

inline std::vector<Index> draw_indices(Index n, Index r, bool with_replacement, Rng& rng) {
  std::vector<Index> out;
  out.reserve(r);
  if (with_replacement) {
    for (Index k = 0; k < r; ++k) out.push_back(Index(rng.below(n)));
    return out;
  }
  std::vector<Index> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (Index k = 0; k < r; ++k) {  // partial Fisher-Yates
    const Index j = k + Index(rng.below(n - k));
    std::swap(pool[k], pool[j]);
    out.push_back(pool[k]);
  }
  return out;
}

inline GroundTruth gen_uniformly_bounded(const Mat& fam_u, const Mat& fam_v, Index r,
                                         const Vec& sigma, Rng& rng,
                                         const UniformlyBoundedOptions& opt = {}) {
  const Index n = fam_u.rows();
  require(fam_u.cols() == n && fam_v.rows() == n && fam_v.cols() == n,
          "gen_uniformly_bounded: families must be n x n");
  require(orthonormality_defect(fam_u) <= 1e-8 && orthonormality_defect(fam_v) <= 1e-8,
          "gen_uniformly_bounded: families must be orthonormal");
  require(r >= 1 && r <= n, "gen_uniformly_bounded: need 1 <= r <= n");
  check_sigma(sigma, r, "gen_uniformly_bounded");

  const auto alpha = draw_indices(n, r, opt.with_replacement, rng);
  const auto beta = opt.couple ? alpha : draw_indices(n, r, opt.with_replacement, rng);
  Vec eps = Vec::Ones(r);
  if (opt.signs)
    for (Index k = 0; k < r; ++k) eps(k) = rng.sign();

  if (opt.with_replacement) {
    // Repeated indices would duplicate singular vectors; recompute the factors
    // from the assembled sum instead.
    Mat m = Mat::Zero(n, n);
    for (Index k = 0; k < r; ++k)
      m += eps(k) * sigma(k) * fam_u.col(alpha[k]) * fam_v.col(beta[k]).transpose();
    const SvdFactors f = svd(m);
    Index rank = 0;
    while (rank < f.S.size() && f.S(rank) > 1e-10 * std::max(1.0, f.S(0))) ++rank;
    require(rank >= 1, "gen_uniformly_bounded: signs cancelled every term");
    return assemble_truth(f.U.leftCols(rank), f.V.leftCols(rank), f.S.head(rank),
                          Vec::Ones(rank), "unif_bounded", rng.seed());
  }

  Mat u(n, r), v(n, r);
  for (Index k = 0; k < r; ++k) {
    u.col(k) = fam_u.col(alpha[k]);
    v.col(k) = fam_v.col(beta[k]);
  }
  return assemble_truth(std::move(u), std::move(v), sigma, std::move(eps), "unif_bounded",
                        rng.seed());
}

inline GroundTruth gen_random_orthogonal(Index n, Index r, const Vec& sigma, Rng& rng) {
  require(r >= 1 && r <= n, "gen_random_orthogonal: need 1 <= r <= n");
  check_sigma(sigma, r, "gen_random_orthogonal");
  Mat u = haar_orthogonal(n, rng).leftCols(r);
  Mat v = haar_orthogonal(n, rng).leftCols(r);
  return assemble_truth(std::move(u), std::move(v), sigma, Vec::Ones(r), "random_orth",
                        rng.seed());
}

inline constexpr int kLowCoherenceAttempts = 1000;

// Random orthogonal factors conditioned on n max entry^2 <= muB_cap.
inline GroundTruth gen_low_coherence(Index n, Index r, const Vec& sigma, double mu_b_cap,
                                     Rng& rng) {
  require(r >= 1 && r <= 8 && r <= n, "gen_low_coherence: need 1 <= r <= min(8, n)");
  require(mu_b_cap >= 1.0, "gen_low_coherence: muB cap must be >= 1");
  check_sigma(sigma, r, "gen_low_coherence");
  for (int attempt = 0; attempt < kLowCoherenceAttempts; ++attempt) {
    Mat u = haar_orthogonal(n, rng).leftCols(r);
    Mat v = haar_orthogonal(n, rng).leftCols(r);
    if (measured_mu_b(u, v) <= mu_b_cap)
      return assemble_truth(std::move(u), std::move(v), sigma, Vec::Ones(r), "low_coherence",
                            rng.seed());
  }
  throw GenerationFailure("gen_low_coherence: rejection budget exhausted; muB cap too tight");
}

struct BlockModelSpec {
  Index n = 0;
  Index r = 0;
  double mu0 = 1;
  Index ell = 0;  // floor(n / (mu0 r))

  Index block_begin(Index k) const { return k * ell; }
};

inline BlockModelSpec make_block_spec(Index n, Index r, double mu0) {
  require(n >= 1 && r >= 1, "block model: n and r must be >= 1");
  require(mu0 >= 1.0, "block model: mu0 must be >= 1");
  BlockModelSpec s;
  s.n = n;
  s.r = r;
  s.mu0 = mu0;
  // Guard against 8 / (2 * 2) landing just below an integer.
  s.ell = Index(std::floor(double(n) / (mu0 * double(r)) + 1e-9));
  require(s.ell >= 1, "block model: block length n/(mu0 r) must be >= 1");
  return s;
}

// M = sum_k sigma_k u_k u_k^T with u_k the normalized indicator of
// B_k = [k ell, (k+1) ell). Trailing indices beyond r ell stay zero. An empty
// sigma draws each value uniformly from (0, 1].
inline GroundTruth gen_lower_bound_block(const BlockModelSpec& spec, Vec sigma, Rng& rng) {
  require(spec.ell >= 1, "gen_lower_bound_block: ell must be >= 1");
  require(spec.ell * spec.r <= spec.n, "gen_lower_bound_block: blocks exceed n");
  if (sigma.size() == 0) {
    sigma.resize(spec.r);
    for (Index k = 0; k < spec.r; ++k) sigma(k) = 1.0 - rng.uniform();
  }
  require(sigma.size() == spec.r, "gen_lower_bound_block: need exactly r singular values");
  for (Index k = 0; k < spec.r; ++k)
    require(sigma(k) > 0.0 && sigma(k) <= 1.0, "gen_lower_bound_block: sigma must lie in (0, 1]");
  Mat u = Mat::Zero(spec.n, spec.r);
  const double amp = 1.0 / std::sqrt(double(spec.ell));
  for (Index k = 0; k < spec.r; ++k) u.block(spec.block_begin(k), k, spec.ell, 1).setConstant(amp);
  Mat v = u;
  return assemble_truth(std::move(u), std::move(v), std::move(sigma), Vec::Ones(spec.r), "block",
                        rng.seed());
}

// ---------------------------------------------------------------------------
// Text serialization: header "n r model seed", then U (n rows of r values),
// sigma (r values), signs (r values), V (n rows of r values, signs included).
// ---------------------------------------------------------------------------

inline void write_truth(std::ostream& out, const GroundTruth& g) {
  out << g.n() << ' ' << g.r() << ' ' << (g.model.empty() ? "custom" : g.model) << ' ' << g.seed
      << '\n';
  out << std::setprecision(17);
  const auto rows = [&out](const Mat& m) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index k = 0; k < m.cols(); ++k) out << (k ? " " : "") << m(i, k);
      out << '\n';
    }
  };
  rows(g.U);
  rows(g.sigma.transpose());
  rows(g.signs.transpose());
  rows(g.V);
}

inline GroundTruth read_truth(std::istream& in) {
  Index n = 0, r = 0;
  std::string model;
  std::uint64_t seed = 0;
  if (!(in >> n >> r >> model >> seed)) throw InvalidParameter("read_truth: malformed header");
  require(n >= 1 && r >= 1 && r <= n, "read_truth: invalid dimensions");
  const auto read_block = [&in](Index rows, Index cols) {
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index k = 0; k < cols; ++k)
        if (!(in >> m(i, k))) throw InvalidParameter("read_truth: truncated body");
    return m;
  };
  Mat u = read_block(n, r);
  Vec sigma = read_block(1, r).transpose();
  Vec signs = read_block(1, r).transpose();
  Mat v = read_block(n, r);
  for (Index k = 0; k < r; ++k)
    require(signs(k) == 1.0 || signs(k) == -1.0, "read_truth: signs must be +-1");
  v = v * signs.asDiagonal();  // stored V already carries the signs
  return assemble_truth(std::move(u), std::move(v), std::move(sigma), std::move(signs), model, seed);
}

}  // namespace mclab

#endif  // MCLAB_MODELS_HPP_
