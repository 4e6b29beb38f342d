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

// Dense real-matrix primitives shared by every other header: SVD, spectral
// norm by power iteration, orthonormalization, Haar-random orthogonal
// matrices and a seeded random source with explicit substreams.

#ifndef MCLAB_CORE_HPP_
#define MCLAB_CORE_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace mclab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

// Error taxonomy. Every failure the library reports derives from Error so
// callers (the CLI in particular) can map families onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what, Vec last_iterate = {})
      : Error(what), last_iterate_(std::move(last_iterate)) {}
  const Vec& last_iterate() const { return last_iterate_; }

 private:
  Vec last_iterate_;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidParameter(msg);
}

inline bool all_finite(const Mat& a) { return a.allFinite(); }

// ---------------------------------------------------------------------------
// Random source.
//
// A generator is identified by (seed, stream). The engine state is derived
// from both through splitmix64 so nearby seeds and streams decorrelate.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed),
        stream_(stream),
        engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Child generator for a sub-task; deterministic in (seed, stream, child).
  Rng substream(std::uint64_t child) const {
    return Rng(seed_, splitmix64(stream_ * 0x100000001b3ULL + child + 1));
  }

  double normal() { return normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool bernoulli(double p) { return uniform() < p; }
  int sign() { return (engine_() >> 63) ? 1 : -1; }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  Mat gaussian(Index rows, Index cols) {
    Mat g(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) g(i, j) = normal();
    return g;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// ---------------------------------------------------------------------------
// SVD
// ---------------------------------------------------------------------------

struct SvdFactors {
  Mat U;  // rows x k, orthonormal columns
  Vec S;  // k values, nonincreasing
  Mat V;  // cols x k, orthonormal columns

  Mat assemble() const { return U * S.asDiagonal() * V.transpose(); }
};

// Flips (u_k, v_k) pairs so the largest-magnitude entry of every left
// singular vector is positive. Ties resolve to the lowest row index.
inline void canonicalize_signs(SvdFactors& f) {
  for (Index k = 0; k < f.U.cols(); ++k) {
    Index arg = 0;
    f.U.col(k).cwiseAbs().maxCoeff(&arg);
    if (f.U(arg, k) < 0) {
      f.U.col(k) *= -1.0;
      f.V.col(k) *= -1.0;
    }
  }
}

// Thin SVD, k = min(rows, cols).
inline SvdFactors svd(const Mat& a) {
  if (a.rows() < 1 || a.cols() < 1) throw InvalidParameter("svd: empty matrix");
  if (!a.allFinite()) throw InvalidParameter("svd: non-finite entries");
  Eigen::BDCSVD<Mat> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw NumericFailure("svd: iteration did not converge");
  SvdFactors f{dec.matrixU(), dec.singularValues(), dec.matrixV()};
  canonicalize_signs(f);
  return f;
}

// Singular values only, nonincreasing.
inline Vec singular_values(const Mat& a) {
  Eigen::BDCSVD<Mat> dec(a);
  if (dec.info() != Eigen::Success) throw NumericFailure("svd: iteration did not converge");
  return dec.singularValues();
}

// Largest singular value from a full SVD; the reference route used where an
// exact operator norm is needed (certificate verification, term norms).
inline double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  if (a.isZero(0.0)) return 0.0;
  return singular_values(a)(0);
}

inline double nuclear_norm(const Mat& a) { return singular_values(a).sum(); }

// ---------------------------------------------------------------------------
// Spectral norm by power iteration on A^T A with random restarts.
// ---------------------------------------------------------------------------

struct PowerOptions {
  double tol = 1e-10;
  int max_iter = 20000;
  int restarts = 3;
  std::uint64_t seed = 0x5eed;
};

inline double spectral_norm(const Mat& a, double tol, int max_iter, int restarts,
                            std::uint64_t seed = 0x5eed) {
  require(tol > 0, "spectral_norm: tol must be positive");
  require(max_iter >= 1 && restarts >= 1, "spectral_norm: max_iter and restarts must be >= 1");
  if (a.isZero(0.0)) return 0.0;
  Rng rng(seed, 0);
  const Mat gram = a.transpose() * a;
  double best = 0.0;
  for (int s = 0; s < restarts; ++s) {
    Vec x = rng.gaussian(a.cols(), 1);
    x.normalize();
    double est = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      Vec y = gram * x;
      const double ny = y.norm();
      if (ny == 0.0) {
        converged = true;  // start vector landed in the null space
        break;
      }
      // Rayleigh quotient of the Gram matrix: sigma^2 estimate.
      const double next = std::sqrt(std::max(0.0, x.dot(y)));
      x = y / ny;
      if (it > 0 && std::abs(next - est) <= tol * next) {
        est = next;
        converged = true;
        break;
      }
      est = next;
    }
    if (!converged)
      throw NumericFailure("spectral_norm: power iteration did not converge", x);
    best = std::max(best, est);
  }
  return best;
}

inline double spectral_norm(const Mat& a, const PowerOptions& opt = {}) {
  return spectral_norm(a, opt.tol, opt.max_iter, opt.restarts, opt.seed);
}

// ---------------------------------------------------------------------------
// Orthonormalization and Haar-random orthogonal matrices
// ---------------------------------------------------------------------------

// Orthonormal basis of the column span of g (same column count).
inline Mat orthonormalize(const Mat& g) {
  require(g.rows() >= g.cols(), "orthonormalize: more columns than rows");
  const Vec s = singular_values(g);
  if (s.size() == 0 || s(0) == 0.0 || s(s.size() - 1) <= 1e-12 * s(0))
    throw DegenerateInput("orthonormalize: input is rank deficient");
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(g.rows(), g.cols());
  // Fix the sign so that an already-orthonormal input is returned unchanged.
  const Mat r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
  for (Index k = 0; k < g.cols(); ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  return q;
}

// QR of an i.i.d. Gaussian matrix with the R diagonal made positive, which
// makes the distribution of Q invariant under orthogonal left-multiplication.
inline Mat haar_orthogonal(Index n, Rng& rng) {
  require(n >= 1, "haar_orthogonal: n must be >= 1");
  const Mat g = rng.gaussian(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  for (Index k = 0; k < n; ++k)
    if (qr.matrixQR()(k, k) < 0) q.col(k) *= -1.0;
  return q;
}

// max |Q^T Q - I| entrywise.
inline double orthonormality_defect(const Mat& q) {
  return (q.transpose() * q - Mat::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

inline double frob_inner(const Mat& a, const Mat& b) { return (a.array() * b.array()).sum(); }

}  // namespace mclab

#endif  // MCLAB_CORE_HPP_
