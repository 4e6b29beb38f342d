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

#include "mclab/core.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mclab {
namespace {

TEST(Svd, IdentityFactors) {
  const SvdFactors f = svd(Mat::Identity(3, 3));
  EXPECT_TRUE(f.S.isApprox(Vec::Ones(3)));
  EXPECT_LE((f.assemble() - Mat::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LE(orthonormality_defect(f.U), 1e-12);
}

TEST(Svd, DiagonalWithZero) {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 3;
  const SvdFactors f = svd(a);
  EXPECT_NEAR(f.S(0), 3.0, 1e-14);
  EXPECT_NEAR(f.S(1), 0.0, 1e-14);
}

TEST(Svd, RandomReconstruction) {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const Mat a = rng.gaussian(5, 5);
    const SvdFactors f = svd(a);
    EXPECT_LE((f.assemble() - a).norm(), 1e-9 * std::max(1.0, a.norm()));
    for (Index k = 1; k < f.S.size(); ++k) EXPECT_GE(f.S(k - 1), f.S(k));
    EXPECT_LE(orthonormality_defect(f.U), 1e-10);
    EXPECT_LE(orthonormality_defect(f.V), 1e-10);
  }
}

TEST(Svd, SignConventionLargestEntryPositive) {
  Rng rng(12);
  const SvdFactors f = svd(rng.gaussian(7, 4));
  for (Index k = 0; k < f.U.cols(); ++k) {
    Index arg = 0;
    f.U.col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(f.U(arg, k), 0.0);
  }
}

TEST(Svd, RoundTripRecoversSpectrum) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const Mat u = haar_orthogonal(9, rng).leftCols(4);
    const Mat v = haar_orthogonal(9, rng).leftCols(4);
    Vec s(4);
    s << 4.0, 2.5, 1.25, 0.5;
    const SvdFactors f = svd(u * s.asDiagonal() * v.transpose());
    EXPECT_LE((f.S.head(4) - s).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Svd, RejectsNonFinite) {
  Mat a = Mat::Ones(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(svd(a), InvalidParameter);
}

TEST(SpectralNorm, Diagonal) {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 3;
  a(1, 1) = 1;
  const double tol = 1e-8;
  EXPECT_NEAR(spectral_norm(a, tol, 10000, 3), 3.0, 3 * tol);
}

TEST(SpectralNorm, ZeroMatrix) { EXPECT_EQ(spectral_norm(Mat::Zero(4, 3)), 0.0); }

TEST(SpectralNorm, MatchesSvd) {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const Mat a = rng.gaussian(8, 8);
    EXPECT_NEAR(spectral_norm(a), svd(a).S(0), 1e-6 * svd(a).S(0));
  }
}

TEST(SpectralNorm, BoundedByFrobeniusAndTightForRankOne) {
  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    const Mat a = rng.gaussian(6, 5);
    EXPECT_LE(spectral_norm(a), a.norm() + 1e-12);
    const Mat b = rng.gaussian(6, 1) * rng.gaussian(1, 5);
    EXPECT_NEAR(spectral_norm(b), b.norm(), 1e-9 * b.norm());
  }
}

TEST(SpectralNorm, NonConvergenceCarriesIterate) {
  // Two nearly equal top singular values stall a 2-step power iteration.
  Rng rng(16);
  const Mat a = rng.gaussian(30, 30);
  try {
    spectral_norm(a, 1e-15, 2, 1);
    FAIL() << "expected NumericFailure";
  } catch (const NumericFailure& e) {
    EXPECT_EQ(e.last_iterate().size(), 30);
  }
}

TEST(SpectralNorm, RejectsBadTolerance) {
  EXPECT_THROW(spectral_norm(Mat::Ones(2, 2), 0.0, 10, 1), InvalidParameter);
}

TEST(Haar, OneByOne) {
  Rng rng(17);
  const Mat q = haar_orthogonal(1, rng);
  EXPECT_EQ(std::abs(q(0, 0)), 1.0);
}

TEST(Haar, Orthogonal) {
  Rng rng(18);
  const Mat q = haar_orthogonal(6, rng);
  EXPECT_LE(orthonormality_defect(q), 1e-10);
  for (Index k = 0; k < 6; ++k) EXPECT_NEAR(q.col(k).norm(), 1.0, 1e-12);
}

TEST(Haar, MaxEntryPercentile) {
  Rng rng(19);
  const Index n = 64;
  std::vector<double> maxes;
  for (int t = 0; t < 2000; ++t) maxes.push_back(haar_orthogonal(n, rng).cwiseAbs().maxCoeff());
  std::sort(maxes.begin(), maxes.end());
  const double p99 = maxes[std::size_t(0.99 * maxes.size())];
  const double ref = std::sqrt(2 * std::log(2.0 * n * n) / n);
  EXPECT_LE(p99, 2 * ref);
  EXPECT_GE(p99, ref / 2);
}

TEST(Haar, PermutationInvariance) {
  Rng rng(20);
  const Index n = 8;
  Mat perm = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) perm(i, (i + 3) % n) = 1;
  // Statistic sensitive to row order: |Q_00|.
  std::vector<double> a, b;
  for (int t = 0; t < 2000; ++t) {
    a.push_back(std::abs(haar_orthogonal(n, rng)(0, 0)));
    b.push_back(std::abs((perm * haar_orthogonal(n, rng))(0, 0)));
  }
  EXPECT_GT(oracle::ks_two_sample(a, b).p_value, 0.01);
}

TEST(Orthonormalize, FixesOrthonormalInput) {
  Rng rng(21);
  const Mat q = haar_orthogonal(7, rng).leftCols(3);
  EXPECT_LE((orthonormalize(q) - q).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Orthonormalize, SpanOfE1E1PlusE2) {
  Mat g = Mat::Zero(3, 2);
  g(0, 0) = 1;
  g(0, 1) = 1;
  g(1, 1) = 1;
  const Mat q = orthonormalize(g);
  EXPECT_LE(orthonormality_defect(q), 1e-12);
  EXPECT_NEAR(std::abs(q(2, 0)) + std::abs(q(2, 1)), 0.0, 1e-14);
  // Same span: projecting g onto span(q) leaves it unchanged.
  EXPECT_LE((q * q.transpose() * g - g).norm(), 1e-12);
}

TEST(Orthonormalize, RandomTall) {
  Rng rng(22);
  const Mat q = orthonormalize(rng.gaussian(10, 3));
  EXPECT_LE(orthonormality_defect(q), 1e-10);
}

TEST(Orthonormalize, RankDeficientThrows) {
  Mat g = Mat::Zero(4, 2);
  g(0, 0) = 1;
  g(0, 1) = 2;
  EXPECT_THROW(orthonormalize(g), DegenerateInput);
}

TEST(Rng, ReproducibleStreams) {
  Rng a(5, 9), b(5, 9), c(5, 10);
  const Mat x = a.gaussian(3, 3), y = b.gaussian(3, 3), z = c.gaussian(3, 3);
  EXPECT_EQ(x, y);
  EXPECT_NE(x, z);
  Rng s1 = Rng(5, 9).substream(4), s2 = Rng(5, 9).substream(4), s3 = Rng(5, 9).substream(5);
  EXPECT_EQ(s1.below(1u << 30), s2.below(1u << 30));
  EXPECT_NE(Rng(5, 9).substream(4).gaussian(4, 1), s3.gaussian(4, 1));
}

}  // namespace
}  // namespace mclab
