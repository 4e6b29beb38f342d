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

#include "mclab/sampling.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace mclab {
namespace {

TEST(Bernoulli, FullAtPOne) {
  Rng rng(1);
  const SampleSet s = sample_bernoulli(7, 1.0, rng);
  EXPECT_EQ(s.size(), 49u);
  EXPECT_TRUE(is_full(s));
}

TEST(Bernoulli, MeanCardinality) {
  Rng rng(2);
  const Index n = 50;
  const double p = 0.3;
  double sum = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) sum += double(sample_bernoulli(n, p, rng).size());
  const double sd = std::sqrt(n * n * p * (1 - p));
  EXPECT_NEAR(sum / trials, 750.0, 3 * sd / std::sqrt(double(trials)));
}

TEST(Bernoulli, Deterministic) {
  Rng a(3, 7), b(3, 7);
  EXPECT_EQ(sample_bernoulli(20, 0.5, a).omega(), sample_bernoulli(20, 0.5, b).omega());
}

TEST(Bernoulli, RejectsBadRate) {
  Rng rng(4);
  EXPECT_THROW(sample_bernoulli(5, 0.0, rng), InvalidParameter);
  EXPECT_THROW(sample_bernoulli(5, 1.5, rng), InvalidParameter);
}

TEST(Uniform, FullAndEmpty) {
  Rng rng(5);
  EXPECT_TRUE(is_full(sample_uniform(6, 36, rng)));
  EXPECT_TRUE(sample_uniform(6, 0, rng).empty());
  EXPECT_THROW(sample_uniform(6, 37, rng), InvalidParameter);
}

TEST(Uniform, ExactCountBothRegimes) {
  Rng rng(6);
  for (std::uint64_t m : {1u, 10u, 49u, 50u, 51u, 99u}) {
    const SampleSet s = sample_uniform(10, m, rng);
    EXPECT_EQ(s.size(), m);
    EXPECT_DOUBLE_EQ(s.p(), double(m) / 100.0);
  }
}

TEST(Uniform, UniformMarginals) {
  Rng rng(7);
  const Index n = 10;
  Mat freq = Mat::Zero(n, n);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) freq += sample_uniform(n, 30, rng).mask();
  freq /= trials;
  EXPECT_LE((freq.array() - 0.30).abs().maxCoeff(), 0.015);
  // Complement regime (m >= n^2 / 2).
  freq.setZero();
  for (int t = 0; t < trials; ++t) freq += sample_uniform(n, 70, rng).mask();
  freq /= trials;
  EXPECT_LE((freq.array() - 0.70).abs().maxCoeff(), 0.015);
}

TEST(ProjectOmega, FullEmptyIdempotent) {
  Rng rng(8);
  const Mat x = rng.gaussian(6, 6);
  EXPECT_EQ(project_omega(x, sample_uniform(6, 36, rng)), x);
  EXPECT_TRUE(project_omega(x, sample_uniform(6, 0, rng)).isZero(0.0));
  const SampleSet s = sample_bernoulli(6, 0.4, rng);
  const Mat once = project_omega(x, s);
  EXPECT_EQ(project_omega(once, s), once);
}

TEST(ProjectOmega, DimensionMismatch) {
  Rng rng(9);
  const SampleSet s = sample_bernoulli(4, 0.5, rng);
  EXPECT_THROW(project_omega(Mat::Zero(5, 4), s), InvalidParameter);
  EXPECT_THROW(q_omega(Mat::Zero(4, 3), s), InvalidParameter);
}

TEST(ProjectOmega, OperatorNormIsOne) {
  Rng rng(10);
  const SampleSet s = sample_bernoulli(8, 0.3, rng);
  for (int t = 0; t < 100; ++t) {
    const Mat x = rng.gaussian(8, 8);
    EXPECT_LE(project_omega(x, s).norm() / x.norm(), 1.0 + 1e-9);
  }
}

TEST(QOmega, ZeroWhenFull) {
  Rng rng(11);
  const SampleSet s = sample_bernoulli(5, 1.0, rng);
  EXPECT_TRUE(q_omega(rng.gaussian(5, 5), s).isZero(0.0));
}

TEST(QOmega, MeanZero) {
  Rng rng(12);
  const Index n = 4;
  const double p = 0.3;
  const Mat x = rng.gaussian(n, n);
  Mat sum = Mat::Zero(n, n), sumsq = Mat::Zero(n, n);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const Mat q = q_omega(x, sample_bernoulli(n, p, rng));
    sum += q;
    sumsq += q.cwiseProduct(q);
  }
  const Mat mean = sum / trials;
  const Mat var = sumsq / trials - mean.cwiseProduct(mean);
  const Mat se = (var / trials).cwiseSqrt();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) EXPECT_LE(std::abs(mean(i, j)), 4 * se(i, j));
}

TEST(QOmega, SquareIdentity) {
  Rng rng(13);
  const SampleSet s = sample_bernoulli(9, 0.37, rng);
  const double p = s.p();
  for (int t = 0; t < 5; ++t) {
    const Mat x = rng.gaussian(9, 9);
    const Mat lhs = q_omega(q_omega(x, s), s);
    const Mat rhs = ((1 - 2 * p) * q_omega(x, s) + (1 - p) * x) / p;
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST(Coupling, DoubledRateRarelyUndershoots) {
  for (long long m : {20, 50, 100, 300, 512}) {
    const long long n2 = 1024;
    const double pp = 2.0 * double(m) / double(n2);
    EXPECT_LE(oracle::binomial_cdf_below(n2, pp, m), 0.5) << "m=" << m;
  }
}

TEST(SampleSet, SortedUniqueAndValidated) {
  SampleSet s(3, 3, {{2, 1}, {0, 0}, {2, 1}, {1, 2}}, SamplingModel::Bernoulli, 0.5, 4);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.omega()[0], (Entry{0, 0}));
  EXPECT_EQ(s.omega()[2], (Entry{2, 1}));
  EXPECT_TRUE(s.contains(1, 2));
  EXPECT_FALSE(s.contains(1, 1));
  EXPECT_THROW(SampleSet(3, 3, {{3, 0}}, SamplingModel::Bernoulli, 0.1, 1), InvalidParameter);
  EXPECT_THROW(SampleSet(3, 3, {{0, 0}}, SamplingModel::Uniform, 0.2, 2), InvalidParameter);
}

TEST(Serialization, RoundTripWithValues) {
  Rng rng(14);
  const SampleSet s = sample_uniform(6, 11, rng);
  const Mat x = rng.gaussian(6, 6);
  std::stringstream io;
  write_samples(io, s, &x);
  const ParsedSamples back = read_samples(io);
  EXPECT_EQ(back.samples.omega(), s.omega());
  EXPECT_EQ(back.samples.model(), SamplingModel::Uniform);
  EXPECT_EQ(back.samples.m_nominal(), 11u);
  ASSERT_TRUE(back.observed.has_value());
  EXPECT_EQ(*back.observed, project_omega(x, s));
}

TEST(Serialization, IndicesOnly) {
  Rng rng(15);
  const SampleSet s = sample_bernoulli(5, 0.5, rng);
  std::stringstream io;
  write_samples(io, s);
  const ParsedSamples back = read_samples(io);
  EXPECT_EQ(back.samples.omega(), s.omega());
  EXPECT_FALSE(back.observed.has_value());
}

TEST(Serialization, MalformedInput) {
  std::stringstream a("0 1\n");
  EXPECT_THROW(read_samples(a), InvalidParameter);
  std::stringstream b("# 3 3 bernoulli 0.5 2\n0 1 2.5\n1 1\n");
  EXPECT_THROW(read_samples(b), InvalidParameter);
  std::stringstream c("# 3 3 poisson 0.5 2\n0 1\n");
  EXPECT_THROW(read_samples(c), InvalidParameter);
}

}  // namespace
}  // namespace mclab
