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

#include "mclab/models.hpp"
#include "mclab/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace mclab {
namespace {

// Textbook singular value thresholding through a full SVD.
Mat shrink_reference(const Mat& x, double tau) {
  Eigen::JacobiSVD<Mat> f(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec s = (f.singularValues().array() - tau).max(0.0).matrix();
  return f.matrixU() * s.asDiagonal() * f.matrixV().transpose();
}

double prox_objective(const Mat& x, const Mat& y, double tau) {
  return tau * nuclear_norm(x) + 0.5 * (x - y).squaredNorm();
}

TEST(Shrink, ZeroThresholdIsIdentity) {
  Rng rng(1);
  const Mat x = rng.gaussian(7, 7);
  EXPECT_LE((shrink(x, 0.0) - x).norm(), 1e-9);
}

TEST(Shrink, LargeThresholdIsZero) {
  Rng rng(2);
  const Mat x = rng.gaussian(6, 4);
  double nuc = -1;
  EXPECT_TRUE(shrink(x, op_norm(x) * 1.0001, 0, &nuc).isZero(0.0));
  EXPECT_EQ(nuc, 0.0);
}

TEST(Shrink, MatchesReference) {
  Rng rng(3);
  for (const auto& dims : {std::pair<Index, Index>{9, 9}, {12, 5}, {5, 12}}) {
    const Mat x = rng.gaussian(dims.first, dims.second);
    const double tau = 0.4 * op_norm(x);
    double nuc = 0;
    const Mat got = shrink(x, tau, 0, &nuc);
    const Mat ref = shrink_reference(x, tau);
    EXPECT_LE((got - ref).norm(), 1e-9 * ref.norm());
    EXPECT_NEAR(nuc, nuclear_norm(ref), 1e-9 * nuclear_norm(ref));
  }
}

TEST(Shrink, SmallKeptValuesFallBackToSvd) {
  Rng rng(4);
  const Mat u = haar_orthogonal(10, rng).leftCols(3);
  const Mat v = haar_orthogonal(10, rng).leftCols(3);
  Vec s(3);
  s << 1e3, 1.0, 1e-3;
  const Mat x = u * s.asDiagonal() * v.transpose();
  const double tau = 1e-4;
  EXPECT_LE((shrink(x, tau) - shrink_reference(x, tau)).norm(), 1e-9);
}

TEST(Shrink, ProxOptimality) {
  Rng rng(5);
  const Mat y = rng.gaussian(8, 8);
  const double tau = 1.0;
  const Mat x = shrink(y, tau);
  const double fx = prox_objective(x, y, tau);
  for (int t = 0; t < 100; ++t) {
    const Mat z = x + 0.1 * rng.gaussian(8, 8);
    EXPECT_LE(fx, prox_objective(z, y, tau) + 1e-12);
  }
}

TEST(Shrink, RankCapKeepsLeading) {
  Rng rng(6);
  const Mat x = rng.gaussian(10, 10);
  const Mat got = shrink(x, 0.1, 2);
  const Vec s = singular_values(got);
  EXPECT_LE(s(2), 1e-9);
  const Vec sx = singular_values(x);
  EXPECT_NEAR(s(0), sx(0) - 0.1, 1e-9);
  EXPECT_NEAR(s(1), sx(1) - 0.1, 1e-9);
  EXPECT_THROW(shrink(x, -1.0), InvalidParameter);
}

TEST(Complete, FullAndEmpty) {
  Rng rng(7);
  const GroundTruth g = gen_random_orthogonal(8, 2, default_sigma(2), rng);
  const SolveResult full = complete(sample_bernoulli(8, 1.0, rng), g.M, {});
  EXPECT_TRUE(full.converged);
  EXPECT_EQ(full.Xhat, g.M);
  const SolveResult empty = complete(sample_uniform(8, 0, rng), g.M, {});
  EXPECT_TRUE(empty.Xhat.isZero(0.0));
  EXPECT_TRUE(empty.converged);
}

TEST(Complete, RecoversRankOne) {
  Rng rng(8);
  const Index n = 16;
  const GroundTruth g = gen_random_orthogonal(n, 1, default_sigma(1), rng);
  const SampleSet s = sample_uniform(n, std::uint64_t(0.6 * n * n), rng);
  const SolveResult res = complete(s, g.M, {});
  EXPECT_TRUE(res.converged);
  EXPECT_TRUE(recovered(g.M, res.Xhat).recovered) << recovered(g.M, res.Xhat).relerr;
  EXPECT_NEAR(res.nuclear_value, nuclear_norm(res.Xhat), 1e-8);
}

TEST(Complete, FeasibleWhenConverged) {
  Rng rng(9);
  const Index n = 30;
  for (int t = 0; t < 3; ++t) {
    const GroundTruth g = gen_random_orthogonal(n, 2, default_sigma(2), rng);
    const SampleSet s = sample_bernoulli(n, 0.5, rng);
    const SolveResult res = complete(s, g.M, {});
    ASSERT_TRUE(res.converged);
    EXPECT_LE(project_omega(res.Xhat - g.M, s).norm(), 1e-7);
    EXPECT_LE(res.feas_resid, 1e-7);
    // The target is feasible, so the minimum cannot exceed its norm by much.
    EXPECT_LE(nuclear_norm(res.Xhat), nuclear_norm(g.M) * (1 + 1e-4));
  }
}

TEST(Complete, UnsampledBlockRowIsLost) {
  const BlockModelSpec spec = make_block_spec(12, 2, 3.0);
  ASSERT_EQ(spec.ell, 2);
  Rng rng(10);
  Vec sigma(2);
  sigma << 0.9, 0.6;
  const GroundTruth g = gen_lower_bound_block(spec, sigma, rng);
  std::vector<Entry> omega;
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j)
      if (!(i == 0 && j < 2)) omega.push_back({i, j});
  const SampleSet s(12, 12, omega, SamplingModel::Uniform, double(omega.size()) / 144, omega.size());
  const SolveResult res = complete(s, g.M, {});
  EXPECT_GE(recovered(g.M, res.Xhat).relerr, 1e-2);
  EXPECT_FALSE(recovered(g.M, res.Xhat).recovered);
}

TEST(Complete, IterationCapReported) {
  Rng rng(11);
  const GroundTruth g = gen_random_orthogonal(20, 2, default_sigma(2), rng);
  SolverParams p;
  p.max_iter = 1;
  const SolveResult res = complete(sample_bernoulli(20, 0.5, rng), g.M, p);
  EXPECT_FALSE(res.converged);
  EXPECT_EQ(res.iters, 1);
}

TEST(Complete, DefaultsAndDeterminism) {
  Rng rng(12);
  const Index n = 20;
  const GroundTruth g = gen_random_orthogonal(n, 1, default_sigma(1), rng);
  const SampleSet s = sample_bernoulli(n, 0.4, rng);
  const SolveResult a = complete(s, g.M, {});
  const SolveResult b = complete(s, g.M, {});
  EXPECT_EQ(a.Xhat, b.Xhat);
  const double p = double(s.size()) / double(n * n);
  EXPECT_NEAR(a.tau, 0.05 * op_norm(project_omega(g.M, s)) / p, 1e-12 * a.tau);

  SolverParams svt;
  svt.method = SolverMethod::Svt;
  const SolveResult c = complete(s, g.M, svt);
  double mean_abs = 0;
  for (const auto& e : s.omega()) mean_abs += std::abs(g.M(e.row, e.col));
  mean_abs /= double(s.size());
  EXPECT_NEAR(c.tau, 5.0 * n * mean_abs, 1e-12 * c.tau);
  EXPECT_NEAR(c.step, std::min(1.2 / p, 1.9), 1e-12);
}

TEST(Complete, MatchesLongRunOracle) {
  Rng rng(14);
  const Index n = 16;
  const GroundTruth g = gen_random_orthogonal(n, 1, default_sigma(1), rng);
  const SampleSet s = sample_bernoulli(n, 0.6, rng);
  SolverParams tight;
  tight.tol_feas = 1e-10;
  tight.tol_obj = 1e-12;
  tight.max_iter = 100000;
  const SolveResult ref = complete(s, g.M, tight);
  const SolveResult got = complete(s, g.M, {});
  ASSERT_TRUE(got.converged);
  EXPECT_LE((got.Xhat - ref.Xhat).norm() / g.M.norm(), 1e-4);
}

TEST(Complete, SvtStopsWhenFeasible) {
  Rng rng(15);
  const Index n = 20;
  const GroundTruth g = gen_random_orthogonal(n, 1, default_sigma(1), rng);
  const SampleSet s = sample_bernoulli(n, 0.7, rng);
  SolverParams p;
  p.method = SolverMethod::Svt;
  p.max_iter = 20000;
  const SolveResult res = complete(s, g.M, p);
  ASSERT_TRUE(res.converged);
  EXPECT_LE(project_omega(res.Xhat - g.M, s).norm(), 1e-7);
  EXPECT_THROW(parse_solver_method("newton"), InvalidParameter);
  EXPECT_EQ(parse_solver_method(to_string(SolverMethod::Svt)), SolverMethod::Svt);
}

TEST(Complete, RejectsBadParams) {
  Rng rng(13);
  const SampleSet s = sample_bernoulli(5, 0.5, rng);
  SolverParams p;
  p.max_iter = 0;
  EXPECT_THROW(complete(s, Mat::Ones(5, 5), p), InvalidParameter);
  EXPECT_THROW(complete(s, Mat::Ones(4, 5), {}), InvalidParameter);
}

TEST(Recovered, Normalization) {
  const Mat m = Mat::Zero(3, 3);
  Mat x = Mat::Zero(3, 3);
  x(0, 0) = 5e-5;
  EXPECT_TRUE(recovered(m, x).recovered);
  x(0, 0) = 2e-4;
  EXPECT_FALSE(recovered(m, x).recovered);
  const Mat big = Mat::Constant(2, 2, 50.0);  // ||big||_F = 100
  Mat y = big;
  y(1, 1) += 5e-3;
  EXPECT_NEAR(recovered(big, y).relerr, 5e-5, 1e-12);
  EXPECT_TRUE(recovered(big, y).recovered);
  EXPECT_THROW(recovered(m, Mat::Zero(2, 3)), InvalidParameter);
}

}  // namespace
}  // namespace mclab
