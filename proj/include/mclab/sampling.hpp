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

// Observation sets under the Bernoulli and uniform models, and the
// sampling operators P_Omega and Q_Omega = P_Omega / p - I.

#ifndef MCLAB_SAMPLING_HPP_
#define MCLAB_SAMPLING_HPP_

#include "mclab/core.hpp"

#include <cstdint>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mclab {

enum class SamplingModel { Bernoulli, Uniform };

inline const char* to_string(SamplingModel m) {
  return m == SamplingModel::Bernoulli ? "bernoulli" : "uniform";
}

inline SamplingModel parse_sampling_model(const std::string& s) {
  if (s == "bernoulli") return SamplingModel::Bernoulli;
  if (s == "uniform") return SamplingModel::Uniform;
  throw InvalidParameter("unknown sampling model '" + s + "'");
}

struct Entry {
  Index row;
  Index col;
  friend bool operator==(const Entry&, const Entry&) = default;
  friend auto operator<=>(const Entry&, const Entry&) = default;
};

// Observed index set. Entries are kept sorted (row-major) and unique so
// every sum over Omega runs in the same order.
class SampleSet {
 public:
  SampleSet(Index n1, Index n2, std::vector<Entry> omega, SamplingModel model, double p,
            std::uint64_t m_nominal)
      : n1_(n1), n2_(n2), omega_(std::move(omega)), model_(model), p_(p), m_nominal_(m_nominal) {
    require(n1 >= 1 && n2 >= 1, "SampleSet: dimensions must be >= 1");
    std::sort(omega_.begin(), omega_.end());
    omega_.erase(std::unique(omega_.begin(), omega_.end()), omega_.end());
    for (const auto& e : omega_)
      require(e.row >= 0 && e.row < n1 && e.col >= 0 && e.col < n2,
              "SampleSet: index out of range");
    if (model == SamplingModel::Uniform)
      require(omega_.size() == m_nominal, "SampleSet: uniform set must hold exactly m entries");
  }

  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  const std::vector<Entry>& omega() const { return omega_; }
  std::size_t size() const { return omega_.size(); }
  bool empty() const { return omega_.empty(); }
  SamplingModel model() const { return model_; }
  double p() const { return p_; }
  std::uint64_t m_nominal() const { return m_nominal_; }

  bool contains(Index i, Index j) const {
    return std::binary_search(omega_.begin(), omega_.end(), Entry{i, j});
  }

  // 0/1 indicator matrix of Omega.
  Mat mask() const {
    Mat m = Mat::Zero(n1_, n2_);
    for (const auto& e : omega_) m(e.row, e.col) = 1.0;
    return m;
  }

 private:
  Index n1_, n2_;
  std::vector<Entry> omega_;
  SamplingModel model_;
  double p_;
  std::uint64_t m_nominal_;
};

inline bool is_full(const SampleSet& s) {
  return s.size() == static_cast<std::size_t>(s.n1() * s.n2());
}

// Bernoulli rate for a nominal sample budget m on an n x n grid. Budgets at
// or above n^2 saturate at full observation.
inline double rate_for_budget(Index n, double m) {
  return std::min(1.0, m / (static_cast<double>(n) * static_cast<double>(n)));
}

inline SampleSet sample_bernoulli(Index n, double p, Rng& rng) {
  require(n >= 1, "sample_bernoulli: n must be >= 1");
  require(p > 0.0 && p <= 1.0, "sample_bernoulli: p must lie in (0, 1]");
  std::vector<Entry> omega;
  omega.reserve(static_cast<std::size_t>(p * n * n * 1.1) + 16);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (p == 1.0 || rng.bernoulli(p)) omega.push_back({i, j});
  const auto nominal = static_cast<std::uint64_t>(std::llround(p * double(n) * double(n)));
  return SampleSet(n, n, std::move(omega), SamplingModel::Bernoulli, p, nominal);
}

// Exactly m distinct entries, uniform over all m-subsets. Rejection sampling
// on linear indices when m < n^2 / 2; otherwise the complement is drawn the
// same way and inverted.
inline SampleSet sample_uniform(Index n, std::uint64_t m, Rng& rng) {
  require(n >= 1, "sample_uniform: n must be >= 1");
  const std::uint64_t total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  require(m <= total, "sample_uniform: m exceeds n^2");
  const bool complement = 2 * m >= total;
  const std::uint64_t draws = complement ? total - m : m;
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(draws * 2 + 1);
  // Draw order is recorded so the result does not depend on hash iteration.
  std::vector<std::uint64_t> order;
  order.reserve(draws);
  while (order.size() < draws) {
    const std::uint64_t k = rng.below(total);
    if (picked.insert(k).second) order.push_back(k);
  }
  std::vector<Entry> omega;
  omega.reserve(m);
  if (complement) {
    std::vector<char> excluded(total, 0);
    for (auto k : order) excluded[k] = 1;
    for (std::uint64_t k = 0; k < total; ++k)
      if (!excluded[k]) omega.push_back({Index(k / n), Index(k % n)});
  } else {
    for (auto k : order) omega.push_back({Index(k / n), Index(k % n)});
  }
  const double p = double(m) / double(total);
  return SampleSet(n, n, std::move(omega), SamplingModel::Uniform, p, m);
}

inline void check_dims(const Mat& x, const SampleSet& s, const char* who) {
  if (x.rows() != s.n1() || x.cols() != s.n2())
    throw InvalidParameter(std::string(who) + ": dimension mismatch");
}

inline Mat project_omega(const Mat& x, const SampleSet& s) {
  check_dims(x, s, "project_omega");
  Mat y = Mat::Zero(x.rows(), x.cols());
  for (const auto& e : s.omega()) y(e.row, e.col) = x(e.row, e.col);
  return y;
}

// (1/p) P_Omega(X) - X.
inline Mat q_omega(const Mat& x, const SampleSet& s) {
  check_dims(x, s, "q_omega");
  require(s.p() > 0.0, "q_omega: p must be positive");
  Mat y = -x;
  const double scale = 1.0 / s.p() - 1.0;
  for (const auto& e : s.omega()) y(e.row, e.col) = scale * x(e.row, e.col);
  return y;
}

// ---------------------------------------------------------------------------
// Text serialization: header "# n1 n2 model p m", then one "i j" line per
// entry (0-based). When observations are supplied each line carries a third
// column with the observed value.
// ---------------------------------------------------------------------------

inline void write_samples(std::ostream& out, const SampleSet& s,
                          const Mat* observed = nullptr) {
  if (observed) check_dims(*observed, s, "write_samples");
  out << "# " << s.n1() << ' ' << s.n2() << ' ' << to_string(s.model()) << ' '
      << std::setprecision(17) << s.p() << ' ' << s.m_nominal() << '\n';
  for (const auto& e : s.omega()) {
    out << e.row << ' ' << e.col;
    if (observed) out << ' ' << std::setprecision(17) << (*observed)(e.row, e.col);
    out << '\n';
  }
}

struct ParsedSamples {
  SampleSet samples;
  std::optional<Mat> observed;  // present when every line had a value column
};

inline ParsedSamples read_samples(std::istream& in) {
  std::string line;
  Index n1 = 0, n2 = 0;
  std::string model;
  double p = 0;
  std::uint64_t m = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      if (!(hs >> n1 >> n2 >> model >> p >> m))
        throw InvalidParameter("read_samples: malformed header");
      header = true;
      break;
    }
    throw InvalidParameter("read_samples: missing header");
  }
  if (!header) throw InvalidParameter("read_samples: missing header");
  std::vector<Entry> omega;
  std::vector<double> values;
  int value_lines = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Index i, j;
    if (!(ls >> i >> j)) throw InvalidParameter("read_samples: malformed entry '" + line + "'");
    double v;
    if (ls >> v) {
      values.push_back(v);
      ++value_lines;
    }
    omega.push_back({i, j});
  }
  if (value_lines != 0 && value_lines != static_cast<int>(omega.size()))
    throw InvalidParameter("read_samples: value column present on some lines only");
  std::optional<Mat> observed;
  if (value_lines > 0) {
    Mat x = Mat::Zero(n1, n2);
    for (std::size_t k = 0; k < omega.size(); ++k) {
      require(omega[k].row >= 0 && omega[k].row < n1 && omega[k].col >= 0 && omega[k].col < n2,
              "read_samples: index out of range");
      x(omega[k].row, omega[k].col) = values[k];
    }
    observed = std::move(x);
  }
  SampleSet s(n1, n2, std::move(omega), parse_sampling_model(model), p, m);
  return {std::move(s), std::move(observed)};
}

}  // namespace mclab

#endif  // MCLAB_SAMPLING_HPP_
