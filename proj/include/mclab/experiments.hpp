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

// Config-driven Monte-Carlo sweeps over (n, r, m) grids and their CSV / SVG
// output. Every trial draws from its own substream keyed by the grid cell
// and the trial index, so results do not depend on the thread count.

#ifndef MCLAB_EXPERIMENTS_HPP_
#define MCLAB_EXPERIMENTS_HPP_

#include "mclab/certificate.hpp"
#include "mclab/core.hpp"
#include "mclab/geometry.hpp"
#include "mclab/models.hpp"
#include "mclab/sampling.hpp"
#include "mclab/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace mclab {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class ExperimentKind { Phase, Certificate, LowerBound, ModelEquiv, Moments };

inline const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Phase: return "phase";
    case ExperimentKind::Certificate: return "certificate";
    case ExperimentKind::LowerBound: return "lower_bound";
    case ExperimentKind::ModelEquiv: return "model_equiv";
    case ExperimentKind::Moments: return "moments";
  }
  return "?";
}

inline ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "phase") return ExperimentKind::Phase;
  if (s == "certificate" || s == "cert") return ExperimentKind::Certificate;
  if (s == "lower_bound" || s == "lower") return ExperimentKind::LowerBound;
  if (s == "model_equiv" || s == "equiv") return ExperimentKind::ModelEquiv;
  if (s == "moments") return ExperimentKind::Moments;
  throw InvalidParameter("unknown experiment kind '" + s + "'");
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Phase;
  std::vector<Index> n_grid;
  std::vector<Index> r_grid;
  std::vector<double> m_grid;  // sample budgets; exclusive with p_grid
  std::vector<double> p_grid;
  ModelKind model = ModelKind::RandomOrthogonal;
  SamplingModel sampling = SamplingModel::Bernoulli;
  int trials = 0;  // 0: per-kind default
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string format = "csv";

  double tol = kRecoveryTol;  // recovery threshold on relerr
  SolverParams solver;

  // certificate
  std::string cert_method = "neumann";
  int cert_k_max = 500;
  double cert_series_tol = 1e-12;
  double cert_tol = 1e-8;  // ||P_T(Y) - E||_F acceptance
  bool cross_check = false;

  // model knobs
  std::vector<double> mu0_grid{1.0};
  double mu_b_cap = 0;  // 0: 3 log n
  bool signs = true;
  bool couple = false;
  bool with_replacement = false;

  // lower_bound
  double delta = 0.1;

  // model_equiv: Bernoulli rate = equiv_p_factor * m / n^2
  double equiv_p_factor = 1.0;

  // moments
  std::vector<int> j_grid{1};
  std::vector<int> k_grid{0};

  bool timing = false;  // wall_ms is 0 unless set, keeping output byte-stable

  int effective_trials() const {
    if (trials > 0) return trials;
    switch (kind) {
      case ExperimentKind::Certificate: return 200;
      case ExperimentKind::LowerBound: return 10000;
      case ExperimentKind::Moments: return 200;
      default: return 50;
    }
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0') throw InvalidParameter("config: bad number for " + key + ": '" + v + "'");
  return d;
}

inline long long to_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0') throw InvalidParameter("config: bad integer for " + key + ": '" + v + "'");
  return x;
}

inline std::uint64_t to_uint64(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || *end != '\0')
    throw InvalidParameter("config: bad unsigned integer for " + key + ": '" + v + "'");
  return x;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw InvalidParameter("config: bad boolean for " + key + ": '" + v + "'");
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& v, F conv) {
  std::vector<T> out;
  for (const auto& item : split(v, ',')) {
    if (item.empty()) throw InvalidParameter("config: empty list item in " + key);
    out.push_back(static_cast<T>(conv(key, item)));
  }
  return out;
}

}  // namespace detail

// Applies one key=value assignment.
inline void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& v) {
  using namespace detail;
  if (key == "kind") c.kind = parse_experiment_kind(v);
  else if (key == "n_grid") c.n_grid = to_list<Index>(key, v, to_int);
  else if (key == "r_grid") c.r_grid = to_list<Index>(key, v, to_int);
  else if (key == "m_grid") c.m_grid = to_list<double>(key, v, to_double);
  else if (key == "p_grid") c.p_grid = to_list<double>(key, v, to_double);
  else if (key == "model") c.model = parse_model_kind(v);
  else if (key == "sampling") c.sampling = parse_sampling_model(v);
  else if (key == "trials") c.trials = int(to_int(key, v));
  else if (key == "seed") c.seed = to_uint64(key, v);
  else if (key == "threads") c.threads = int(to_int(key, v));
  else if (key == "out") c.out = v;
  else if (key == "format") c.format = v;
  else if (key == "tol") c.tol = to_double(key, v);
  else if (key == "solver") c.solver.method = parse_solver_method(v);
  else if (key == "tau") c.solver.tau = to_double(key, v);
  else if (key == "step") c.solver.step = to_double(key, v);
  else if (key == "tol_feas") c.solver.tol_feas = to_double(key, v);
  else if (key == "tol_obj") c.solver.tol_obj = to_double(key, v);
  else if (key == "max_iter") c.solver.max_iter = int(to_int(key, v));
  else if (key == "rank_cap") c.solver.rank_cap = Index(to_int(key, v));
  else if (key == "cert_method") c.cert_method = v;
  else if (key == "cert_k_max") c.cert_k_max = int(to_int(key, v));
  else if (key == "cert_series_tol") c.cert_series_tol = to_double(key, v);
  else if (key == "cert_tol") c.cert_tol = to_double(key, v);
  else if (key == "cross_check") c.cross_check = to_bool(key, v);
  else if (key == "mu0_grid") c.mu0_grid = to_list<double>(key, v, to_double);
  else if (key == "mu_b_cap") c.mu_b_cap = to_double(key, v);
  else if (key == "signs") c.signs = to_bool(key, v);
  else if (key == "couple") c.couple = to_bool(key, v);
  else if (key == "with_replacement") c.with_replacement = to_bool(key, v);
  else if (key == "delta") c.delta = to_double(key, v);
  else if (key == "equiv_p_factor") c.equiv_p_factor = to_double(key, v);
  else if (key == "j_grid") c.j_grid = to_list<int>(key, v, to_int);
  else if (key == "k_grid") c.k_grid = to_list<int>(key, v, to_int);
  else if (key == "timing") c.timing = to_bool(key, v);
  else throw InvalidParameter("config: unknown key '" + key + "'");
}

// "key=value" as given to --set.
inline void apply_override(ExperimentConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidParameter("config: expected key=value, got '" + assignment + "'");
  set_config_value(c, detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)));
}

inline void validate(const ExperimentConfig& c) {
  require(!c.n_grid.empty(), "config: n_grid must be nonempty");
  for (Index n : c.n_grid) require(n >= 1, "config: n must be >= 1");
  if (c.kind != ExperimentKind::LowerBound || !c.r_grid.empty()) {
    require(!c.r_grid.empty(), "config: r_grid must be nonempty");
    for (Index r : c.r_grid) require(r >= 1, "config: r must be >= 1");
  }
  require(c.m_grid.empty() || c.p_grid.empty(), "config: give m_grid or p_grid, not both");
  require(!c.m_grid.empty() || !c.p_grid.empty(), "config: m_grid or p_grid must be nonempty");
  for (double m : c.m_grid) require(m >= 0, "config: m must be >= 0");
  for (double p : c.p_grid) require(p > 0 && p <= 1, "config: p must lie in (0, 1]");
  require(c.trials >= 0, "config: trials must be >= 1");
  require(c.threads >= 1, "config: threads must be >= 1");
  require(c.format == "csv" || c.format == "svg", "config: format must be csv or svg");
  require(c.cert_method == "neumann" || c.cert_method == "solve",
          "config: cert_method must be neumann or solve");
  require(!c.mu0_grid.empty(), "config: mu0_grid must be nonempty");
  require(c.delta > 0 && c.delta < 0.5, "config: delta must lie in (0, 1/2)");
  require(c.equiv_p_factor > 0, "config: equiv_p_factor must be positive");
  require(!c.j_grid.empty() && !c.k_grid.empty(), "config: j_grid and k_grid must be nonempty");
}

inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config line " + std::to_string(lineno) + ": expected key=value");
    set_config_value(c, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("config: cannot open '" + path + "'");
  return parse_config(in);
}

// ---------------------------------------------------------------------------
// Rows
// ---------------------------------------------------------------------------

struct ExperimentRow {
  std::string kind;
  Index n = 0;
  Index r = 0;
  long long m = 0;
  std::string model;
  std::string sampling;
  double p = kNaN;
  int j = 0;
  int k = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = kNaN;
  double wilson_lo = kNaN;
  double wilson_hi = kNaN;
  double mean_relerr = kNaN;
  double mean_mu0 = kNaN;
  double mean_mu1 = kNaN;
  double mean_mu2 = kNaN;
  double mean_a_stat = kNaN;
  double mean_ptperp_norm = kNaN;
  double stat = kNaN;
  double predicted = kNaN;
  double stat2 = kNaN;
  double predicted2 = kNaN;
  double threshold = kNaN;
  int flag = 0;
  double wall_ms = 0;
};

inline const char* csv_header() {
  return "kind,n,r,m,model,sampling,p,j,k,trials,successes,success_rate,wilson_lo,wilson_hi,"
         "mean_relerr,mean_mu0,mean_mu1,mean_mu2,mean_a_stat,mean_ptperp_norm,stat,predicted,"
         "stat2,predicted2,threshold,flag,wall_ms";
}

// 95% Wilson score interval for k successes in n trials.
inline std::pair<double, double> wilson_interval(int k, int n) {
  require(n >= 1 && k >= 0 && k <= n, "wilson_interval: need 0 <= k <= n, n >= 1");
  const double z = 1.959963984540054;
  const double nn = n;
  const double ph = k / nn;
  const double denom = 1 + z * z / nn;
  const double center = (ph + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn)) / denom;
  const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace detail {

inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  using detail::fmt;
  out << csv_header() << '\n';
  for (const auto& w : rows) {
    out << w.kind << ',' << w.n << ',' << w.r << ',' << w.m << ',' << w.model << ',' << w.sampling
        << ',' << fmt(w.p) << ',' << w.j << ',' << w.k << ',' << w.trials << ',' << w.successes
        << ',' << fmt(w.success_rate) << ',' << fmt(w.wilson_lo) << ',' << fmt(w.wilson_hi) << ','
        << fmt(w.mean_relerr) << ',' << fmt(w.mean_mu0) << ',' << fmt(w.mean_mu1) << ','
        << fmt(w.mean_mu2) << ',' << fmt(w.mean_a_stat) << ',' << fmt(w.mean_ptperp_norm) << ','
        << fmt(w.stat) << ',' << fmt(w.predicted) << ',' << fmt(w.stat2) << ','
        << fmt(w.predicted2) << ',' << fmt(w.threshold) << ',' << w.flag << ','
        << fmt(w.wall_ms) << '\n';
  }
}

inline std::vector<ExperimentRow> read_csv(std::istream& in) {
  using namespace detail;
  std::string line;
  if (!std::getline(in, line) || trim(line) != csv_header())
    throw InvalidParameter("read_csv: header does not match the row schema");
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 27) throw InvalidParameter("read_csv: expected 27 fields in '" + line + "'");
    ExperimentRow w;
    std::size_t i = 0;
    const auto d = [&] { return to_double("csv", f[i++]); };
    const auto z = [&] { return to_int("csv", f[i++]); };
    w.kind = f[i++];
    w.n = Index(z());
    w.r = Index(z());
    w.m = z();
    w.model = f[i++];
    w.sampling = f[i++];
    w.p = d();
    w.j = int(z());
    w.k = int(z());
    w.trials = int(z());
    w.successes = int(z());
    w.success_rate = d();
    w.wilson_lo = d();
    w.wilson_hi = d();
    w.mean_relerr = d();
    w.mean_mu0 = d();
    w.mean_mu1 = d();
    w.mean_mu2 = d();
    w.mean_a_stat = d();
    w.mean_ptperp_norm = d();
    w.stat = d();
    w.predicted = d();
    w.stat2 = d();
    w.predicted2 = d();
    w.threshold = d();
    w.flag = int(z());
    w.wall_ms = d();
    rows.push_back(std::move(w));
  }
  return rows;
}

// Field-exact comparison; NaN equals NaN.
inline bool same_row(const ExperimentRow& a, const ExperimentRow& b) {
  const auto eq = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  return a.kind == b.kind && a.n == b.n && a.r == b.r && a.m == b.m && a.model == b.model &&
         a.sampling == b.sampling && eq(a.p, b.p) && a.j == b.j && a.k == b.k &&
         a.trials == b.trials && a.successes == b.successes && eq(a.success_rate, b.success_rate) &&
         eq(a.wilson_lo, b.wilson_lo) && eq(a.wilson_hi, b.wilson_hi) &&
         eq(a.mean_relerr, b.mean_relerr) && eq(a.mean_mu0, b.mean_mu0) &&
         eq(a.mean_mu1, b.mean_mu1) && eq(a.mean_mu2, b.mean_mu2) &&
         eq(a.mean_a_stat, b.mean_a_stat) && eq(a.mean_ptperp_norm, b.mean_ptperp_norm) &&
         eq(a.stat, b.stat) && eq(a.predicted, b.predicted) && eq(a.stat2, b.stat2) &&
         eq(a.predicted2, b.predicted2) && eq(a.threshold, b.threshold) && a.flag == b.flag &&
         eq(a.wall_ms, b.wall_ms);
}

// Success rate against m, one polyline per (n, r) series.
inline void write_svg(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  require(!rows.empty(), "write_svg: no rows");
  const double w = 640, h = 400, l = 60, rgt = 20, top = 20, bot = 50;
  double mmax = 1;
  for (const auto& row : rows) mmax = std::max(mmax, double(row.m));
  const auto sx = [&](double m) { return l + (w - l - rgt) * m / mmax; };
  const auto sy = [&](double y) { return top + (h - top - bot) * (1 - y); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::map<std::pair<Index, Index>, std::vector<const ExperimentRow*>> series;
  for (const auto& row : rows) series[{row.n, row.r}].push_back(&row);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << l << "\" y1=\"" << sy(0) << "\" x2=\"" << w - rgt << "\" y2=\"" << sy(0)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << l << "\" y1=\"" << sy(0) << "\" x2=\"" << l << "\" y2=\"" << sy(1)
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = t / 4.0;
    out << "<text x=\"" << l - 8 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">"
        << detail::fmt(y) << "</text>\n";
    const double m = mmax * t / 4.0;
    out << "<text x=\"" << sx(m) << "\" y=\"" << sy(0) + 16 << "\" text-anchor=\"middle\">"
        << detail::fmt(std::round(m)) << "</text>\n";
  }
  out << "<text x=\"" << (l + w - rgt) / 2 << "\" y=\"" << h - 10
      << "\" text-anchor=\"middle\">m</text>\n";
  out << "<text x=\"14\" y=\"" << (top + h - bot) / 2 << "\" transform=\"rotate(-90 14 "
      << (top + h - bot) / 2 << ")\" text-anchor=\"middle\">success rate</text>\n";
  int idx = 0;
  for (const auto& [key, pts] : series) {
    const char* color = palette[idx % 6];
    for (const auto* row : pts) {
      if (std::isnan(row->success_rate)) continue;
      out << "<circle cx=\"" << sx(double(row->m)) << "\" cy=\"" << sy(row->success_rate)
          << "\" r=\"4\" fill=\"" << color << "\"><title>n=" << row->n << " r=" << row->r
          << " m=" << row->m << " rate=" << detail::fmt(row->success_rate) << "</title></circle>\n";
    }
    out << "<text x=\"" << w - rgt - 4 << "\" y=\"" << top + 14 * (idx + 1)
        << "\" text-anchor=\"end\" fill=\"" << color << "\">n=" << key.first << " r=" << key.second
        << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
}

inline void emit(const std::vector<ExperimentRow>& rows, const std::string& path,
                 const std::string& format) {
  require(!rows.empty(), "emit: no rows to write");
  require(format == "csv" || format == "svg", "emit: format must be csv or svg");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("emit: cannot open '" + path + "' for writing");
  if (format == "csv") write_csv(out, rows);
  else write_svg(out, rows);
  out.flush();
  if (!out) throw Error("emit: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Trial machinery
// ---------------------------------------------------------------------------

// Runs fn(i) for i in [0, count) on `threads` workers.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct TrialOutcome {
  bool success = false;
  bool error = false;
  double relerr = kNaN;
  double mu0 = kNaN, mu1 = kNaN, mu2 = kNaN;
  double a_stat = kNaN;
  double ptperp = kNaN;
  double v1 = kNaN;  // kind-specific
  double v2 = kNaN;
  int flag = 0;
};

inline double mean_finite(const std::vector<TrialOutcome>& ts, double TrialOutcome::*field) {
  double sum = 0;
  int cnt = 0;
  for (const auto& t : ts)
    if (std::isfinite(t.*field)) {
      sum += t.*field;
      ++cnt;
    }
  return cnt ? sum / cnt : kNaN;
}

// Stream id for a grid cell; independent of grid order.
inline std::uint64_t cell_stream(ExperimentKind kind, Index n, Index r, double x, double y = 0,
                                 double z = 0) {
  std::uint64_t h = splitmix64(std::uint64_t(kind) + 0x51ed27);
  const auto mix = [&h](std::uint64_t v) { h = splitmix64(h ^ v); };
  std::uint64_t bits;
  mix(std::uint64_t(n));
  mix(std::uint64_t(r));
  std::memcpy(&bits, &x, sizeof bits);
  mix(bits);
  std::memcpy(&bits, &y, sizeof bits);
  mix(bits);
  std::memcpy(&bits, &z, sizeof bits);
  mix(bits);
  return h;
}

template <class Fn>
std::vector<TrialOutcome> run_trials(const ExperimentConfig& cfg, std::uint64_t stream, int trials,
                                     Fn&& fn) {
  std::vector<TrialOutcome> out(trials);
  const Rng base(cfg.seed, stream);
  parallel_for(trials, cfg.threads, [&](int i) {
    Rng rng = base.substream(std::uint64_t(i));
    try {
      out[i] = fn(rng);
    } catch (const Error&) {
      TrialOutcome t;
      t.error = true;
      out[i] = t;
    }
  });
  return out;
}

inline void fill_common(ExperimentRow& row, const std::vector<TrialOutcome>& ts) {
  row.trials = int(ts.size());
  row.successes = 0;
  for (const auto& t : ts) row.successes += t.success ? 1 : 0;
  row.success_rate = double(row.successes) / row.trials;
  std::tie(row.wilson_lo, row.wilson_hi) = wilson_interval(row.successes, row.trials);
  row.mean_relerr = mean_finite(ts, &TrialOutcome::relerr);
  row.mean_mu0 = mean_finite(ts, &TrialOutcome::mu0);
  row.mean_mu1 = mean_finite(ts, &TrialOutcome::mu1);
  row.mean_mu2 = mean_finite(ts, &TrialOutcome::mu2);
  row.mean_a_stat = mean_finite(ts, &TrialOutcome::a_stat);
  row.mean_ptperp_norm = mean_finite(ts, &TrialOutcome::ptperp);
}

inline GroundTruth generate_truth(const ExperimentConfig& cfg, Index n, Index r, Rng& rng) {
  const Vec sigma = default_sigma(r);
  switch (cfg.model) {
    case ModelKind::RandomOrthogonal: return gen_random_orthogonal(n, r, sigma, rng);
    case ModelKind::UniformlyBounded: {
      const Mat fam = bounded_family(n);
      UniformlyBoundedOptions opt;
      opt.signs = cfg.signs;
      opt.couple = cfg.couple;
      opt.with_replacement = cfg.with_replacement;
      return gen_uniformly_bounded(fam, fam, r, sigma, rng, opt);
    }
    case ModelKind::LowCoherence: {
      const double cap = cfg.mu_b_cap > 0 ? cfg.mu_b_cap : std::max(1.0, 3.0 * std::log(double(n)));
      return gen_low_coherence(n, r, sigma, cap, rng);
    }
    case ModelKind::Block: {
      const BlockModelSpec spec = make_block_spec(n, r, cfg.mu0_grid.front());
      return gen_lower_bound_block(spec, Vec(), rng);
    }
  }
  throw InvalidParameter("generate_truth: unknown model");
}

struct CellBudget {
  long long m;  // nominal sample count
  double p;     // Bernoulli rate
};

// Grid point to (m, p). Budgets beyond n^2 saturate.
inline CellBudget cell_budget(const ExperimentConfig& cfg, Index n, double x) {
  const double nn = double(n) * double(n);
  if (!cfg.m_grid.empty()) {
    const double m = std::min(nn, std::ceil(x));
    return {static_cast<long long>(m), rate_for_budget(n, m)};
  }
  return {static_cast<long long>(std::llround(x * nn)), x};
}

inline const std::vector<double>& budget_grid(const ExperimentConfig& cfg) {
  return cfg.m_grid.empty() ? cfg.p_grid : cfg.m_grid;
}

inline SampleSet draw_samples(SamplingModel model, Index n, const CellBudget& b, Rng& rng) {
  if (model == SamplingModel::Uniform) return sample_uniform(n, std::uint64_t(b.m), rng);
  if (b.p <= 0) return SampleSet(n, n, {}, SamplingModel::Bernoulli, b.p, 0);
  return sample_bernoulli(n, b.p, rng);
}

inline void record_incoherence(TrialOutcome& t, const TangentSpace& ts) {
  const IncoherenceReport inc = incoherence(ts);
  t.mu0 = inc.mu0;
  t.mu1 = inc.mu1;
  t.mu2 = inc.mu2;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms(bool enabled) const {
    if (!enabled) return 0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

inline ExperimentRow base_row(const ExperimentConfig& cfg, Index n, Index r, const CellBudget& b,
                              SamplingModel sampling) {
  ExperimentRow row;
  row.kind = to_string(cfg.kind);
  row.n = n;
  row.r = r;
  row.m = b.m;
  row.model = to_string(cfg.model);
  row.sampling = to_string(sampling);
  row.p = sampling == SamplingModel::Uniform ? double(b.m) / (double(n) * double(n)) : b.p;
  return row;
}

// One recovery trial: generate, sample, solve. v1 = solver iterations,
// v2 = 1 if the solver met its stopping rule.
inline TrialOutcome recovery_trial(const ExperimentConfig& cfg, Index n, Index r,
                                   const CellBudget& b, SamplingModel sampling, Rng& rng) {
  TrialOutcome t;
  const GroundTruth g = generate_truth(cfg, n, r, rng);
  record_incoherence(t, TangentSpace(g.U, g.V));
  const SampleSet s = draw_samples(sampling, n, b, rng);
  const SolveResult res = complete(s, g.M, cfg.solver);
  const RecoveryDecision d = recovered(g.M, res.Xhat, cfg.tol);
  t.success = d.recovered;
  t.relerr = d.relerr;
  t.v1 = res.iters;
  t.v2 = res.converged ? 1.0 : 0.0;
  return t;
}

// ---------------------------------------------------------------------------
// Runners
// ---------------------------------------------------------------------------

// successes = recovered trials; stat = mean solver iterations; stat2 =
// fraction of solves meeting the stopping rule; threshold = 2nr - r^2;
// flag = 1 when m is below that count.
inline std::vector<ExperimentRow> run_phase(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ExperimentRow> rows;
  const int trials = cfg.effective_trials();
  for (Index n : cfg.n_grid)
    for (Index r : cfg.r_grid)
      for (double x : budget_grid(cfg)) {
        const Stopwatch sw;
        const CellBudget b = cell_budget(cfg, n, x);
        const auto ts = run_trials(cfg, cell_stream(cfg.kind, n, r, x), trials, [&](Rng& rng) {
          return recovery_trial(cfg, n, r, b, cfg.sampling, rng);
        });
        ExperimentRow row = base_row(cfg, n, r, b, cfg.sampling);
        fill_common(row, ts);
        row.stat = mean_finite(ts, &TrialOutcome::v1);
        row.stat2 = mean_finite(ts, &TrialOutcome::v2);
        row.threshold = double(2 * n * r - r * r);
        row.flag = double(b.m) < row.threshold ? 1 : 0;
        row.wall_ms = sw.ms(cfg.timing);
        rows.push_back(std::move(row));
      }
  return rows;
}

// successes = trials passing verify_certificate; stat = mean
// lambda_min / p; stat2 = recovered rate among certified trials when
// cross_check is set; threshold = 2nr - r^2; flag = trials whose
// construction failed (a >= 1 or no convergence).
inline std::vector<ExperimentRow> run_certificate(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ExperimentRow> rows;
  const int trials = cfg.effective_trials();
  for (Index n : cfg.n_grid)
    for (Index r : cfg.r_grid)
      for (double x : budget_grid(cfg)) {
        const Stopwatch sw;
        const CellBudget b = cell_budget(cfg, n, x);
        const auto ts = run_trials(cfg, cell_stream(cfg.kind, n, r, x), trials, [&](Rng& rng) {
          TrialOutcome t;
          const GroundTruth g = generate_truth(cfg, n, r, rng);
          const TangentSpace tsp(g.U, g.V);
          record_incoherence(t, tsp);
          const SampleSet s = draw_samples(cfg.sampling, n, b, rng);
          if (s.empty()) {
            t.flag = 1;
            return t;
          }
          CertificateReport rep;
          try {
            rep = cfg.cert_method == "solve"
                      ? build_certificate_solve(tsp, s, cfg.cert_series_tol, cfg.cert_k_max)
                      : build_certificate_neumann(tsp, s, cfg.cert_k_max, cfg.cert_series_tol);
          } catch (const NumericFailure&) {
            t.a_stat = deviation_stat(tsp, s);
            t.flag = 1;
            return t;
          }
          const CertificateCheck chk = verify_certificate(tsp, s, rep, cfg.cert_tol);
          t.success = chk.certified;
          t.a_stat = chk.a_stat;
          t.ptperp = chk.ptperp_norm;
          t.v1 = chk.lambda_min / s.p();
          if (cfg.cross_check && chk.certified) {
            const SolveResult res = complete(s, g.M, cfg.solver);
            const RecoveryDecision d = recovered(g.M, res.Xhat, cfg.tol);
            t.relerr = d.relerr;
            t.v2 = d.recovered ? 1.0 : 0.0;
          }
          return t;
        });
        ExperimentRow row = base_row(cfg, n, r, b, cfg.sampling);
        fill_common(row, ts);
        row.stat = mean_finite(ts, &TrialOutcome::v1);
        row.stat2 = mean_finite(ts, &TrialOutcome::v2);
        row.threshold = double(2 * n * r - r * r);
        row.flag = 0;
        for (const auto& t : ts) row.flag += t.flag + (t.error ? 1 : 0);
        row.wall_ms = sw.ms(cfg.timing);
        rows.push_back(std::move(row));
      }
  return rows;
}

// Smallest m allowing recovery with probability 1 - delta:
// n^2 (1 - exp(-(mu0 r / n) log(n / 2 delta))).
inline double lower_bound_threshold(Index n, Index r, double mu0, double delta) {
  const double nn = double(n);
  return nn * nn * (1.0 - std::exp(-(mu0 * double(r) / nn) * std::log(nn / (2.0 * delta))));
}

struct BlockRowCounts {
  int unsampled_model_rows = 0;  // rows of the r diagonal blocks with no sample in their block
  bool any_model_row = false;
  bool any_tiled_row = false;    // same event over all n / ell diagonal blocks
};

inline BlockRowCounts count_unsampled_block_rows(const SampleSet& s, const BlockModelSpec& spec) {
  const Mat mask = s.mask();
  BlockRowCounts c;
  const Index tiles = spec.n / spec.ell;
  for (Index blk = 0; blk < tiles; ++blk)
    for (Index i = blk * spec.ell; i < (blk + 1) * spec.ell; ++i) {
      const bool hit = mask.block(i, blk * spec.ell, 1, spec.ell).sum() > 0;
      if (hit) continue;
      c.any_tiled_row = true;
      if (blk < spec.r) {
        ++c.unsampled_model_rows;
        c.any_model_row = true;
      }
    }
  return c;
}

// Per (n, r, mu0, p): successes = trials where some row of a diagonal block
// of the rank-r block model is unsampled within that block.
//   stat       empirical per-row rate pi_1
//   stat2      rate of the same event over all n / ell diagonal tiles
//   predicted  1 - (1 - (1-p)^ell)^n
//   predicted2 1 - (1 - (1-p)^ell)^(r ell)
//   threshold  m* for the configured delta; flag = 1 when m < m*
inline std::vector<ExperimentRow> run_lower_bound(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ExperimentRow> rows;
  const int trials = cfg.effective_trials();
  const std::vector<Index> r_grid = cfg.r_grid.empty() ? std::vector<Index>{1} : cfg.r_grid;
  for (Index n : cfg.n_grid)
    for (Index r : r_grid)
      for (double mu0 : cfg.mu0_grid)
        for (double x : budget_grid(cfg)) {
          const Stopwatch sw;
          const BlockModelSpec spec = make_block_spec(n, r, mu0);
          require(spec.ell * spec.r <= n, "lower_bound: blocks exceed n");
          const CellBudget b = cell_budget(cfg, n, x);
          const double mu0_measured = [&] {
            Rng g(cfg.seed, 0);
            const GroundTruth truth = gen_lower_bound_block(spec, Vec(), g);
            return incoherence(TangentSpace(truth.U, truth.V)).mu0;
          }();
          const auto ts =
              run_trials(cfg, cell_stream(cfg.kind, n, r, x, mu0), trials, [&](Rng& rng) {
                TrialOutcome t;
                const SampleSet s = draw_samples(cfg.sampling, n, b, rng);
                const BlockRowCounts c = count_unsampled_block_rows(s, spec);
                t.success = c.any_model_row;
                t.v1 = double(c.unsampled_model_rows) / double(spec.r * spec.ell);
                t.v2 = c.any_tiled_row ? 1.0 : 0.0;
                return t;
              });
          ExperimentRow row = base_row(cfg, n, r, b, cfg.sampling);
          row.model = to_string(ModelKind::Block);
          fill_common(row, ts);
          row.mean_mu0 = mu0_measured;
          row.stat = mean_finite(ts, &TrialOutcome::v1);
          row.stat2 = mean_finite(ts, &TrialOutcome::v2);
          const double pi1 = std::pow(1.0 - row.p, double(spec.ell));
          row.predicted = 1.0 - std::pow(1.0 - pi1, double(n));
          row.predicted2 = 1.0 - std::pow(1.0 - pi1, double(spec.r * spec.ell));
          row.threshold = lower_bound_threshold(n, r, mu0, cfg.delta);
          row.flag = double(b.m) < row.threshold ? 1 : 0;
          row.wall_ms = sw.ms(cfg.timing);
          rows.push_back(std::move(row));
        }
  return rows;
}

// Uniform(m) against Bernoulli(equiv_p_factor * m / n^2) on the same truth
// model. successes = uniform recoveries;
//   stat       uniform failure rate
//   stat2      Bernoulli failure rate
//   predicted  2 stat2 + 3 pooled standard errors
//   predicted2 stat / stat2 (nan when stat2 = 0)
//   threshold  Bernoulli rate used; flag = 1 when stat <= predicted
inline std::vector<ExperimentRow> run_model_equiv(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ExperimentRow> rows;
  const int trials = cfg.effective_trials();
  for (Index n : cfg.n_grid)
    for (Index r : cfg.r_grid)
      for (double x : budget_grid(cfg)) {
        const Stopwatch sw;
        const CellBudget b = cell_budget(cfg, n, x);
        const double nn = double(n) * double(n);
        const CellBudget bb{b.m, std::min(1.0, cfg.equiv_p_factor * double(b.m) / nn)};
        const std::uint64_t stream = cell_stream(cfg.kind, n, r, x, cfg.equiv_p_factor);
        const auto uni = run_trials(cfg, stream, trials, [&](Rng& rng) {
          Rng child = rng.substream(1);
          return recovery_trial(cfg, n, r, b, SamplingModel::Uniform, child);
        });
        const auto ber = run_trials(cfg, stream, trials, [&](Rng& rng) {
          Rng child = rng.substream(2);
          return recovery_trial(cfg, n, r, bb, SamplingModel::Bernoulli, child);
        });
        ExperimentRow row = base_row(cfg, n, r, b, SamplingModel::Uniform);
        fill_common(row, uni);
        int ber_ok = 0;
        for (const auto& t : ber) ber_ok += t.success ? 1 : 0;
        row.stat = 1.0 - row.success_rate;
        row.stat2 = 1.0 - double(ber_ok) / trials;
        const double pooled = (row.stat + row.stat2) / 2;
        const double se = std::sqrt(pooled * (1 - pooled) * (2.0 / trials));
        row.predicted = 2 * row.stat2 + 3 * se;
        row.predicted2 = row.stat2 > 0 ? row.stat / row.stat2 : kNaN;
        row.threshold = bb.p;
        row.flag = row.stat <= row.predicted ? 1 : 0;
        row.wall_ms = sw.ms(cfg.timing);
        rows.push_back(std::move(row));
      }
  return rows;
}

// Per (n, r, p, j, k): trace moment estimate on one drawn truth.
//   stat       mean of tr((A^T A)^j)
//   stat2      its standard error
//   predicted  moment-II bound; predicted2 moment-I bound
//   threshold  (1 - p) r / p when j = 1, k = 0, else nan
//   flag       1 when stat exceeds 10x the moment-II bound
// success columns count cells passing the 10x check (0 or 1 per row).
inline std::vector<ExperimentRow> run_moments(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ExperimentRow> rows;
  const int trials = std::max(2, cfg.effective_trials());
  for (Index n : cfg.n_grid)
    for (Index r : cfg.r_grid)
      for (double x : budget_grid(cfg))
        for (int j : cfg.j_grid)
          for (int k : cfg.k_grid) {
            const Stopwatch sw;
            const CellBudget b = cell_budget(cfg, n, x);
            Rng rng(cfg.seed, cell_stream(cfg.kind, n, r, x, j, k));
            const GroundTruth g = generate_truth(cfg, n, r, rng);
            const TangentSpace tsp(g.U, g.V);
            const MomentEstimate e = trace_moment_estimate(tsp, b.p, j, k, trials, rng);
            ExperimentRow row = base_row(cfg, n, r, b, SamplingModel::Bernoulli);
            row.j = j;
            row.k = k;
            row.trials = trials;
            const IncoherenceReport inc = incoherence(tsp);
            row.mean_mu0 = inc.mu0;
            row.mean_mu1 = inc.mu1;
            row.mean_mu2 = inc.mu2;
            row.stat = e.mean;
            row.stat2 = e.std_error;
            row.predicted = e.bound_two;
            row.predicted2 = e.bound_one;
            row.threshold = (j == 1 && k == 0) ? (1 - b.p) * double(r) / b.p : kNaN;
            row.flag = e.mean > 10 * e.bound_two ? 1 : 0;
            row.successes = row.flag ? 0 : 1;
            row.success_rate = row.successes;
            row.wall_ms = sw.ms(cfg.timing);
            rows.push_back(std::move(row));
          }
  return rows;
}

inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Phase: return run_phase(cfg);
    case ExperimentKind::Certificate: return run_certificate(cfg);
    case ExperimentKind::LowerBound: return run_lower_bound(cfg);
    case ExperimentKind::ModelEquiv: return run_model_equiv(cfg);
    case ExperimentKind::Moments: return run_moments(cfg);
  }
  throw InvalidParameter("run_experiment: unknown kind");
}

// ---------------------------------------------------------------------------
// Sweep summaries
// ---------------------------------------------------------------------------

// m at which the success rate first crosses 1/2, by linear interpolation
// between neighbouring grid points (rows sorted by m). NaN if never crossed.
inline double interpolate_m50(std::vector<ExperimentRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].success_rate < 0.5) continue;
    if (i == 0) return double(rows[0].m);
    const double y0 = rows[i - 1].success_rate, y1 = rows[i].success_rate;
    const double x0 = double(rows[i - 1].m), x1 = double(rows[i].m);
    return y1 == y0 ? x1 : x0 + (0.5 - y0) * (x1 - x0) / (y1 - y0);
  }
  return kNaN;
}

// Number of adjacent pairs (by m) where the success rate drops.
inline int monotonicity_violations(std::vector<ExperimentRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  int v = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].success_rate < rows[i - 1].success_rate) ++v;
  return v;
}

// Least-squares slope of log y on log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "loglog_slope: need >= 2 paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0 && y[i] > 0, "loglog_slope: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  require(den != 0, "loglog_slope: x values coincide");
  return (k * sxy - sx * sy) / den;
}

// Spearman rank correlation (average ranks for ties).
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "spearman: need >= 2 paired points");
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> rk(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t t = i; t <= j; ++t) rk[idx[t]] = 0.5 * double(i + j);
      i = j + 1;
    }
    return rk;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double k = double(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / k;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / k;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace mclab

#endif  // MCLAB_EXPERIMENTS_HPP_
