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

// mclab: experiment runner and single-instance tools.
//
//   mclab phase|cert|lower|equiv|moments --config FILE [--set k=v ...]
//   mclab gen --model random_orth --n 32 --r 2 --seed 7 --out truth.txt
//   mclab solve --samples obs.txt --out xhat.txt
//   mclab solve --truth truth.txt --m 400 [--sampling uniform] --out xhat.txt
//
// Exit status: 0 success, 1 configuration error, 2 numeric failure.

#include "mclab/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

struct SweepFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string format;
  std::vector<std::string> sets;
};

void add_sweep_flags(CLI::App* sub, SweepFlags& f) {
  sub->add_option("--config", f.config, "key=value config file");
  sub->add_option("--out", f.out, "output path (default: stdout)");
  sub->add_option("--seed", f.seed, "base seed");
  sub->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--format", f.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  sub->add_option("--set", f.sets, "override a config key (key=value); repeatable");
}

int run_sweep(mclab::ExperimentKind kind, const SweepFlags& f) {
  mclab::ExperimentConfig cfg;
  if (!f.config.empty()) cfg = mclab::load_config(f.config);
  cfg.kind = kind;
  for (const auto& s : f.sets) mclab::apply_override(cfg, s);
  cfg.kind = kind;
  if (f.seed) cfg.seed = *f.seed;
  if (f.threads) cfg.threads = *f.threads;
  if (!f.format.empty()) cfg.format = f.format;
  if (!f.out.empty()) cfg.out = f.out;
  mclab::validate(cfg);

  const auto rows = mclab::run_experiment(cfg);
  if (cfg.out.empty() || cfg.out == "-") {
    if (cfg.format == "csv") mclab::write_csv(std::cout, rows);
    else mclab::write_svg(std::cout, rows);
  } else {
    mclab::emit(rows, cfg.out, cfg.format);
  }
  return 0;
}

void write_matrix(std::ostream& out, const mclab::Mat& x) {
  out << x.rows() << ' ' << x.cols() << '\n' << std::setprecision(17);
  for (mclab::Index i = 0; i < x.rows(); ++i) {
    for (mclab::Index j = 0; j < x.cols(); ++j) out << (j ? " " : "") << x(i, j);
    out << '\n';
  }
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw mclab::Error("cannot open '" + path + "' for writing");
  fn(out);
  if (!out) throw mclab::Error("write to '" + path + "' failed");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mclab::InvalidParameter("cannot open '" + path + "'");
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix completion experiments"};
  app.require_subcommand(1);

  struct Sweep {
    const char* name;
    const char* help;
    mclab::ExperimentKind kind;
    SweepFlags flags;
    CLI::App* cmd = nullptr;
  };
  std::vector<Sweep> sweeps = {
      {"phase", "recovery rate over an (n, r, m) grid", mclab::ExperimentKind::Phase, {}},
      {"cert", "dual certificate rate over a grid", mclab::ExperimentKind::Certificate, {}},
      {"lower", "unsampled block-row probability", mclab::ExperimentKind::LowerBound, {}},
      {"equiv", "uniform versus Bernoulli sampling", mclab::ExperimentKind::ModelEquiv, {}},
      {"moments", "trace moment estimates", mclab::ExperimentKind::Moments, {}},
  };
  for (auto& s : sweeps) {
    s.cmd = app.add_subcommand(s.name, s.help);
    add_sweep_flags(s.cmd, s.flags);
  }

  std::string gen_model = "random_orth", gen_out;
  mclab::Index gen_n = 32, gen_r = 2;
  std::uint64_t gen_seed = 1;
  double gen_mu0 = 1, gen_mu_b_cap = 0;
  bool gen_no_signs = false;
  auto* gen = app.add_subcommand("gen", "write a ground-truth matrix");
  gen->add_option("--model", gen_model, "unif_bounded | low_coherence | random_orth | block");
  gen->add_option("--n", gen_n, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("--r", gen_r, "rank")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--mu0", gen_mu0, "block model coherence");
  gen->add_option("--mu-b-cap", gen_mu_b_cap, "low_coherence cap (0: 3 log n)");
  gen->add_flag("--no-signs", gen_no_signs, "unif_bounded without random signs");
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  std::string solve_samples, solve_truth, solve_out, solve_sampling = "bernoulli";
  double solve_m = 0, solve_p = 0;
  std::uint64_t solve_seed = 1;
  int solve_max_iter = 3000;
  std::string solve_method = "admm";
  auto* solve = app.add_subcommand("solve", "complete a sampled matrix");
  solve->add_option("--samples", solve_samples, "sample file with observed values");
  solve->add_option("--truth", solve_truth, "ground-truth file to sample from");
  solve->add_option("--m", solve_m, "sample budget when sampling a truth file");
  solve->add_option("--p", solve_p, "Bernoulli rate when sampling a truth file");
  solve->add_option("--sampling", solve_sampling, "bernoulli or uniform")
      ->check(CLI::IsMember({"bernoulli", "uniform"}));
  solve->add_option("--seed", solve_seed, "seed for sampling");
  solve->add_option("--max-iter", solve_max_iter, "solver iteration cap")->check(CLI::PositiveNumber);
  solve->add_option("--solver", solve_method, "admm or svt")->check(CLI::IsMember({"admm", "svt"}));
  solve->add_option("--out", solve_out, "completed matrix path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    for (auto& s : sweeps)
      if (s.cmd->parsed()) return run_sweep(s.kind, s.flags);

    if (gen->parsed()) {
      mclab::ExperimentConfig cfg;
      cfg.model = mclab::parse_model_kind(gen_model);
      cfg.mu0_grid = {gen_mu0};
      cfg.mu_b_cap = gen_mu_b_cap;
      cfg.signs = !gen_no_signs;
      mclab::Rng rng(gen_seed);
      const mclab::GroundTruth g = mclab::generate_truth(cfg, gen_n, gen_r, rng);
      with_output(gen_out, [&](std::ostream& o) { mclab::write_truth(o, g); });
      return 0;
    }

    if (solve->parsed()) {
      if (solve_samples.empty() == solve_truth.empty())
        throw mclab::InvalidParameter("solve: give exactly one of --samples or --truth");
      std::optional<mclab::SampleSet> samples;
      mclab::Mat observed;
      std::optional<mclab::Mat> truth;
      if (!solve_samples.empty()) {
        auto in = open_input(solve_samples);
        auto parsed = mclab::read_samples(in);
        if (!parsed.observed)
          throw mclab::InvalidParameter("solve: sample file carries no observed values");
        observed = *parsed.observed;
        samples.emplace(std::move(parsed.samples));
      } else {
        auto in = open_input(solve_truth);
        const mclab::GroundTruth g = mclab::read_truth(in);
        const mclab::Index n = g.n();
        if ((solve_m > 0) == (solve_p > 0))
          throw mclab::InvalidParameter("solve: give exactly one of --m or --p with --truth");
        mclab::Rng rng(solve_seed, 1);
        const double m = solve_m > 0 ? solve_m : solve_p * double(n) * double(n);
        if (solve_sampling == "uniform")
          samples.emplace(mclab::sample_uniform(
              n, static_cast<std::uint64_t>(std::min(std::llround(m), (long long)(n * n))), rng));
        else
          samples.emplace(mclab::sample_bernoulli(
              n, solve_p > 0 ? solve_p : mclab::rate_for_budget(n, m), rng));
        observed = mclab::project_omega(g.M, *samples);
        truth = g.M;
      }
      mclab::SolverParams params;
      params.max_iter = solve_max_iter;
      params.method = mclab::parse_solver_method(solve_method);
      const mclab::SolveResult res = mclab::complete(*samples, observed, params);
      std::cerr << "iters " << res.iters << " feas_resid " << res.feas_resid << " converged "
                << res.converged;
      if (truth) std::cerr << " relerr " << mclab::recovered(*truth, res.Xhat).relerr;
      std::cerr << '\n';
      with_output(solve_out, [&](std::ostream& o) { write_matrix(o, res.Xhat); });
      return res.converged ? 0 : kExitNumeric;
    }
  } catch (const mclab::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mclab::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const mclab::DegenerateInput& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const mclab::GenerationFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const mclab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
