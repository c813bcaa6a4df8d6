#include "shadowlp/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shadowlp/analysis.hpp"
#include "shadowlp/errors.hpp"
#include "shadowlp/lp_model.hpp"
#include "shadowlp/solver.hpp"

namespace shadowlp::cli {

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SHADOW_SIMPLEX_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

InputLP load_mps(const std::string& path, double big_bound) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  MpsOptions opts;
  opts.big_bound = big_bound;
  return parse_mps(in, opts);
}

void print_human_report(const SolveReport& report, std::ostream& out) {
  out << "status:          " << to_string(report.status) << "\n";
  if (report.status == SolveStatus::Optimal) {
    out << "objective:       " << human(report.objective_value) << "\n";
    out << "certificate:     "
        << (report.certificate_check.passed ? "pass" : "FAIL") << "\n";
  }
  if (report.infeasible_row != SIZE_MAX)
    out << "first infeasible row: " << report.infeasible_row << "\n";
  std::size_t p1 = 0;
  for (std::size_t p : report.phase1_pivots) p1 += p;
  out << "phase 1 pivots:  " << p1 << "\n";
  out << "phase 2 pivots:  " << report.phase2_pivots << "\n";
  out << "rejections:      " << report.rejections << "\n";
  out << "seed:            " << report.seed << "\n";
  out << "time:            " << human(report.elapsed_seconds) << " s\n";
  if (!report.failure_message.empty()) out << "failure:         " << report.failure_message << "\n";
}

int exit_code(const SolveReport& report) {
  switch (report.status) {
    case SolveStatus::Optimal: return kOk;
    case SolveStatus::Infeasible: return kInfeasible;
    default: return kNumerical;
  }
}

int run_solve(const std::string& path, SolverConfig cfg, double big_bound,
              const std::string& format, const std::string& trace_path,
              std::ostream& out) {
  InputLP lp = load_mps(path, big_bound);
  SolveReport report = solve(lp, cfg);
  if (format == "human")
    print_human_report(report, out);
  else
    out << report_to_json(report) << "\n";
  if (!trace_path.empty()) {
    std::ofstream trace(trace_path);
    trace << "run,pivot,leaving,entering,lambda,t,objective,aux\n";
    auto dump = [&trace](const std::string& run, const PathTrace& path) {
      double t = 0.0;
      std::size_t i = 0;
      for (const PivotRecord& r : path.records) {
        t += r.lambda;
        trace << run << "," << i++ << "," << r.leaving << "," << r.entering << ","
              << full(r.lambda) << "," << full(t) << "," << full(r.objective_value)
              << "," << full(r.aux_value) << "\n";
      }
    };
    for (std::size_t k = 0; k < report.phase1_traces.size(); ++k)
      dump("p1-" + std::to_string(k), report.phase1_traces[k]);
    dump("p2", report.phase2_trace);
  }
  return exit_code(report);
}

int run_experiment(std::size_t trials, std::uint64_t seed, std::size_t d_min,
                   std::size_t d_max, std::size_t n_min, std::size_t n_max,
                   SolverConfig base_cfg, std::ostream& out) {
  out << "trial,n,d,seed,phase1_pivots,phase2_pivots,certificate_pass,bound\n";
  RngState root{seed, 0};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RngState gen = root.child(trial);
    const std::size_t d = d_min + gen.next_u64() % (d_max - d_min + 1);
    const std::size_t n = n_min + gen.next_u64() % (n_max - n_min + 1);
    InputLP lp = random_dense_instance(n, d, gen);

    SolverConfig cfg = base_cfg;
    cfg.seed = root.child(trial ^ 0x5eedull).seed;
    SolveReport report = solve(lp, cfg);

    std::string bound = "";
    std::string cert = "";
    if (report.status == SolveStatus::Optimal) {
      cert = report.certificate_check.passed ? "1" : "0";
      RngState mw_rng = gen.child(1);
      MeanWidthEstimate mw =
          estimate_mean_width(report.folded, 200, mw_rng, InnerSolver::Oracle);
      BoundInputs bi;
      bi.n = report.folded.rows();
      bi.d = d;
      bi.eta = cfg.feas_tol / (4.0 * std::log(static_cast<double>(n + 2 * d)));
      bi.eps = epsilon_threshold(report.folded, cfg);
      bi.mean_width = mw.mean;
      bi.big_n = estimate_N(report.folded, lp.objective, InnerSolver::Oracle);
      bound = full(pivot_bound(bi));
    }
    std::size_t p1 = 0;
    for (std::size_t p : report.phase1_pivots) p1 += p;
    out << trial << "," << n << "," << d << "," << cfg.seed << "," << p1 << ","
        << report.phase2_pivots << "," << cert << "," << bound << "\n";
  }
  return kOk;
}

int run_meanwidth(const std::string& path, std::size_t trials, std::uint64_t seed,
                  const std::string& inner_name, bool perturb, double big_bound,
                  bool csv, std::ostream& out) {
  InputLP lp = load_mps(path, big_bound);
  NormalizedLP normalized = normalize_rows(lp);
  RngState rng{seed, 0};
  int rejections = 0;
  FoldedLP folded;
  if (perturb) {
    PerturbationParams params =
        PerturbationParams::from_tolerances(1e-6, 1e-6, lp.num_rows, lp.num_cols);
    PerturbedBounds pb = sample_perturbed_bounds(normalized, params, rng);
    rejections = pb.rejections;
    folded = fold_bounds(normalized, pb.lower, pb.upper, pb.rhs);
  } else {
    folded = fold_bounds(normalized, lp.lower, lp.upper, normalized.lp.b);
  }
  InnerSolver inner =
      inner_name == "oracle" ? InnerSolver::Oracle : InnerSolver::TwoPhase;
  RngState trial_rng = rng.child(1);
  MeanWidthEstimate est = estimate_mean_width(folded, trials, trial_rng, inner);
  if (csv) {
    out << "trial,direction_seed,support,pivots\n";
    for (std::size_t i = 0; i < est.samples.size(); ++i)
      out << est.trial_ids[i] << "," << trial_rng.child(est.trial_ids[i]).seed << ","
          << full(est.samples[i]) << "," << est.pivots[i] << "\n";
  } else {
    nlohmann::ordered_json j;
    j["mean"] = est.mean;
    j["trials"] = est.trials;
    j["failures"] = est.failures;
    j["inner"] = inner_name;
    j["perturbed"] = perturb;
    j["rejections"] = rejections;
    j["seed"] = seed;
    out << j.dump(2) << "\n";
  }
  return kOk;
}

int run_bound(std::size_t n, std::size_t d, double m, double eta, double eps,
              double big_n, double big_l, const std::string& format,
              std::ostream& out) {
  BoundInputs bi{n, d, eta, eps, m, big_n, big_l};
  const double value = pivot_bound(bi);
  const double sharp = pivot_bound_sharp(bi);
  if (format == "human") {
    out << "pivot bound:    " << human(value) << "\n";
    out << "sharp variant:  " << human(sharp) << "\n";
  } else {
    nlohmann::ordered_json j;
    j["bound"] = value;
    j["sharp_variant"] = sharp;
    j["inputs"] = {{"n", n},       {"d", d},     {"m", m},    {"eta", eta},
                   {"eps", eps},   {"bigN", big_n}, {"l", big_l}};
    out << j.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Two-phase shadow-vertex simplex solver with bound perturbations.\n"
      "Defaults: feastol = opttol = 1e-6 (the common solver default) and a\n"
      "basis condition bound kappa = 1e12."};
  app.require_subcommand(1);

  // solve
  std::string solve_path, solve_format = "json", trace_path;
  SolverConfig cfg;
  cfg.seed = default_seed();
  double big_bound = 1e4;
  std::string epsilon_mode = "kappa";
  auto* solve_cmd = app.add_subcommand("solve", "Solve an MPS file");
  solve_cmd->add_option("input", solve_path, "MPS file")->required();
  solve_cmd->add_option("--feastol", cfg.feas_tol, "primal feasibility tolerance");
  solve_cmd->add_option("--opttol", cfg.opt_tol, "optimality tolerance");
  solve_cmd->add_option("--kappa", cfg.kappa, "basis condition bound for epsilon");
  solve_cmd->add_option("--seed", cfg.seed, "rng seed (env SHADOW_SIMPLEX_SEED)");
  solve_cmd->add_option("--max-pivots", cfg.max_pivots, "pivot budget per run");
  solve_cmd->add_option("--bigbound", big_bound, "replacement for infinite bounds");
  solve_cmd->add_option("--epsilon-mode", epsilon_mode, "kappa|exact")
      ->check(CLI::IsMember({"kappa", "exact"}));
  solve_cmd->add_option("--format", solve_format, "json|human")
      ->check(CLI::IsMember({"json", "human"}));
  solve_cmd->add_option("--trace", trace_path, "write the pivot trace CSV here");

  // experiment
  std::size_t trials = 100, d_min = 2, d_max = 4, n_min = 2, n_max = 10;
  std::uint64_t exp_seed = default_seed();
  auto* exp_cmd = app.add_subcommand("experiment", "Random ensemble, CSV per trial");
  exp_cmd->add_option("--trials", trials, "number of instances");
  exp_cmd->add_option("--seed", exp_seed, "rng seed");
  exp_cmd->add_option("--d-min", d_min, "smallest dimension");
  exp_cmd->add_option("--d-max", d_max, "largest dimension");
  exp_cmd->add_option("--n-min", n_min, "fewest rows");
  exp_cmd->add_option("--n-max", n_max, "most rows");
  exp_cmd->add_option("--feastol", cfg.feas_tol, "primal feasibility tolerance");
  exp_cmd->add_option("--opttol", cfg.opt_tol, "optimality tolerance");

  // meanwidth
  std::string mw_path, mw_inner = "oracle";
  std::size_t mw_trials = 500;
  std::uint64_t mw_seed = default_seed();
  bool mw_perturb = false, mw_csv = false;
  auto* mw_cmd = app.add_subcommand("meanwidth", "Monte Carlo half mean width");
  mw_cmd->add_option("input", mw_path, "MPS file")->required();
  mw_cmd->add_option("--trials", mw_trials, "number of direction samples");
  mw_cmd->add_option("--seed", mw_seed, "rng seed");
  mw_cmd->add_option("--inner", mw_inner, "oracle|twophase")
      ->check(CLI::IsMember({"oracle", "twophase"}));
  mw_cmd->add_flag("--perturb", mw_perturb, "perturb bounds before measuring");
  mw_cmd->add_flag("--csv", mw_csv, "per-trial CSV instead of the JSON summary");
  mw_cmd->add_option("--bigbound", big_bound, "replacement for infinite bounds");

  // bound
  std::size_t b_n = 0, b_d = 0;
  double b_m = 0, b_eta = 0, b_eps = 0, b_bigN = 0, b_l = 1.0;
  std::string b_format = "human";
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate the pivot-count bound");
  bound_cmd->add_option("--n", b_n, "row count")->required();
  bound_cmd->add_option("--d", b_d, "dimension")->required();
  bound_cmd->add_option("--m", b_m, "half mean width M")->required();
  bound_cmd->add_option("--eta", b_eta, "perturbation scale")->required();
  bound_cmd->add_option("--eps", b_eps, "truncation threshold")->required();
  bound_cmd->add_option("--bigN", b_bigN, "max absolute objective value")->required();
  bound_cmd->add_option("--l", b_l, "auxiliary distribution rate L");
  bound_cmd->add_option("--format", b_format, "json|human")
      ->check(CLI::IsMember({"json", "human"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      cfg.epsilon_mode = epsilon_mode == "exact" ? EpsilonMode::ExactEnumeration
                                                 : EpsilonMode::KappaHeuristic;
      return run_solve(solve_path, cfg, big_bound, solve_format, trace_path, out);
    }
    if (exp_cmd->parsed())
      return run_experiment(trials, exp_seed, d_min, d_max, n_min, n_max, cfg, out);
    if (mw_cmd->parsed())
      return run_meanwidth(mw_path, mw_trials, mw_seed, mw_inner, mw_perturb,
                           big_bound, mw_csv, out);
    if (bound_cmd->parsed())
      return run_bound(b_n, b_d, b_m, b_eta, b_eps, b_bigN, b_l, b_format, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  err << "no subcommand\n";
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace shadowlp::cli
