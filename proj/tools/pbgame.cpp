// Command-line front end: simulate, solve, bounds, replay, verify.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

#include "pbgame/audit.hpp"
#include "pbgame/harness.hpp"
#include "pbgame/solver.hpp"

using namespace pbgame;

namespace {

int run_simulate(ExperimentSpec spec, const std::string& spec_file, const std::string& retention,
                 CLI::App& cmd) {
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in) throw ConfigError("cannot open spec file '" + spec_file + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    ExperimentSpec from_file = spec_from_json(j);
    // Flags given on the command line win over the file.
    auto given = [&](const char* name) { return cmd.count(name) > 0; };
    if (!given("--n")) spec.n = from_file.n;
    if (!given("--k")) spec.k = from_file.k;
    if (!given("--p")) spec.p = from_file.p;
    if (!given("--b")) spec.b = from_file.b;
    if (!given("--painter")) spec.painter = from_file.painter;
    if (!given("--builder")) spec.builder = from_file.builder;
    if (!given("--trials")) spec.trials = from_file.trials;
    if (!given("--seed")) spec.seed = from_file.seed;
    if (!given("--out")) spec.out = from_file.out;
    if (!given("--checks")) spec.checks = from_file.checks;
    if (!given("--retention")) spec.retention = from_file.retention;
    spec.workers = from_file.workers;
    spec.constants = from_file.constants;
  }
  if (cmd.count("--retention")) spec.retention = retention_from_string(retention);
  apply_environment(spec);
  const BatchResult result = simulate_batch(spec);
  std::cout << summary_csv(result);
  for (const auto& t : result.trials) {
    if (!t.error.empty()) {
      std::cerr << "cell " << t.cell << " trial " << t.trial << " failed: " << t.error << "\n";
    }
  }
  return 0;
}

int run_solve(int max_n, int max_k, int p, int b) {
  std::cout << "n,p,b,k,winner\n";
  for (const auto& row : solve_table(max_n, max_k, p, b)) {
    std::cout << row.config.n << ',' << p << ',' << b << ',' << row.config.k << ',' << to_string(row.winner)
              << '\n';
  }
  std::cout << "\nn,p,b,k_min\n";
  for (int n = 2; n <= max_n; ++n) std::cout << n << ',' << p << ',' << b << ',' << k_min_exact(n, p, b) << '\n';
  return 0;
}

int run_replay(const std::string& file, const std::string& checks) {
  const AuditReport report = audit_file(file, checks);
  std::cout << report.summary() << "\n";
  return report.passed() ? 0 : 1;
}

int run_verify(const std::string& dir, const std::string& checks) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".jsonl") continue;
    if (entry.path().filename() == "trials.jsonl") continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int failed = 0;
  for (const auto& f : files) {
    const AuditReport report = audit_file(f, checks);
    if (!report.passed()) {
      ++failed;
      std::cout << report.summary() << "\n";
    }
  }
  std::cout << files.size() << " transcripts, " << files.size() - static_cast<std::size_t>(failed) << " passed, "
            << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painter-Builder colouring game toolkit"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string spec_file;
  std::string retention = "none";
  std::string out;
  auto* sim = app.add_subcommand("simulate", "run a batch of seeded games");
  sim->add_option("spec", spec_file, "experiment spec (JSON)");
  sim->add_option("--n", spec.n, "vertex counts")->delimiter(',');
  sim->add_option("--k", spec.k, "palette sizes")->delimiter(',');
  sim->add_option("--p", spec.p, "Painter biases")->delimiter(',');
  sim->add_option("--b", spec.b, "Builder biases")->delimiter(',');
  sim->add_option("--painter", spec.painter, "random-greedy | biased-weighted | two-for-one | first-fit");
  sim->add_option("--builder", spec.builder, "random | logarithmic | biased-clique");
  sim->add_option("--trials", spec.trials, "trials per cell");
  sim->add_option("--seed", spec.seed, "master seed");
  sim->add_option("--out", out, "output directory");
  sim->add_option("--retention", retention, "keep transcripts: none | all | losses");
  sim->add_option("--checks", spec.checks, "audit checks per trial, or none");

  int max_n = 5;
  int max_k = 4;
  int solve_p = 1;
  int solve_b = 1;
  auto* solve = app.add_subcommand("solve", "exact winners for small boards");
  solve->add_option("--max-n", max_n);
  solve->add_option("--max-k", max_k);
  solve->add_option("--p", solve_p);
  solve->add_option("--b", solve_b);

  std::int64_t bounds_n = 100;
  std::int64_t bounds_b = 1;
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds for n and b");
  bounds->add_option("--n", bounds_n)->required();
  bounds->add_option("--b", bounds_b);

  std::string file;
  std::string checks = "auto";
  auto* replay = app.add_subcommand("replay", "replay and audit one transcript");
  replay->add_option("--file", file)->required();
  replay->add_option("--checks", checks, "comma-separated checks, all, or auto (what the Builder promises)");

  std::string dir;
  auto* verify = app.add_subcommand("verify", "audit every transcript under a directory");
  verify->add_option("dir", dir)->required();
  verify->add_option("--checks", checks, "comma-separated checks, all, or auto (what the Builder promises)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      if (!out.empty()) spec.out = out;
      return run_simulate(spec, spec_file, retention, *sim);
    }
    if (*solve) return run_solve(max_n, max_k, solve_p, solve_b);
    if (*bounds) {
      std::cout << format_bounds(bounds_report(bounds_n, bounds_b));
      return 0;
    }
    if (*replay) return run_replay(file, checks);
    if (*verify) return run_verify(dir, checks);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
