#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbgame/audit.hpp"
#include "pbgame/builder.hpp"
#include "pbgame/match.hpp"

namespace pbgame {

enum class Retention { None, All, Losses };
std::string to_string(Retention retention);
Retention retention_from_string(const std::string& text);

/// A grid of configurations, one Painter-Builder pairing and a trial count per
/// cell. Seeds come from the master seed and the trial's coordinates.
struct ExperimentSpec {
  std::vector<int> n{16};
  std::vector<int> k{5};
  std::vector<int> p{1};
  std::vector<int> b{1};
  std::string painter = "random-greedy";
  std::string builder = "random";
  std::uint64_t seed = 1;
  int trials = 1;
  Retention retention = Retention::None;
  std::filesystem::path out;  ///< empty: no files written
  BuilderConstants constants;
  std::string checks = "auto";  ///< audit every trial with these checks; "none" skips
  int workers = 1;
};

/// Throws ConfigError on an empty grid, a bad cell, unknown agents or
/// trials < 1.
void validate(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);
/// PBGAME_OUT_DIR replaces spec.out, PBGAME_WORKERS replaces spec.workers.
void apply_environment(ExperimentSpec& spec);

std::vector<GameConfig> cells_of(const ExperimentSpec& spec);

struct TrialSeeds {
  std::uint64_t painter = 0;
  std::uint64_t builder = 0;
};
TrialSeeds trial_seeds(std::uint64_t master, const GameConfig& config, int trial);

struct TrialResult {
  std::size_t cell = 0;
  int trial = 0;
  GameConfig config;
  TrialSeeds seeds;
  GameResult game;
  std::optional<bool> audit_passed;  ///< unset when auditing is off or the game failed
  std::string error;                 ///< agent failure; the game result is then meaningless
  std::optional<std::string> transcript_path;
};

struct CellSummary {
  GameConfig config;
  std::string painter;
  std::string builder;
  int trials = 0;
  int painter_wins = 0;
  int builder_wins = 0;
  int failures = 0;
  double mean_rounds = 0.0;
  int audits_passed = 0;
};

struct BatchResult {
  std::vector<CellSummary> cells;
  std::vector<TrialResult> trials;
};

/// Plays one trial, optionally keeping its transcript.
TrialResult run_trial(const ExperimentSpec& spec, std::size_t cell, const GameConfig& config, int trial,
                      Transcript* keep = nullptr);

/// Runs every trial of every cell on spec.workers threads. Results do not
/// depend on the worker count. Writes summary.csv, trials.jsonl and retained
/// transcripts under spec.out when it is set.
BatchResult simulate_batch(const ExperimentSpec& spec);

std::string summary_csv(const BatchResult& result);
std::string trials_jsonl(const BatchResult& result);

// ---------------------------------------------------------------------------
// Statistics

/// One-sided normal tail beyond 4 standard deviations.
double four_sigma_tail();
/// Smallest c with P[Binomial(trials, p) >= c] <= alpha.
std::int64_t binomial_critical_count(std::int64_t trials, double p, double alpha);
/// Passes when `count` stays below the critical count for rate p.
bool within_binomial_margin(std::int64_t count, std::int64_t trials, double p, double alpha = four_sigma_tail());

// ---------------------------------------------------------------------------
// Closed-form bounds

struct BoundsReport {
  std::int64_t n = 2;
  std::int64_t b = 1;
  double unbiased_lower = 0.0;       ///< 0.01 log2 n
  double unbiased_upper = 0.0;       ///< log2 n + 1
  bool unbiased_lower_proven = false;  ///< n > 10^8
  double biased_lower = 0.0;         ///< (b/2) ln(n/(2b) + 1)
  std::int64_t biased_upper = 0;     ///< min(ceil(2b ln n), n)
  int clique_depth = 0;
  std::string regime;
};

BoundsReport bounds_report(std::int64_t n, std::int64_t b, double proven_min_n = 1e8);
std::string format_bounds(const BoundsReport& report);

}  // namespace pbgame
