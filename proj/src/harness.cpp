#include "pbgame/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

namespace pbgame {

std::string to_string(Retention retention) {
  switch (retention) {
    case Retention::None:
      return "none";
    case Retention::All:
      return "all";
    case Retention::Losses:
      return "losses";
  }
  return "?";
}

Retention retention_from_string(const std::string& text) {
  for (auto r : {Retention::None, Retention::All, Retention::Losses}) {
    if (to_string(r) == text) return r;
  }
  throw ConfigError("unknown retention policy '" + text + "'");
}

void validate(const ExperimentSpec& spec) {
  if (spec.n.empty() || spec.k.empty() || spec.p.empty() || spec.b.empty()) {
    throw ConfigError("every grid axis needs at least one value");
  }
  if (spec.trials < 1) throw ConfigError("trials must be >= 1");
  if (spec.workers < 1) throw ConfigError("workers must be >= 1");
  try {
    painter_kind_from_string(spec.painter);
    builder_kind_from_string(spec.builder);
    if (spec.checks != "none") resolve_checks(spec.checks, spec.builder);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& c : cells_of(spec)) validate(c);
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  auto axis = [&](const char* name, std::vector<int>& dest) {
    if (!j.contains(name)) return;
    const auto& v = j.at(name);
    dest = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
  };
  try {
    axis("n", s.n);
    axis("k", s.k);
    axis("p", s.p);
    axis("b", s.b);
    s.painter = j.value("painter", s.painter);
    s.builder = j.value("builder", s.builder);
    s.seed = j.value("seed", s.seed);
    s.trials = j.value("trials", s.trials);
    s.retention = retention_from_string(j.value("retention", to_string(s.retention)));
    s.out = j.value("out", std::string());
    if (j.contains("constants")) s.constants = builder_constants_from_json(j.at("constants"));
    s.checks = j.value("checks", s.checks);
    s.workers = j.value("workers", s.workers);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment spec: ") + e.what());
  }
  return s;
}

nlohmann::json to_json(const ExperimentSpec& s) {
  return {{"n", s.n},
          {"k", s.k},
          {"p", s.p},
          {"b", s.b},
          {"painter", s.painter},
          {"builder", s.builder},
          {"seed", s.seed},
          {"trials", s.trials},
          {"retention", to_string(s.retention)},
          {"out", s.out.string()},
          {"constants", to_json(s.constants)},
          {"checks", s.checks},
          {"workers", s.workers}};
}

void apply_environment(ExperimentSpec& spec) {
  if (const char* dir = std::getenv("PBGAME_OUT_DIR"); dir && *dir) spec.out = dir;
  if (const char* workers = std::getenv("PBGAME_WORKERS"); workers && *workers) {
    try {
      spec.workers = std::stoi(workers);
    } catch (const std::exception&) {
      throw ConfigError(std::string("PBGAME_WORKERS is not an integer: ") + workers);
    }
  }
}

std::vector<GameConfig> cells_of(const ExperimentSpec& spec) {
  std::vector<GameConfig> cells;
  for (int n : spec.n) {
    for (int k : spec.k) {
      for (int p : spec.p) {
        for (int b : spec.b) cells.push_back(GameConfig{n, k, p, b});
      }
    }
  }
  return cells;
}

TrialSeeds trial_seeds(std::uint64_t master, const GameConfig& c, int trial) {
  const auto base = derive_seed({master, static_cast<std::uint64_t>(c.n), static_cast<std::uint64_t>(c.k),
                                 static_cast<std::uint64_t>(c.p), static_cast<std::uint64_t>(c.b),
                                 static_cast<std::uint64_t>(trial)});
  return {derive_seed({base, 1}), derive_seed({base, 2})};
}

namespace {

std::filesystem::path transcript_path(const ExperimentSpec& spec, std::size_t cell, const GameConfig& c,
                                      int trial) {
  std::ostringstream name;
  name << "cell" << cell << "_n" << c.n << "_k" << c.k << "_p" << c.p << "_b" << c.b << "_trial" << trial
       << ".jsonl";
  return spec.out / "transcripts" / name.str();
}

}  // namespace

TrialResult run_trial(const ExperimentSpec& spec, std::size_t cell, const GameConfig& config, int trial,
                      Transcript* keep) {
  TrialResult r;
  r.cell = cell;
  r.trial = trial;
  r.config = config;
  r.seeds = trial_seeds(spec.seed, config, trial);
  const bool audit = spec.checks != "none";
  const bool write = spec.retention != Retention::None && !spec.out.empty();
  Transcript local;
  Transcript* transcript = keep ? keep : (audit || write ? &local : nullptr);
  try {
    PainterAgent painter(painter_kind_from_string(spec.painter), r.seeds.painter);
    auto builder = make_builder(builder_kind_from_string(spec.builder), r.seeds.builder, spec.constants);
    r.game = play_game(config, painter, *builder, transcript);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  if (r.error.empty() && audit) r.audit_passed = audit_transcript(*transcript, spec.checks).passed();
  const bool lost = !r.error.empty() || r.game.status != Status::PainterWin;
  if (write && transcript && (spec.retention == Retention::All || lost)) {
    const auto path = transcript_path(spec, cell, config, trial);
    write_transcript(*transcript, path);
    r.transcript_path = path.string();
  }
  return r;
}

BatchResult simulate_batch(const ExperimentSpec& spec) {
  validate(spec);
  const auto cells = cells_of(spec);
  if (!spec.out.empty()) {
    std::filesystem::create_directories(spec.out);
    if (spec.retention != Retention::None) std::filesystem::create_directories(spec.out / "transcripts");
  }
  const std::size_t total = cells.size() * static_cast<std::size_t>(spec.trials);
  BatchResult result;
  result.trials.resize(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t cell = i / static_cast<std::size_t>(spec.trials);
      const int trial = static_cast<int>(i % static_cast<std::size_t>(spec.trials));
      result.trials[i] = run_trial(spec, cell, cells[cell], trial);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, spec.workers));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, total); ++w) pool.emplace_back(work);
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellSummary s{cells[c], spec.painter, spec.builder};
    double rounds = 0.0;
    for (int t = 0; t < spec.trials; ++t) {
      const auto& r = result.trials[c * static_cast<std::size_t>(spec.trials) + static_cast<std::size_t>(t)];
      ++s.trials;
      if (!r.error.empty()) {
        ++s.failures;
        continue;
      }
      s.painter_wins += r.game.status == Status::PainterWin;
      s.builder_wins += r.game.status == Status::BuilderWin;
      s.audits_passed += r.audit_passed.value_or(false);
      rounds += r.game.rounds;
    }
    const int played = s.trials - s.failures;
    s.mean_rounds = played > 0 ? rounds / played : 0.0;
    result.cells.push_back(s);
  }

  if (!spec.out.empty()) {
    std::ofstream csv(spec.out / "summary.csv", std::ios::binary);
    csv << summary_csv(result);
    std::ofstream jsonl(spec.out / "trials.jsonl", std::ios::binary);
    jsonl << trials_jsonl(result);
    if (!csv || !jsonl) throw TranscriptIoError("cannot write results under '" + spec.out.string() + "'");
  }
  return result;
}

std::string summary_csv(const BatchResult& result) {
  std::ostringstream out;
  out << "n,k,p,b,painter,builder,trials,painter_wins,builder_wins,failures,mean_rounds,audits_passed\n";
  for (const auto& s : result.cells) {
    out << s.config.n << ',' << s.config.k << ',' << s.config.p << ',' << s.config.b << ',' << s.painter << ','
        << s.builder << ',' << s.trials << ',' << s.painter_wins << ',' << s.builder_wins << ',' << s.failures
        << ',' << std::fixed << std::setprecision(3) << s.mean_rounds << ',' << s.audits_passed << '\n';
  }
  return out.str();
}

std::string trials_jsonl(const BatchResult& result) {
  std::ostringstream out;
  for (const auto& r : result.trials) {
    nlohmann::ordered_json j{{"cell", r.cell},
                             {"trial", r.trial},
                             {"n", r.config.n},
                             {"k", r.config.k},
                             {"p", r.config.p},
                             {"b", r.config.b},
                             {"painter_seed", r.seeds.painter},
                             {"builder_seed", r.seeds.builder}};
    if (r.error.empty()) {
      j["status"] = to_string(r.game.status);
      j["rounds"] = r.game.rounds;
      j["digest"] = r.game.digest;
    } else {
      j["error"] = r.error;
    }
    if (r.audit_passed) j["audit_passed"] = *r.audit_passed;
    if (r.transcript_path) j["transcript"] = *r.transcript_path;
    out << j.dump() << '\n';
  }
  return out.str();
}

double four_sigma_tail() { return 0.5 * std::erfc(4.0 / std::sqrt(2.0)); }

std::int64_t binomial_critical_count(std::int64_t trials, double p, double alpha) {
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  auto upper_tail = [&](std::int64_t c) {
    if (c <= 0) return 1.0;
    if (c > trials) return 0.0;
    return boost::math::cdf(boost::math::complement(dist, static_cast<double>(c - 1)));
  };
  std::int64_t lo = 0;
  std::int64_t hi = trials + 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (upper_tail(mid) <= alpha) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

bool within_binomial_margin(std::int64_t count, std::int64_t trials, double p, double alpha) {
  return count < binomial_critical_count(trials, p, alpha);
}

BoundsReport bounds_report(std::int64_t n, std::int64_t b, double proven_min_n) {
  if (n < 2 || b < 1) throw ConfigError("bounds need n >= 2 and b >= 1");
  BoundsReport r;
  r.n = n;
  r.b = b;
  const double nn = static_cast<double>(n);
  const double bb = static_cast<double>(b);
  r.unbiased_lower = 0.01 * std::log2(nn);
  r.unbiased_upper = std::log2(nn) + 1.0;
  r.unbiased_lower_proven = nn > proven_min_n;
  r.biased_lower = bb / 2.0 * std::log(nn / (2.0 * bb) + 1.0);
  r.biased_upper = std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(2.0 * bb * std::log(nn) - 1e-12)), n);
  r.clique_depth = clique_depth(n, b);
  if (b == 1) {
    r.regime = "unbiased: Theta(log n)";
  } else if (2.0 * bb * std::log(nn) >= nn) {
    r.regime = "b comparable to n: Theta(n)";
  } else {
    std::ostringstream s;
    s << "2 <= b <= n^(1-eps), eps = " << std::setprecision(3) << 1.0 - std::log(bb) / std::log(nn)
      << ": Theta(b ln n)";
    r.regime = s.str();
  }
  return r;
}

std::string format_bounds(const BoundsReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "n = " << r.n << ", b = " << r.b << "\n";
  out << "unbiased lower  0.01*log2(n)          " << r.unbiased_lower
      << (r.unbiased_lower_proven ? "" : "  [outside proven range (n <= 10^8)]") << "\n";
  out << "unbiased upper  log2(n)+1             " << r.unbiased_upper << "\n";
  out << "biased lower    (b/2)*ln(n/(2b)+1)    " << r.biased_lower << "\n";
  out << "biased upper    min(ceil(2b ln n), n) " << r.biased_upper << "\n";
  out << "clique depth    t                     " << r.clique_depth << "  (clique size " << r.clique_depth + 1
      << ")\n";
  out << "regime          " << r.regime << "\n";
  return out.str();
}

}  // namespace pbgame
