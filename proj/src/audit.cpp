#include "pbgame/audit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pbgame/graph_checks.hpp"

namespace pbgame {

std::string to_string(Check check) {
  switch (check) {
    case Check::Proper:
      return "proper";
    case Check::Bipartite:
      return "bipartite";
    case Check::WaitingRoom:
      return "waiting_room";
    case Check::Escalation:
      return "escalation";
    case Check::Clique:
      return "clique";
    case Check::Digest:
      return "digest";
  }
  return "?";
}

CheckSet all_checks() {
  return {Check::Proper, Check::Bipartite, Check::WaitingRoom, Check::Escalation, Check::Clique, Check::Digest};
}

CheckSet parse_checks(const std::string& text) {
  if (text.empty() || text == "all") return all_checks();
  CheckSet out;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    if (name == "all") return all_checks();
    bool found = false;
    for (Check c : all_checks()) {
      if (to_string(c) == name) {
        out.insert(c);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown check '" + name + "'");
  }
  return out;
}

CheckSet promised_checks(const std::string& builder) {
  CheckSet out = all_checks();
  if (builder != "logarithmic") out.erase(Check::Bipartite);
  return out;
}

CheckSet resolve_checks(const std::string& text, const std::string& builder) {
  return text == "auto" ? promised_checks(builder) : parse_checks(text);
}

bool AuditReport::passed() const {
  if (error_line) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed(); });
}

const CheckOutcome* AuditReport::find(Check check) const {
  for (const auto& c : checks) {
    if (c.check == check) return &c;
  }
  return nullptr;
}

std::string AuditReport::summary() const {
  std::ostringstream out;
  out << source << ": " << (passed() ? "PASS" : "FAIL");
  if (error_line) out << "\n  replay error at line " << *error_line << ": " << error;
  for (const auto& c : checks) {
    out << "\n  " << to_string(c.check) << ": " << (c.passed() ? "pass" : "fail") << " (" << c.evaluations
        << " evaluations)";
    if (!c.passed()) out << " first failure at line " << *c.first_failure_line << ": " << c.message;
  }
  return out.str();
}

namespace {

class Auditor {
 public:
  Auditor(const Transcript& t, const CheckSet& checks)
      : transcript_(t), state_(t.header.config), parity_(t.header.config.n) {
    for (Check c : checks) outcomes_.emplace(c, CheckOutcome{c, 0, std::nullopt, {}});
  }

  AuditReport run() {
    AuditReport report;
    for (std::size_t i = 0; i < transcript_.records.size(); ++i) {
      line_ = record_line_number(i);
      try {
        std::visit([this](const auto& r) { step(r); }, transcript_.records[i]);
      } catch (const IllegalMove& e) {
        report.error_line = line_;
        report.error = std::string("illegal move: ") + e.what();
        break;
      } catch (const ReplayError& e) {
        report.error_line = line_;
        report.error = e.message;
        break;
      }
    }
    if (!report.error_line) {
      line_ = record_line_number(transcript_.records.size());
      finish();
    }
    report.replayed_status = state_.status();
    for (auto& [check, outcome] : outcomes_) report.checks.push_back(outcome);
    return report;
  }

 private:
  struct ReplayError {
    std::string message;
  };

  bool enabled(Check c) const { return outcomes_.contains(c); }

  void evaluate(Check c, const Violation& v) {
    auto it = outcomes_.find(c);
    if (it == outcomes_.end()) return;
    ++it->second.evaluations;
    if (v && !it->second.first_failure_line) {
      it->second.first_failure_line = line_;
      it->second.message = *v;
    }
  }

  void check_round(int round) {
    if (round != state_.round()) {
      throw ReplayError{"record round " + std::to_string(round) + " but replay is in round " +
                        std::to_string(state_.round())};
    }
  }

  void step(const PaintRecord& r) {
    check_round(r.round);
    last_move_round_ = r.round;
    state_.apply_paint(r.paint.vertex, r.paint.colour);
    if (enabled(Check::Proper)) {
      Violation v;
      for (Vertex w : state_.neighbours(r.paint.vertex)) {
        if (state_.colour(w) == r.paint.colour) {
          v = "edge {" + std::to_string(r.paint.vertex) + "," + std::to_string(w) + "} monochromatic";
        }
      }
      evaluate(Check::Proper, v);
    }
  }

  void step(const BuildRecord& r) {
    check_round(r.round);
    last_move_round_ = r.round;
    state_.apply_build(r.edges);
    ++builds_;
    if (enabled(Check::Proper)) {
      Violation v;
      for (const Edge& e : r.edges) {
        if (state_.coloured(e.u) && state_.colour(e.u) == state_.colour(e.v)) {
          v = "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} monochromatic";
        }
      }
      evaluate(Check::Proper, v);
    }
    if (enabled(Check::Bipartite)) {
      Violation v;
      for (const Edge& e : r.edges) {
        if (!parity_.unite(e.u, e.v) && !v) {
          v = "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} closes an odd cycle";
        }
      }
      // The conflict sticks in the DSU; report only its first appearance.
      if (!bipartite_broken_) evaluate(Check::Bipartite, v);
      if (v) bipartite_broken_ = true;
    }
  }

  void step(const ForfeitRecord& r) {
    check_round(r.round);
    if (state_.ongoing()) throw ReplayError{"forfeit while the game is still open"};
  }

  void step(const NoteRecord& r) {
    // A note attached to a Build carries that Build's round.
    if (r.round != state_.round() && r.round != last_move_round_) {
      throw ReplayError{"note round " + std::to_string(r.round) + " matches neither the last move (" +
                        std::to_string(last_move_round_) + ") nor the replay (" + std::to_string(state_.round()) +
                        ")"};
    }
    try {
      if (r.kind == "waiting_room") {
        note_waiting_room(r.data);
      } else if (r.kind == "escalation") {
        note_escalation(r.data);
      } else if (r.kind == "escalation_failed") {
        evaluate(Check::Escalation, "builder reported: " + r.data.value("reason", std::string()));
      } else if (r.kind == "clique_phase") {
        note_clique_phase(r.data);
      } else if (r.kind == "clique") {
        note_clique(r.data);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ReplayError{"malformed '" + r.kind + "' note: " + e.what()};
    }
  }

  void note_waiting_room(const nlohmann::json& d) {
    room_a_ = d.at("A").get<std::vector<Vertex>>();
    room_b_ = d.at("B").get<std::vector<Vertex>>();
    if (!enabled(Check::WaitingRoom)) return;
    const auto colour = d.at("colour").get<Colour>();
    const auto min_size = d.at("min_size").get<int>();
    const auto cap = d.at("round_cap").get<double>();
    Violation v = check_waiting_room(state_, room_a_, room_b_, colour, min_size, true);
    if (!v) v = check_disjoint_paths(state_, 2);
    if (!v && builds_ > cap * state_.n()) {
      v = "certified after " + std::to_string(builds_) + " Builder moves, cap is " +
          std::to_string(cap * state_.n());
    }
    evaluate(Check::WaitingRoom, v);
  }

  void note_escalation(const nlohmann::json& d) {
    if (!enabled(Check::Escalation)) return;
    const auto members = d.at("members").get<std::vector<Vertex>>();
    evaluate(Check::Escalation,
             check_escalation(state_, members, d.at("level").get<int>(), d.at("previous_size").get<int>(),
                              d.at("shrink").get<double>(), room_a_, room_b_));
  }

  void note_clique_phase(const nlohmann::json& d) {
    if (!enabled(Check::Clique)) return;
    const auto clique = d.at("K").get<std::vector<Vertex>>();
    const auto pool = d.at("V").get<std::vector<Vertex>>();
    const auto bound = d.at("bound").get<std::int64_t>();
    Violation v = check_clique(state_, clique);
    for (Vertex x : clique) {
      for (Vertex y : pool) {
        if (!v && !state_.has_edge(x, y)) {
          v = "pool vertex " + std::to_string(y) + " not joined to clique vertex " + std::to_string(x);
        }
      }
    }
    for (Vertex y : pool) {
      if (!v && state_.coloured(y)) v = "pool vertex " + std::to_string(y) + " is coloured";
    }
    if (!v && static_cast<std::int64_t>(pool.size()) < bound) {
      v = "pool has " + std::to_string(pool.size()) + " vertices, bound is " + std::to_string(bound);
    }
    evaluate(Check::Clique, v);
  }

  void note_clique(const nlohmann::json& d) {
    if (!enabled(Check::Clique)) return;
    const auto vertices = d.at("vertices").get<std::vector<Vertex>>();
    const auto expected = d.at("expected_size").get<int>();
    Violation v = check_clique(state_, vertices);
    if (!v && static_cast<int>(vertices.size()) != expected) {
      v = "clique has " + std::to_string(vertices.size()) + " vertices, expected " + std::to_string(expected);
    }
    evaluate(Check::Clique, v);
  }

  void finish() {
    if (enabled(Check::Proper)) {
      Violation v;
      for (const Edge& e : state_.edges()) {
        if (!v && state_.coloured(e.u) && state_.colour(e.u) == state_.colour(e.v)) {
          v = "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} monochromatic";
        }
      }
      evaluate(Check::Proper, v);
    }
    if (enabled(Check::Digest)) {
      Violation v;
      const auto& terminal = transcript_.terminal;
      if (!terminal) {
        v = "no terminal record";
      } else if (terminal->status != state_.status()) {
        v = "terminal status " + to_string(terminal->status) + " but replay ends " + to_string(state_.status());
      } else if (terminal->rounds != state_.round()) {
        v = "terminal rounds " + std::to_string(terminal->rounds) + " but replay has " +
            std::to_string(state_.round());
      } else if (terminal->digest != state_digest(state_)) {
        v = "digest " + terminal->digest + " but replay gives " + state_digest(state_);
      }
      evaluate(Check::Digest, v);
    }
  }

  const Transcript& transcript_;
  GameState state_;
  ParityDsu parity_;
  bool bipartite_broken_ = false;
  std::map<Check, CheckOutcome> outcomes_;
  std::vector<Vertex> room_a_;
  std::vector<Vertex> room_b_;
  int builds_ = 0;
  int last_move_round_ = 0;
  int line_ = 1;
};

}  // namespace

AuditReport audit_transcript(const Transcript& transcript, const CheckSet& checks) {
  return Auditor(transcript, checks).run();
}

namespace {

AuditReport audit_parsed(std::istream& in, const std::function<CheckSet(const Transcript&)>& checks,
                         std::string source) {
  AuditReport report;
  try {
    const Transcript t = parse_transcript(in);
    try {
      validate(t.header.config);
    } catch (const ConfigError& e) {
      report.source = std::move(source);
      report.error_line = 1;
      report.error = std::string("invalid header config: ") + e.what();
      return report;
    }
    report = audit_transcript(t, checks(t));
  } catch (const MalformedRecord& e) {
    report.error_line = e.line();
    report.error = std::string("malformed record: ") + e.what();
  }
  report.source = std::move(source);
  return report;
}

}  // namespace

AuditReport audit_stream(std::istream& in, const CheckSet& checks, std::string source) {
  return audit_parsed(in, [&](const Transcript&) { return checks; }, std::move(source));
}

AuditReport audit_transcript(const Transcript& transcript, const std::string& checks) {
  return audit_transcript(transcript, resolve_checks(checks, transcript.header.builder));
}

AuditReport audit_file(const std::filesystem::path& path, const CheckSet& checks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptIoError("cannot open '" + path.string() + "'");
  return audit_stream(in, checks, path.string());
}

AuditReport audit_file(const std::filesystem::path& path, const std::string& checks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptIoError("cannot open '" + path.string() + "'");
  return audit_parsed(
      in, [&](const Transcript& t) { return resolve_checks(checks, t.header.builder); }, path.string());
}

}  // namespace pbgame
