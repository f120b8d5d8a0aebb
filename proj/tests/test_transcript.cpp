#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "pbgame/audit.hpp"
#include "pbgame/builder.hpp"
#include "pbgame/transcript.hpp"

using namespace pbgame;

namespace {

Transcript play(const GameConfig& c, PainterKind painter_kind, BuilderKind builder_kind, std::uint64_t seed) {
  PainterAgent painter(painter_kind, derive_seed({seed, 1}));
  auto builder = make_builder(builder_kind, derive_seed({seed, 2}));
  Transcript t;
  play_game(c, painter, *builder, &t);
  return t;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

int malformed_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_transcript(in);
  } catch (const MalformedRecord& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("one record per event between header and end record") {
  // n = 3, k = 3: three paints and two builds, Painter wins on its third paint.
  PainterAgent painter(PainterKind::FirstFit, 0);
  RandomBuilder builder(1);
  Transcript t;
  play_game(GameConfig{3, 3, 1, 1}, painter, builder, &t);
  const auto lines = lines_of(to_jsonl(t));
  CHECK(lines.size() == 1 + 5 + 1);
  CHECK(lines.front().find("\"type\":\"header\"") != std::string::npos);
  CHECK(lines.back().find("\"type\":\"end\"") != std::string::npos);
  CHECK(moves_of(t).size() == 5);
}

TEST_CASE("write, parse and replay reproduce the event sequence") {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    const GameConfig c{2 + static_cast<int>(rng.below(40)), 1 + static_cast<int>(rng.below(5)),
                       1 + static_cast<int>(rng.below(2)), 1 + static_cast<int>(rng.below(3))};
    const Transcript t = play(c, static_cast<PainterKind>(rng.below(4)), static_cast<BuilderKind>(rng.below(3)),
                              rng.next());
    const std::string text = to_jsonl(t);
    std::istringstream in(text);
    const Transcript back = parse_transcript(in);
    CHECK(to_jsonl(back) == text);
    CHECK(moves_of(back) == moves_of(t));
    CHECK(state_digest(oracle::final_state(back)) == t.terminal->digest);
  }
}

TEST_CASE("same seed, same bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "pbgame_test_transcript";
  std::filesystem::create_directories(dir);
  for (auto kind : {BuilderKind::Random, BuilderKind::Logarithmic, BuilderKind::BiasedClique}) {
    write_transcript(play(GameConfig{80, 3, 1, 2}, PainterKind::RandomGreedy, kind, 5), dir / "a.jsonl");
    write_transcript(play(GameConfig{80, 3, 1, 2}, PainterKind::RandomGreedy, kind, 5), dir / "b.jsonl");
    std::ifstream a(dir / "a.jsonl");
    std::ifstream b(dir / "b.jsonl");
    std::stringstream sa;
    std::stringstream sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable path is an I/O error") {
  const Transcript t = play(GameConfig{5, 2, 1, 1}, PainterKind::FirstFit, BuilderKind::Random, 1);
  CHECK_THROWS_AS(write_transcript(t, "/nonexistent-dir/sub/x.jsonl"), TranscriptIoError);
  CHECK_THROWS_AS(read_transcript("/nonexistent-dir/x.jsonl"), TranscriptIoError);
}

TEST_CASE("malformed records report their line") {
  const Transcript t = play(GameConfig{6, 2, 1, 1}, PainterKind::FirstFit, BuilderKind::Random, 1);
  auto lines = lines_of(to_jsonl(t));
  REQUIRE(lines.size() > 4);

  auto broken = lines;
  broken[3] = "{not json";
  CHECK(malformed_line(join(broken)) == 4);

  broken = lines;
  broken[2] = R"({"type":"paint","round":0})";
  CHECK(malformed_line(join(broken)) == 3);

  broken = lines;
  broken[1] = R"({"type":"teleport","round":0})";
  CHECK(malformed_line(join(broken)) == 2);

  broken = lines;
  broken.insert(broken.begin() + 2, "");
  CHECK(malformed_line(join(broken)) == 3);

  broken = lines;
  broken.push_back(lines[1]);
  CHECK(malformed_line(join(broken)) == static_cast<int>(lines.size()) + 1);

  CHECK(malformed_line("") == 1);
  CHECK(malformed_line(join({lines[1]})) == 1);
}

TEST_CASE("format versions") {
  const Transcript t = play(GameConfig{6, 2, 1, 1}, PainterKind::FirstFit, BuilderKind::Random, 1);
  auto lines = lines_of(to_jsonl(t));
  auto with_format = [&](const std::string& format) {
    auto copy = lines;
    const std::string from = std::string(kTranscriptFormat);
    copy[0].replace(copy[0].find(from), from.size(), format);
    return join(copy);
  };
  CHECK(malformed_line(with_format("pbgame-transcript/1.7")) == 0);
  CHECK(malformed_line(with_format("pbgame-transcript/2.0")) == 1);
  CHECK(malformed_line(with_format("something-else")) == 1);
}

TEST_CASE("audit flags a paint on a dead vertex at its record") {
  // k = 2: after 1-3 and 2-3 with 1, 2 coloured differently, vertex 3 is dead.
  Transcript t;
  t.header = TranscriptHeader{GameConfig{4, 2, 1, 1}, "first-fit", 0, "random", 0};
  t.records = {PaintRecord{0, {1, 1}}, BuildRecord{0, {Edge(1, 3)}}, PaintRecord{1, {2, 2}},
               BuildRecord{1, {Edge(2, 3)}}, PaintRecord{2, {3, 1}}};
  const AuditReport report = audit_transcript(t, "proper");
  CHECK_FALSE(report.passed());
  REQUIRE(report.error_line.has_value());
  CHECK(*report.error_line == record_line_number(4));
  CHECK(report.error.find("illegal move") != std::string::npos);
}

TEST_CASE("audit of engine transcripts passes and the digest check bites") {
  Transcript t = play(GameConfig{120, 3, 1, 1}, PainterKind::RandomGreedy, BuilderKind::Logarithmic, 3);
  AuditReport report = audit_transcript(t, "all");
  CHECK(report.passed());
  for (Check c : all_checks()) CHECK(report.find(c) != nullptr);
  CHECK(report.find(Check::WaitingRoom)->evaluations == 1);

  t.terminal->digest = "0000000000000000";
  report = audit_transcript(t, "all");
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.find(Check::Digest)->passed());
}

TEST_CASE("clique transcript at n = 10, b = 2 certifies a triangle") {
  const Transcript t = play(GameConfig{10, 10, 1, 2}, PainterKind::RandomGreedy, BuilderKind::BiasedClique, 8);
  const AuditReport report = audit_transcript(t, "clique");
  CHECK(report.passed());
  CHECK(report.find(Check::Clique)->evaluations >= 1);
  std::size_t size = 0;
  for (const auto& r : t.records) {
    if (const auto* n = std::get_if<NoteRecord>(&r); n && n->kind == "clique") size = n->data.at("vertices").size();
  }
  CHECK(size == 3);
}

TEST_CASE("tampered clique note fails the clique check") {
  Transcript t = play(GameConfig{10, 10, 1, 2}, PainterKind::FirstFit, BuilderKind::BiasedClique, 8);
  for (auto& r : t.records) {
    if (auto* n = std::get_if<NoteRecord>(&r); n && n->kind == "clique") n->data["vertices"] = {1, 2, 3, 4};
  }
  CHECK_FALSE(audit_transcript(t, "clique").passed());
}

TEST_CASE("check names") {
  CHECK(parse_checks("all") == all_checks());
  CHECK(parse_checks("proper,digest") == CheckSet{Check::Proper, Check::Digest});
  CHECK_THROWS(parse_checks("proper,nonsense"));
  CHECK(resolve_checks("auto", "random").count(Check::Bipartite) == 0);
  CHECK(resolve_checks("auto", "logarithmic").count(Check::Bipartite) == 1);
}
