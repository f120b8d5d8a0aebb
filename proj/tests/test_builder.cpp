#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "pbgame/audit.hpp"
#include "pbgame/builder.hpp"
#include "pbgame/harness.hpp"

using namespace pbgame;

namespace {

int matching_rounds(int n) { return (n + 9) / 10; }
int room_size(int n, int k) { return (n + 10 * k - 1) / (10 * k); }

const NoteRecord* find_note(const Transcript& t, const std::string& kind) {
  for (const auto& r : t.records) {
    if (const auto* note = std::get_if<NoteRecord>(&r); note && note->kind == kind) return note;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("random Builder: fewer legal pairs than b, a pass, uniform choice") {
  GameState s(GameConfig{3, 3, 1, 2});
  s.apply_paint(1, 1);
  s.apply_build(std::vector<Edge>{Edge(1, 2), Edge(1, 3)});
  s.apply_paint(2, 2);
  Rng rng(1);
  const auto move = random_builder_move(s, rng);
  REQUIRE(move.edges.size() == 1);
  CHECK(move.edges[0] == Edge(2, 3));

  GameState full(GameConfig{4, 4, 1, 6});
  full.apply_paint(1, 1);
  full.apply_build(std::vector<Edge>{Edge(1, 2), Edge(1, 3), Edge(1, 4), Edge(2, 3), Edge(2, 4), Edge(3, 4)});
  full.apply_paint(2, 2);
  CHECK(random_builder_move(full, rng).edges.empty());

  GameState empty(GameConfig{4, 2, 1, 1});
  empty.apply_paint(1, 1);
  std::map<Edge, int> hits;
  const int draws = 12000;
  for (int i = 0; i < draws; ++i) ++hits[random_builder_move(empty, rng).edges.at(0)];
  CHECK(hits.size() == 6);
  for (const auto& [e, count] : hits) {
    CHECK(within_binomial_margin(count, draws, 1.0 / 6));
    CHECK(within_binomial_margin(draws - count, draws, 5.0 / 6));
  }
}

TEST_CASE("random Builder: moves carry distinct legal edges") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    GameState s(GameConfig{8, 3, 1, 5});
    while (s.ongoing()) {
      if (s.turn() == Turn::Painter) {
        const auto paint = first_fit_move(s);
        s.apply_paint(paint->vertex, paint->colour);
      } else {
        const auto move = random_builder_move(s, rng);
        CHECK(static_cast<int>(move.edges.size()) == s.required_edge_count());
        std::set<Edge> distinct(move.edges.begin(), move.edges.end());
        CHECK(distinct.size() == move.edges.size());
        s.apply_build(move.edges);
      }
    }
  }
}

TEST_CASE("lowest legal pair honours the filter and the taken list") {
  GameState s = GameState::from_position(GameConfig{4, 2, 1, 1}, std::vector<Colour>{0, 1, 1, 0, 0},
                                         std::vector<Edge>{Edge(1, 3)});
  CHECK(lowest_legal_pair(s, nullptr) == Edge(1, 4));  // 1-2 monochromatic, 1-3 drawn
  CHECK(lowest_legal_pair(s, nullptr, {Edge(1, 4)}) == Edge(2, 3));
  CHECK(lowest_legal_pair(s, [](Vertex u, Vertex) { return u >= 3; }) == Edge(3, 4));
}

TEST_CASE("pressure edge joins a colour the target lacks and respects parity") {
  // 3 sees colour 1; the best move adds colour 2 to it.
  GameState s = GameState::from_position(GameConfig{6, 3, 1, 1}, std::vector<Colour>{0, 1, 2, 0, 0, 0, 0},
                                         std::vector<Edge>{Edge(1, 3)});
  auto e = greedy_pressure_edge(s, nullptr);
  REQUIRE(e);
  CHECK(*e == Edge(2, 3));

  // With 1-2 drawn, 2-3 would close a triangle; parity refuses it.
  GameState t = GameState::from_position(GameConfig{6, 3, 1, 1}, std::vector<Colour>{0, 1, 2, 0, 0, 0, 0},
                                         std::vector<Edge>{Edge(1, 3), Edge(1, 2)});
  ParityDsu parity(6);
  for (const Edge& edge : t.edges()) parity.unite(edge.u, edge.v);
  e = greedy_pressure_edge(t, &parity);
  REQUIRE(e);
  CHECK(*e != Edge(2, 3));
  CHECK(parity.can_join(e->u, e->v));
}

TEST_CASE("waiting-room sizes at n = 100 and n = 60") {
  for (auto [n, k] : {std::pair{100, 2}, std::pair{60, 2}, std::pair{60, 3}, std::pair{500, 3}}) {
    CAPTURE(n);
    CAPTURE(k);
    PainterAgent painter(PainterKind::FirstFit, 0);
    LogarithmicBuilder builder;
    Transcript t;
    play_game(GameConfig{n, k, 1, 1}, painter, builder, &t);
    const NoteRecord* note = find_note(t, "waiting_room");
    REQUIRE(note != nullptr);
    const auto a = note->data.at("A").get<std::vector<Vertex>>();
    const auto b = note->data.at("B").get<std::vector<Vertex>>();
    CHECK(static_cast<int>(a.size()) == room_size(n, k));
    CHECK(note->data.at("builder_moves").get<int>() == matching_rounds(n) + room_size(n, k));
    CHECK(note->data.at("builder_moves").get<double>() <= 0.2 * n);
    bool checked = false;
    oracle::replay(t, [&](const GameState& s, const NoteRecord& r) {
      if (r.kind != "waiting_room") return;
      CHECK(oracle::waiting_room(s, a, b, note->data.at("colour").get<Colour>(), room_size(n, k)));
      CHECK(oracle::disjoint_short_paths(s, 2));
      checked = true;
    });
    CHECK(checked);
  }
  SUBCASE("n = 100, k = 2 gives 5 room pairs after 15 Builder moves") {
    CHECK(room_size(100, 2) == 5);
    CHECK(matching_rounds(100) + room_size(100, 2) == 15);
    CHECK(room_size(60, 2) == 3);
    CHECK(matching_rounds(60) + room_size(60, 2) == 9);
  }
}

TEST_CASE("waiting-room refuses n = 50") {
  GameState s(GameConfig{50, 2, 1, 1});
  PainterAgent painter(PainterKind::FirstFit, 0);
  Driver d(s, painter);
  d.open();
  EdgeSink emit = [&](std::vector<Edge> edges, std::vector<NoteRecord> notes) { d.build(edges, notes); };
  CHECK_THROWS_AS(build_waiting_room(d, BuilderConstants{}, emit), PreconditionViolation);

  PainterAgent p2(PainterKind::FirstFit, 0);
  LogarithmicBuilder builder;
  Transcript t;
  play_game(GameConfig{50, 2, 1, 1}, p2, builder, &t);
  const NoteRecord* note = find_note(t, "fallback");
  REQUIRE(note != nullptr);
  CHECK(note->data.at("level").get<int>() == -1);
}

TEST_CASE("stalling walks the unused A-B pairs in order") {
  // A = {1, 2} coloured 1, B = {3, 4}, matched 1-3 and 2-4.
  GameState s = GameState::from_position(GameConfig{6, 2, 1, 1}, std::vector<Colour>{0, 1, 1, 0, 0, 0, 0},
                                         std::vector<Edge>{Edge(1, 3), Edge(2, 4)});
  WaitingRoom room{{1, 2}, {3, 4}, 1, 0};
  CHECK(stall_in_waiting_room(s, room) == Edge(1, 4));
  GameState t = GameState::from_position(GameConfig{6, 2, 1, 1}, std::vector<Colour>{0, 1, 1, 0, 0, 0, 0},
                                         std::vector<Edge>{Edge(1, 3), Edge(2, 4), Edge(1, 4)});
  CHECK(stall_in_waiting_room(t, room) == Edge(2, 3));
  GameState u = GameState::from_position(
      GameConfig{6, 2, 1, 1}, std::vector<Colour>{0, 1, 1, 0, 0, 0, 0},
      std::vector<Edge>{Edge(1, 3), Edge(2, 4), Edge(1, 4), Edge(2, 3)});
  CHECK_FALSE(stall_in_waiting_room(u, room).has_value());
}

TEST_CASE("clique recurrence") {
  CHECK(clique_sequence(10, 2) == std::vector<std::int64_t>{10, 4, 1, 0});
  CHECK(clique_depth(10, 2) == 2);
  CHECK(clique_depth(10, 1) == 0);
  CHECK(clique_sequence(10, 1) == std::vector<std::int64_t>{10, 0});
  for (std::int64_t n = 1; n <= 3000; n += 7) {
    for (std::int64_t b = 1; b <= 12; ++b) {
      CHECK(clique_depth(n, b) == oracle::clique_depth(static_cast<double>(n), static_cast<double>(b)));
    }
  }
}

TEST_CASE("clique Builder certifies a clique of size depth + 1") {
  for (auto [n, b] : {std::pair{10, 2}, std::pair{50, 3}, std::pair{200, 5}, std::pair{10, 1}}) {
    CAPTURE(n);
    CAPTURE(b);
    for (auto kind : {PainterKind::RandomGreedy, PainterKind::BiasedWeighted, PainterKind::FirstFit}) {
      PainterAgent painter(kind, 5);
      BiasedCliqueBuilder builder;
      Transcript t;
      play_game(GameConfig{n, n, 1, b}, painter, builder, &t);
      int seen = 0;
      oracle::replay(t, [&](const GameState& s, const NoteRecord& r) {
        if (r.kind != "clique") return;
        const auto vertices = r.data.at("vertices").get<std::vector<Vertex>>();
        CHECK(static_cast<int>(vertices.size()) == clique_depth(n, b) + 1);
        CHECK(oracle::clique(s, vertices));
        ++seen;
      });
      CHECK(seen == 1);
      CHECK(audit_transcript(t, "auto").passed());
    }
  }
}

TEST_CASE("clique Builder with several paints per round") {
  CHECK(clique_sequence(100, 5, 2) == std::vector<std::int64_t>{100, 59, 34, 19, 10, 5, 2, -1});
  for (int p : {2, 3}) {
    for (int n : {40, 200}) {
      PainterAgent painter(PainterKind::RandomGreedy, 3);
      BiasedCliqueBuilder builder;
      Transcript t;
      REQUIRE_NOTHROW(play_game(GameConfig{n, n, p, 6}, painter, builder, &t));
      CHECK(audit_transcript(t, "auto").passed());
    }
  }
}

TEST_CASE("logarithmic Builder keeps the graph bipartite") {
  for (int n : {20, 60, 120}) {
    for (auto kind : {PainterKind::RandomGreedy, PainterKind::BiasedWeighted, PainterKind::TwoForOne,
                      PainterKind::FirstFit}) {
      PainterAgent painter(kind, static_cast<std::uint64_t>(n));
      LogarithmicBuilder builder;
      Transcript t;
      play_game(GameConfig{n, 3, 1, 1}, painter, builder, &t);
      bool always = true;
      oracle::replay(t, {}, [&](const GameState& s, const Record&) { always = always && oracle::bipartite(s); });
      CHECK(always);
    }
  }
}

TEST_CASE("logarithmic Builder in biased games: bipartite, and a room only when it fits") {
  for (auto [n, b] : {std::pair{16, 2}, std::pair{60, 2}, std::pair{500, 3}, std::pair{2000, 2}}) {
    for (auto kind : {PainterKind::RandomGreedy, PainterKind::FirstFit}) {
      CAPTURE(n);
      CAPTURE(b);
      PainterAgent painter(kind, 9);
      LogarithmicBuilder builder;
      Transcript t;
      play_game(GameConfig{n, 3, 1, b}, painter, builder, &t);
      bool always = true;
      oracle::replay(t, {}, [&](const GameState& s, const Record&) { always = always && oracle::bipartite(s); });
      CHECK(always);
      CHECK(audit_transcript(t, "auto").passed());
    }
  }
  // 6 + 3 Builder moves at b = 4 need more fresh vertices than n = 60 has.
  PainterAgent painter(PainterKind::RandomGreedy, 1);
  LogarithmicBuilder builder;
  Transcript t;
  play_game(GameConfig{60, 2, 1, 4}, painter, builder, &t);
  CHECK(find_note(t, "waiting_room") == nullptr);
  const NoteRecord* note = find_note(t, "fallback");
  REQUIRE(note != nullptr);
  CHECK(note->data.at("level").get<int>() == -1);
}

TEST_CASE("balanced pressure edges keep cross-side pairs available") {
  // Only vertex 1 has colour 1 and 3 has colour 2, both in one component
  // with 1-2, 1-3 drawn. Joining 4 to 3 puts it on 1's side, the smaller one.
  GameState s = GameState::from_position(GameConfig{5, 3, 1, 1}, std::vector<Colour>{0, 1, 0, 2, 0, 0},
                                         std::vector<Edge>{Edge(1, 2), Edge(1, 3)});
  ParityDsu parity(5);
  for (const Edge& edge : s.edges()) parity.unite(edge.u, edge.v);
  CHECK(parity.merge_cost(4, 1) == 2);
  CHECK(parity.merge_cost(4, 3) == 1);
  CHECK(parity.merge_cost(2, 3) == 0);
  const auto e = greedy_pressure_edge(s, &parity);
  REQUIRE(e);
  CHECK(*e == Edge(3, 4));
}

TEST_CASE("builder names round-trip") {
  for (auto kind : {BuilderKind::Random, BuilderKind::Logarithmic, BuilderKind::BiasedClique}) {
    CHECK(builder_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS(builder_kind_from_string("nobody"));
}

TEST_CASE("builder constants round-trip through JSON") {
  BuilderConstants c;
  c.shrink = 0.01;
  c.min_size = 10;
  CHECK(builder_constants_from_json(to_json(c)) == c);
}
