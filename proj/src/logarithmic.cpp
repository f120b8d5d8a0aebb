#include <algorithm>

#include "pbgame/builder.hpp"

namespace pbgame {

namespace {

/// Like stall_in_waiting_room, but skips pairs already chosen for this move
/// and pairs that would close an odd cycle.
std::optional<Edge> room_pair_avoiding(const GameState& state, WaitingRoom& room, const std::vector<Edge>& taken,
                                       ParityDsu& parity) {
  const std::size_t width = room.b.size();
  const std::size_t total = room.a.size() * width;
  while (room.cursor < total &&
         !state.is_legal_pair(room.a[room.cursor / width], room.b[room.cursor % width])) {
    ++room.cursor;
  }
  for (std::size_t i = room.cursor; i < total; ++i) {
    const Edge e(room.a[i / width], room.b[i % width]);
    if (!state.is_legal_pair(e.u, e.v)) continue;
    if (std::find(taken.begin(), taken.end(), e) != taken.end()) continue;
    if (!parity.can_join(e.u, e.v)) continue;
    return e;
  }
  return std::nullopt;
}

/// Highest-index pair of isolated uncoloured vertices not used in this move.
/// The room draws its vertices from the bottom, so these stay clear of it.
std::optional<Edge> isolated_pair_from_top(const GameState& state, const std::vector<Edge>& taken) {
  std::vector<Vertex> pick;
  for (Vertex v = state.n(); v >= 1 && pick.size() < 2; --v) {
    if (state.coloured(v) || state.degree(v) != 0) continue;
    const bool used = std::any_of(taken.begin(), taken.end(), [v](const Edge& e) { return e.u == v || e.v == v; });
    if (!used) pick.push_back(v);
  }
  if (pick.size() < 2) return std::nullopt;
  return Edge(pick[1], pick[0]);
}

}  // namespace

void LogarithmicBuilder::play(Driver& driver) {
  const GameState& state = driver.state();
  ParityDsu parity(state.n());
  std::size_t synced = 0;
  std::optional<WaitingRoom> room;
  bool constructing = true;

  auto sync = [&] {
    const auto edges = state.edges();
    for (; synced < edges.size(); ++synced) parity.unite(edges[synced].u, edges[synced].v);
  };
  // Tops a move up to the required edge count. While the room is being built
  // only fresh isolated pairs are used, keeping its certificate intact; after
  // that room stalls first, then bipartite pressure edges, then anything legal.
  auto pad = [&](std::vector<Edge>& edges) {
    sync();
    ParityDsu trial = parity;
    for (const Edge& e : edges) trial.unite(e.u, e.v);
    const auto required = static_cast<std::size_t>(state.required_edge_count());
    while (edges.size() < required) {
      std::optional<Edge> e;
      if (constructing) e = isolated_pair_from_top(state, edges);
      if (!e && room) e = room_pair_avoiding(state, *room, edges, trial);
      if (!e) e = greedy_pressure_edge(state, &trial, edges);
      if (!e) e = lowest_legal_pair(state, nullptr, edges);
      if (!e) break;
      trial.unite(e->u, e->v);
      edges.push_back(*e);
    }
  };
  EdgeSink emit = [&](std::vector<Edge> edges, std::vector<NoteRecord> notes) {
    pad(edges);
    driver.build(std::move(edges), std::move(notes));
  };

  try {
    room = build_waiting_room(driver, constants_, emit);
    constructing = false;
    std::vector<Vertex> isolated;
    for (Vertex v = 1; v <= state.n(); ++v) {
      if (!state.coloured(v) && state.degree(v) == 0) isolated.push_back(v);
    }
    EscalationState esc{0, std::move(isolated)};
    for (;;) {
      try {
        check_escalation_preconditions(state, esc, constants_);
      } catch (const PreconditionViolation& e) {
        driver.annotate("fallback", {{"level", esc.level}, {"reason", e.what()}});
        break;
      }
      EscalationResult step = escalate_step(driver, esc, *room, constants_, emit);
      for (const std::string& w : step.warnings) {
        driver.annotate("warning", {{"level", esc.level}, {"message", w}});
      }
      driver.annotate("escalation", {{"level", step.next.level},
                                     {"previous_size", esc.members.size()},
                                     {"shrink", constants_.shrink},
                                     {"route", to_string(step.route)},
                                     {"rounds", step.rounds},
                                     {"members", step.next.members}});
      esc = std::move(step.next);
    }
  } catch (const PreconditionViolation& e) {
    constructing = false;
    driver.annotate("fallback", {{"level", -1}, {"reason", e.what()}});
  } catch (const RoomExhausted& e) {
    driver.annotate("fallback", {{"reason", e.what()}});
  } catch (const ConsistencyFailure& e) {
    driver.annotate("escalation_failed", {{"reason", e.what()}});
  }

  for (;;) emit({}, {});
}

}  // namespace pbgame
