#include <algorithm>
#include <cmath>

#include "pbgame/builder.hpp"

namespace pbgame {

namespace {

/// ceil(x) for the small positive products used by the room sizes; nudged so
/// that 0.1 * 60 counts as exactly 6.
int ceil_int(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

std::vector<Vertex> isolated_uncoloured(const GameState& state, std::size_t count) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= state.n() && out.size() < count; ++v) {
    if (!state.coloured(v) && state.degree(v) == 0) out.push_back(v);
  }
  return out;
}

}  // namespace

WaitingRoom build_waiting_room(Driver& driver, const BuilderConstants& constants,
                               const EdgeSink& emit) {
  const GameState& state = driver.state();
  const int n = state.n();
  const int k = state.k();
  if (n <= constants.room_min_n) {
    throw PreconditionViolation("waiting-room needs n > " + std::to_string(constants.room_min_n));
  }
  if (k < 2) throw PreconditionViolation("waiting-room needs k >= 2");

  const int matching_rounds = ceil_int(constants.room_fraction * n);
  const int room_size = ceil_int(constants.room_fraction * n / k);
  if (state.config().b > 1) {
    // Padding a biased move uses two fresh isolated vertices per extra edge,
    // and Painter may colour p isolated vertices per turn.
    const int moves = matching_rounds + room_size;
    const std::int64_t needed = 2LL * matching_rounds + room_size + 2LL * (state.config().b - 1) * moves +
                                static_cast<std::int64_t>(state.config().p) * (moves + 1);
    if (needed > n) {
      throw PreconditionViolation("waiting-room with b = " + std::to_string(state.config().b) + " needs " +
                                  std::to_string(needed) + " fresh vertices, n = " + std::to_string(n));
    }
  }
  for (int r = 0; r < matching_rounds; ++r) {
    const auto pair = isolated_uncoloured(state, 2);
    if (pair.size() < 2) throw PreconditionViolation("no isolated uncoloured pair left to match");
    emit({Edge(pair[0], pair[1])}, {});
  }

  Colour best = kUncoloured;
  for (Colour c = 1; c <= k; ++c) {
    if (best == kUncoloured || state.colour_class(c).size() > state.colour_class(best).size()) best = c;
  }
  std::vector<Vertex> a(state.colour_class(best).begin(), state.colour_class(best).end());
  std::sort(a.begin(), a.end());
  if (static_cast<int>(a.size()) < room_size) {
    throw PreconditionViolation("largest colour class has " + std::to_string(a.size()) +
                                " vertices, room needs " + std::to_string(room_size));
  }
  a.resize(static_cast<std::size_t>(room_size));

  WaitingRoom room;
  room.a = a;
  room.colour = best;
  for (int i = 0; i < room_size; ++i) {
    const auto fresh = isolated_uncoloured(state, 1);
    if (fresh.empty()) throw PreconditionViolation("no isolated uncoloured vertex left for B");
    room.b.push_back(fresh.front());
    std::vector<NoteRecord> notes;
    if (i + 1 == room_size) {
      std::vector<Vertex> b_sorted = room.b;
      std::sort(b_sorted.begin(), b_sorted.end());
      notes.push_back(NoteRecord{0,
                                 "waiting_room",
                                 {{"A", room.a},
                                  {"B", b_sorted},
                                  {"colour", room.colour},
                                  {"min_size", room_size},
                                  {"builder_moves", driver.builder_moves() + 1},
                                  {"round_cap", constants.round_cap}}});
    }
    emit({Edge(room.a[static_cast<std::size_t>(i)], fresh.front())}, std::move(notes));
  }
  std::sort(room.b.begin(), room.b.end());
  return room;
}

std::optional<Edge> stall_in_waiting_room(const GameState& state, WaitingRoom& room) {
  const std::size_t width = room.b.size();
  const std::size_t total = room.a.size() * width;
  for (; room.cursor < total; ++room.cursor) {
    const Vertex a = room.a[room.cursor / width];
    const Vertex b = room.b[room.cursor % width];
    if (state.is_legal_pair(a, b)) return Edge(a, b);
  }
  return std::nullopt;
}

}  // namespace pbgame
