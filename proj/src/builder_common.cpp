#include <algorithm>

#include "pbgame/builder.hpp"

namespace pbgame {

nlohmann::json to_json(const BuilderConstants& c) {
  return {{"shrink", c.shrink},         {"min_size", c.min_size},
          {"room_fraction", c.room_fraction}, {"round_cap", c.round_cap},
          {"room_min_n", c.room_min_n}, {"proven_min_n", c.proven_min_n}};
}

BuilderConstants builder_constants_from_json(const nlohmann::json& j) {
  BuilderConstants c;
  c.shrink = j.value("shrink", c.shrink);
  c.min_size = j.value("min_size", c.min_size);
  c.room_fraction = j.value("room_fraction", c.room_fraction);
  c.round_cap = j.value("round_cap", c.round_cap);
  c.room_min_n = j.value("room_min_n", c.room_min_n);
  c.proven_min_n = j.value("proven_min_n", c.proven_min_n);
  return c;
}

namespace {

bool taken_contains(const std::vector<Edge>& taken, const Edge& e) {
  return std::find(taken.begin(), taken.end(), e) != taken.end();
}

}  // namespace

Build random_builder_move(const GameState& state, Rng& rng) {
  Build move;
  const int required = state.required_edge_count();
  const auto n = static_cast<std::uint64_t>(state.n());
  const std::int64_t total = state.n() * static_cast<std::int64_t>(state.n() - 1) / 2;
  for (int i = 0; i < required; ++i) {
    bool found = false;
    // Rejection sampling is uniform over legal pairs; fall back to explicit
    // enumeration when the board is nearly saturated.
    const std::int64_t legal = state.legal_pair_count() - static_cast<std::int64_t>(move.edges.size());
    if (legal * 8 >= total) {
      for (int attempt = 0; attempt < 64 && !found; ++attempt) {
        const auto u = static_cast<Vertex>(1 + rng.below(n));
        const auto v = static_cast<Vertex>(1 + rng.below(n));
        if (u == v || !state.is_legal_pair(u, v)) continue;
        const Edge e(u, v);
        if (taken_contains(move.edges, e)) continue;
        move.edges.push_back(e);
        found = true;
      }
    }
    if (found) continue;
    std::vector<Edge> pool;
    for (Vertex u = 1; u <= state.n(); ++u) {
      for (Vertex v = u + 1; v <= state.n(); ++v) {
        if (state.is_legal_pair(u, v) && !taken_contains(move.edges, Edge(u, v))) pool.emplace_back(u, v);
      }
    }
    if (pool.empty()) break;
    move.edges.push_back(pool[rng.below(pool.size())]);
  }
  return move;
}

std::optional<Edge> lowest_legal_pair(const GameState& state,
                                      const std::function<bool(Vertex, Vertex)>& filter,
                                      const std::vector<Edge>& taken) {
  for (Vertex u = 1; u <= state.n(); ++u) {
    for (Vertex v = u + 1; v <= state.n(); ++v) {
      if (!state.is_legal_pair(u, v)) continue;
      if (filter && !filter(u, v)) continue;
      if (taken_contains(taken, Edge(u, v))) continue;
      return Edge(u, v);
    }
  }
  return std::nullopt;
}

std::optional<Edge> greedy_pressure_edge(const GameState& state, ParityDsu* parity,
                                         const std::vector<Edge>& taken) {
  const int k = state.k();
  std::vector<std::vector<Vertex>> buckets(static_cast<std::size_t>(k) + 1);
  for (Vertex v = 1; v <= state.n(); ++v) {
    if (!state.coloured(v)) buckets[static_cast<std::size_t>(state.distinct_neighbour_colours(v))].push_back(v);
  }
  for (int d = k - 1; d >= 0; --d) {
    for (Vertex u : buckets[static_cast<std::size_t>(d)]) {
      // With a parity check, take the cheapest merge so the sides stay
      // balanced and cross-side pairs do not run out.
      std::optional<Edge> best;
      std::int64_t best_cost = 0;
      for (Colour c = 1; c <= k; ++c) {
        if (!state.is_legal_colour(u, c)) continue;
        for (Vertex w : state.colour_class(c)) {
          if (state.has_edge(u, w)) continue;
          const Edge e(u, w);
          if (taken_contains(taken, e)) continue;
          if (!parity) return e;
          if (!parity->can_join(u, w)) continue;
          const std::int64_t cost = parity->merge_cost(u, w);
          if (!best || cost < best_cost) {
            best = e;
            best_cost = cost;
          }
        }
      }
      if (best) return best;
    }
  }
  return lowest_legal_pair(
      state, [parity](Vertex u, Vertex v) { return !parity || parity->can_join(u, v); }, taken);
}

std::string to_string(BuilderKind kind) {
  switch (kind) {
    case BuilderKind::Random:
      return "random";
    case BuilderKind::Logarithmic:
      return "logarithmic";
    case BuilderKind::BiasedClique:
      return "biased-clique";
  }
  return "?";
}

BuilderKind builder_kind_from_string(const std::string& name) {
  for (auto kind : {BuilderKind::Random, BuilderKind::Logarithmic, BuilderKind::BiasedClique}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown builder '" + name + "'");
}

void RandomBuilder::play(Driver& driver) {
  for (;;) driver.build(random_builder_move(driver.state(), rng_).edges);
}

std::unique_ptr<BuilderAgent> make_builder(BuilderKind kind, std::uint64_t seed,
                                           const BuilderConstants& constants) {
  switch (kind) {
    case BuilderKind::Random:
      return std::make_unique<RandomBuilder>(seed);
    case BuilderKind::Logarithmic:
      return std::make_unique<LogarithmicBuilder>(constants);
    case BuilderKind::BiasedClique:
      return std::make_unique<BiasedCliqueBuilder>();
  }
  throw std::invalid_argument("unknown builder kind");
}

}  // namespace pbgame
