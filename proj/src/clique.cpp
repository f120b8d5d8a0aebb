#include <algorithm>

#include "pbgame/builder.hpp"

namespace pbgame {

std::vector<std::int64_t> clique_sequence(std::int64_t n, std::int64_t b, std::int64_t p) {
  if (n < 1 || b < 1 || p < 1) throw std::invalid_argument("clique_sequence needs n, b, p >= 1");
  std::vector<std::int64_t> seq{n};
  while (seq.back() > 0) {
    const std::int64_t cur = seq.back();
    seq.push_back(cur - p * ((cur - 1 + b - 1) / b) - 1);
  }
  return seq;
}

int clique_depth(std::int64_t n, std::int64_t b, std::int64_t p) {
  return static_cast<int>(clique_sequence(n, b, p).size()) - 2;
}

void BiasedCliqueBuilder::play(Driver& driver) {
  const GameState& state = driver.state();
  const int b = state.config().b;
  const int p = state.config().p;
  const auto seq = clique_sequence(state.n(), b, p);
  const int depth = clique_depth(state.n(), b, p);

  std::vector<Vertex> clique;
  std::vector<Vertex> pool;
  for (Vertex v = 1; v <= state.n(); ++v) pool.push_back(v);

  for (int j = 0; j < depth; ++j) {
    const auto bound = static_cast<std::size_t>(seq[static_cast<std::size_t>(j)]);
    if (pool.size() < bound) {
      throw ConsistencyFailure("phase " + std::to_string(j) + " pool has " + std::to_string(pool.size()) +
                               " vertices, recurrence promises " + std::to_string(bound));
    }
    pool.resize(bound);
    const Vertex apex = pool.front();
    std::vector<char> in_pool(static_cast<std::size_t>(state.n()) + 1, 0);
    for (Vertex v : pool) in_pool[static_cast<std::size_t>(v)] = 1;

    for (;;) {
      std::vector<Vertex> pending;
      for (std::size_t i = 1; i < pool.size(); ++i) {
        const Vertex v = pool[i];
        if (!state.coloured(v) && !state.has_edge(apex, v)) pending.push_back(v);
      }
      const bool last = pending.size() <= static_cast<std::size_t>(b);
      if (!last) pending.resize(static_cast<std::size_t>(b));
      std::vector<Edge> edges;
      for (Vertex v : pending) edges.emplace_back(apex, v);
      const auto required = static_cast<std::size_t>(state.required_edge_count());
      while (edges.size() < required) {
        auto e = lowest_legal_pair(
            state, [&](Vertex u, Vertex v) { return !in_pool[static_cast<std::size_t>(u)] && !in_pool[static_cast<std::size_t>(v)]; },
            edges);
        if (!e) e = lowest_legal_pair(state, nullptr, edges);
        if (!e) break;
        edges.push_back(*e);
      }

      std::vector<NoteRecord> notes;
      if (last) {
        std::vector<Vertex> next;
        for (std::size_t i = 1; i < pool.size(); ++i) {
          const Vertex v = pool[i];
          const bool joined = state.has_edge(apex, v) || std::find(pending.begin(), pending.end(), v) != pending.end();
          if (joined && !state.coloured(v)) next.push_back(v);
        }
        clique.push_back(apex);
        pool = std::move(next);
        notes.push_back(NoteRecord{0,
                                   "clique_phase",
                                   {{"j", j + 1},
                                    {"K", clique},
                                    {"V", pool},
                                    {"bound", seq[static_cast<std::size_t>(j) + 1]}}});
        if (j + 1 == depth) {
          std::vector<Vertex> full = clique;
          if (!pool.empty()) full.push_back(pool.front());
          notes.push_back(NoteRecord{0, "clique", {{"vertices", full}, {"expected_size", depth + 1}}});
        }
      }
      driver.build(std::move(edges), std::move(notes));
      if (last) break;
    }
  }
  if (depth == 0) driver.annotate("clique", {{"vertices", {pool.front()}}, {"expected_size", 1}});

  for (;;) {
    std::vector<Edge> edges;
    const auto required = static_cast<std::size_t>(state.required_edge_count());
    while (edges.size() < required) {
      auto e = greedy_pressure_edge(state, nullptr, edges);
      if (!e) break;
      edges.push_back(*e);
    }
    driver.build(std::move(edges));
  }
}

}  // namespace pbgame
