#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pbgame/game.hpp"

namespace pbgame {

/// Union-find that also tracks the parity of each vertex relative to its root,
/// so an edge can be tested for keeping the graph 2-colourable in O(α(n)).
class ParityDsu {
 public:
  explicit ParityDsu(int n = 0);

  void reset(int n);
  int find(Vertex v);
  int parity(Vertex v);
  /// True if adding u-v keeps the graph bipartite.
  bool can_join(Vertex u, Vertex v);
  bool same_component(Vertex u, Vertex v) { return find(u) == find(v); }
  /// Adds u-v; returns false if it closes an odd cycle (the conflict sticks).
  bool unite(Vertex u, Vertex v);
  bool bipartite() const { return bipartite_; }
  /// Same-side pairs that adding u-v would create; 0 inside one component.
  std::int64_t merge_cost(Vertex u, Vertex v);

 private:
  std::vector<int> parent_;
  std::vector<char> parity_;  // relative to parent
  std::vector<int> rank_;
  std::vector<std::array<std::int64_t, 2>> side_;  // per root, by parity
  std::vector<int> path_;
  bool bipartite_ = true;
};

/// Reason a structural predicate failed; nullopt means it holds.
using Violation = std::optional<std::string>;

/// BFS 2-colouring of the game graph.
bool is_bipartite(const GameState& state);

/// Component label for every vertex (index 0 unused, labels start at 0).
std::vector<int> component_labels(const GameState& state);

/// Every component is a path with at most max_len edges.
Violation check_disjoint_paths(const GameState& state, int max_len);

/// Edges that lie on no cycle.
std::unordered_set<std::uint64_t> bridge_keys(const GameState& state);

/// Pairwise adjacency of the given vertices.
Violation check_clique(const GameState& state, std::span<const Vertex> vertices);

/// Vertices v with at least `level` distinct colours on their neighbours.
int count_with_colour_neighbourhood(const GameState& state, std::span<const Vertex> vertices,
                                    int level);

/// Waiting-room (A, B) certificate: A, B disjoint independent sets of equal
/// size >= min_size, G[A ∪ B] a perfect matching, A monochromatic in
/// room_colour, and no vertex of B carrying room_colour.
Violation check_waiting_room(const GameState& state, std::span<const Vertex> a,
                             std::span<const Vertex> b, Colour room_colour, int min_size,
                             bool require_perfect_matching);

/// The four escalation postconditions for a level-`level` set:
/// |next| > shrink * previous_size, all uncoloured with `level` distinct
/// neighbour colours, pairwise distinct tree components, and every cycle edge
/// running between room_a and room_b.
Violation check_escalation(const GameState& state, std::span<const Vertex> next, int level,
                           int previous_size, double shrink, std::span<const Vertex> room_a,
                           std::span<const Vertex> room_b);

}  // namespace pbgame
