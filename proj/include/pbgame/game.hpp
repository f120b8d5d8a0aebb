#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "pbgame/types.hpp"

namespace pbgame {

struct Paint {
  Vertex vertex = 0;
  Colour colour = kUncoloured;
  friend bool operator==(const Paint&, const Paint&) = default;
};

struct Build {
  std::vector<Edge> edges;  ///< empty means a pass (no legal pair left)
  friend bool operator==(const Build&, const Build&) = default;
};

using Move = std::variant<Paint, Build>;

/// Which game rule a rejected move violated.
enum class Rule {
  GameOver,
  WrongTurn,
  VertexOutOfRange,
  VertexColoured,
  ColourOutOfRange,
  ColourConflict,
  SelfLoop,
  DuplicateEdge,
  RepeatedEdgeInMove,
  MonochromaticEdge,
  WrongEdgeCount,
};

std::string to_string(Rule rule);

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(Rule rule, const std::string& detail);
  Rule rule() const { return rule_; }

 private:
  Rule rule_;
};

/// Full position of a Painter-Builder game.
///
/// The colouring is proper at every point; edges and colours are only ever
/// added. Per-vertex distinct neighbour colours are maintained incrementally so
/// dead-vertex detection after a move costs O(degree).
class GameState {
 public:
  explicit GameState(const GameConfig& config);

  /// Arbitrary position for tests and synthetic setups. Painter to move,
  /// round 0. Throws IllegalMove if the colouring is not proper.
  static GameState from_position(const GameConfig& config,
                                 std::span<const Colour> colours,
                                 std::span<const Edge> edges);

  const GameConfig& config() const { return config_; }
  int n() const { return config_.n; }
  int k() const { return config_.k; }

  Colour colour(Vertex v) const { return colour_[check(v)]; }
  bool coloured(Vertex v) const { return colour(v) != kUncoloured; }
  std::span<const Colour> colours() const { return colour_; }  // index 0 unused

  std::span<const Vertex> neighbours(Vertex v) const { return adj_[check(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[check(v)].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  /// Edges in the order Builder drew them.
  std::span<const Edge> edges() const { return edges_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  /// Sorted set of colours present on v's neighbours.
  std::span<const Colour> neighbour_colours(Vertex v) const { return nbr_colours_[check(v)]; }
  int distinct_neighbour_colours(Vertex v) const {
    return static_cast<int>(nbr_colours_[check(v)].size());
  }
  /// Vertices currently carrying colour c, in painting order.
  std::span<const Vertex> colour_class(Colour c) const;

  int coloured_count() const { return coloured_count_; }
  int uncoloured_count() const { return config_.n - coloured_count_; }

  Turn turn() const { return turn_; }
  int round() const { return round_; }
  /// Paints still owed in the current Painter turn.
  int paints_remaining() const { return paints_remaining_; }
  Status status() const { return status_; }
  bool ongoing() const { return status_ == Status::Ongoing; }

  /// Unselected, non-monochromatic pairs.
  std::int64_t legal_pair_count() const;
  bool is_legal_pair(Vertex u, Vertex v) const;
  /// Edge count a Build move must carry right now: min(b, legal pairs).
  int required_edge_count() const;

  std::vector<Colour> legal_colours(Vertex v) const;
  bool is_legal_colour(Vertex v, Colour c) const;
  Colour smallest_legal_colour(Vertex v) const;  // kUncoloured if none
  bool is_dead(Vertex v) const { return dead_[check(v)] != 0; }
  std::vector<Vertex> dead_vertices() const;
  int dead_count() const { return dead_count_; }

  void apply_paint(Vertex v, Colour c);
  void apply_build(std::span<const Edge> edges);
  void apply(const Move& move);

 private:
  std::size_t check(Vertex v) const;
  void add_edge_unchecked(Edge e);
  void note_colour_at(Vertex v, Colour c);
  void recompute_status();
  void start_painter_turn();

  GameConfig config_;
  std::vector<Colour> colour_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<Colour>> nbr_colours_;
  std::vector<std::vector<Vertex>> classes_;  // index by colour, 0 unused
  std::vector<char> dead_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::vector<Edge> edges_;
  std::int64_t monochromatic_pairs_ = 0;
  int coloured_count_ = 0;
  int dead_count_ = 0;
  Turn turn_ = Turn::Painter;
  int round_ = 0;
  int paints_remaining_ = 0;
  Status status_ = Status::Ongoing;
};

inline GameState new_game(const GameConfig& config) { return GameState(config); }

/// Dead vertices recomputed from the raw colouring and adjacency, ignoring all
/// incremental bookkeeping.
std::vector<Vertex> dead_vertices_from_scratch(const GameState& state);

}  // namespace pbgame
