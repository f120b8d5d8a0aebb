#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbgame/game.hpp"
#include "pbgame/rng.hpp"

namespace pbgame {

/// One Painter turn: up to p paints, or a forfeit when the chosen vertex has
/// no colour left.
struct PaintTurn {
  std::vector<Paint> paints;
  bool forfeit = false;
};

// Single-decision rules. Each returns nullopt to signal a forfeit.

/// Coin between uncoloured endpoints of the last edge, the single uncoloured
/// endpoint, or else the lowest-index uncoloured vertex; smallest free colour.
std::optional<Paint> random_greedy_move(const GameState& state, std::optional<Edge> last_edge,
                                        Rng& rng);

/// Endpoint u of the last Build move chosen with probability deg(u) / (2m),
/// deg taken in the m submitted edges. Mass landing on a coloured endpoint
/// goes to the lowest-index uncoloured vertex.
std::optional<Paint> biased_weighted_move(const GameState& state,
                                          std::span<const Edge> last_edges, Rng& rng);

/// Makes sure both endpoints of the last edge carry colours, topping the turn
/// up with isolated (then any) uncoloured vertices painted with colour 1.
/// Emits at most state.paints_remaining() paints.
std::vector<Paint> two_for_one_move(const GameState& state, std::optional<Edge> last_edge);

/// Lowest-index uncoloured vertex that still has a legal colour.
std::optional<Paint> first_fit_move(const GameState& state);

enum class PainterKind { RandomGreedy, BiasedWeighted, TwoForOne, FirstFit };

std::string to_string(PainterKind kind);
PainterKind painter_kind_from_string(const std::string& name);

/// A Painter strategy bound to its RNG stream. One instance per game.
class PainterAgent {
 public:
  PainterAgent(PainterKind kind, std::uint64_t seed) : kind_(kind), rng_(seed) {}
  virtual ~PainterAgent() = default;

  PainterKind kind() const { return kind_; }
  virtual std::string name() const { return to_string(kind_); }
  std::uint64_t seed() const { return rng_.seed(); }

  /// Plans the whole turn on a copy of the state; last_build is Builder's
  /// previous move (empty at the opening move or after a pass).
  virtual PaintTurn play_turn(const GameState& state, std::span<const Edge> last_build);

 private:
  PainterKind kind_;
  Rng rng_;
};

}  // namespace pbgame
