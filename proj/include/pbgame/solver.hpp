#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pbgame/game.hpp"

namespace pbgame {

/// Largest boards the solver accepts. Positions pack into 64 bits, so the hard
/// ceiling is n = 7 whatever the caps say.
struct SolverCaps {
  int max_n_unbiased = 6;
  int max_n_biased = 5;
};

inline constexpr int kSolverHardMaxN = 7;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A position at sub-move granularity: within a turn Painter paints and
/// Builder draws one item at a time, `remaining` counting what is still owed.
struct Position {
  GameConfig config;
  std::vector<Colour> colours;  ///< index 0 unused
  std::vector<Edge> edges;
  Turn turn = Turn::Painter;
  int remaining = 1;
};

Position position_of(const GameState& state);

/// Code shared by every position reachable from this one by relabelling
/// vertices and permuting colours. Needs n <= 7 and k < n.
std::uint64_t canonical_code(const Position& position);
/// A representative position for a canonical code.
Position decode_position(std::uint64_t code, const GameConfig& config);

struct SolveResult {
  Status winner = Status::Ongoing;
  std::size_t positions = 0;  ///< distinct canonical positions stored
};

/// Winner under optimal play from the opening position, memoised over
/// canonical positions.
SolveResult solve_game(const GameConfig& config, const SolverCaps& caps = {});

/// Smallest k in [1, n] for which Painter wins.
int k_min_exact(int n, int p, int b, const SolverCaps& caps = {});

/// Plain game-tree search on the engine itself: whole moves, no memo, no
/// symmetry reduction. Used as an independent check of solve_game.
Status solve_exhaustive(const GameConfig& config, int max_n = 4);

struct SolveRow {
  GameConfig config;
  Status winner = Status::Ongoing;
};

/// Winners for n in [2, max_n] and k in [1, max_k] at bias (p:b).
std::vector<SolveRow> solve_table(int max_n, int max_k, int p = 1, int b = 1, const SolverCaps& caps = {});

}  // namespace pbgame
