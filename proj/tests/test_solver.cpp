#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pbgame/rng.hpp"
#include "pbgame/solver.hpp"

using namespace pbgame;

TEST_CASE("exact values on the smallest boards") {
  CHECK(solve_game(GameConfig{2, 1, 1, 1}).winner == Status::BuilderWin);
  CHECK(solve_game(GameConfig{2, 2, 1, 1}).winner == Status::PainterWin);
  CHECK(k_min_exact(2, 1, 1) == 2);
  CHECK(solve_game(GameConfig{3, 2, 1, 1}).winner == Status::PainterWin);
  CHECK(solve_game(GameConfig{3, 1, 1, 1}).winner == Status::BuilderWin);
}

TEST_CASE("memoised solver agrees with plain game-tree search") {
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (int p = 1; p <= 2; ++p) {
        for (int b = 1; b <= 2; ++b) {
          const GameConfig c{n, k, p, b};
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(p);
          CAPTURE(b);
          CHECK(solve_game(c).winner == solve_exhaustive(c));
        }
      }
    }
  }
}

TEST_CASE("winners are monotone in k") {
  for (int n = 2; n <= 5; ++n) {
    bool painter_won = false;
    for (int k = 1; k <= n; ++k) {
      const bool win = solve_game(GameConfig{n, k, 1, 1}).winner == Status::PainterWin;
      CHECK((!painter_won || win));
      painter_won = painter_won || win;
    }
    CHECK(painter_won);  // k = n always suffices
  }
}

TEST_CASE("canonical code is invariant under vertex and colour relabelling") {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    Position pos{GameConfig{n, k, 1, 1}, std::vector<Colour>(static_cast<std::size_t>(n) + 1, 0), {}, Turn::Painter, 1};
    for (Vertex v = 1; v <= n; ++v) {
      if (rng.below(2) == 0) pos.colours[static_cast<std::size_t>(v)] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    }
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = u + 1; v <= n; ++v) {
        const Colour cu = pos.colours[static_cast<std::size_t>(u)];
        if (cu != 0 && cu == pos.colours[static_cast<std::size_t>(v)]) continue;
        if (rng.below(3) == 0) pos.edges.emplace_back(u, v);
      }
    }
    pos.turn = rng.coin() ? Turn::Painter : Turn::Builder;

    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<Colour> cperm(static_cast<std::size_t>(k));
    std::iota(cperm.begin(), cperm.end(), 1);
    for (std::size_t i = cperm.size(); i > 1; --i) std::swap(cperm[i - 1], cperm[rng.below(i)]);

    Position moved = pos;
    moved.edges.clear();
    for (Vertex v = 1; v <= n; ++v) {
      const Colour c = pos.colours[static_cast<std::size_t>(v)];
      moved.colours[static_cast<std::size_t>(perm[static_cast<std::size_t>(v - 1)])] =
          c == 0 ? 0 : cperm[static_cast<std::size_t>(c - 1)];
    }
    for (const Edge& e : pos.edges) {
      moved.edges.emplace_back(perm[static_cast<std::size_t>(e.u - 1)], perm[static_cast<std::size_t>(e.v - 1)]);
    }
    CHECK(canonical_code(pos) == canonical_code(moved));
    // The decoded representative has the same code.
    const Position back = decode_position(canonical_code(pos), pos.config);
    CHECK(canonical_code(back) == canonical_code(pos));
    CHECK(back.edges.size() == pos.edges.size());
  }
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(solve_game(GameConfig{7, 3, 1, 1}), CapExceeded);
  CHECK_THROWS_AS(solve_game(GameConfig{6, 3, 2, 1}), CapExceeded);
  CHECK_THROWS_AS(solve_game(GameConfig{8, 3, 1, 1}, SolverCaps{8, 8}), CapExceeded);
  CHECK_THROWS_AS(solve_exhaustive(GameConfig{5, 2, 1, 1}), CapExceeded);
}

TEST_CASE("table covers the grid") {
  const auto rows = solve_table(4, 3);
  CHECK(rows.size() == 9);
  for (const auto& row : rows) CHECK(row.winner != Status::Ongoing);
}
