#include "pbgame/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

namespace pbgame {

namespace {

constexpr int kMaxN = kSolverHardMaxN;

/// Compact position; vertices are 0-based here.
struct Node {
  int n = 0;
  int k = 0;
  std::array<std::uint8_t, kMaxN> colour{};
  std::array<std::uint8_t, kMaxN> adj{};  // neighbour bitmask
  bool builder = false;
  int remaining = 0;
};

int pair_bits(int n) { return n * (n - 1) / 2; }

std::uint64_t encode(const Node& s, const std::array<int, kMaxN>& perm) {
  std::array<std::uint8_t, kMaxN + 1> relabel{};
  std::uint8_t next = 0;
  std::uint64_t colours = 0;
  for (int i = 0; i < s.n; ++i) {
    const auto c = s.colour[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    std::uint8_t mapped = 0;
    if (c != 0) {
      if (relabel[c] == 0) relabel[c] = ++next;
      mapped = relabel[c];
    }
    colours = (colours << 3) | mapped;
  }
  std::uint64_t adjacency = 0;
  for (int i = 0; i < s.n; ++i) {
    const auto row = s.adj[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int j = i + 1; j < s.n; ++j) {
      adjacency = (adjacency << 1) | ((row >> perm[static_cast<std::size_t>(j)]) & 1U);
    }
  }
  const std::uint64_t head = (s.builder ? 8U : 0U) | static_cast<std::uint64_t>(s.remaining);
  return (((head << (3 * s.n)) | colours) << pair_bits(s.n)) | adjacency;
}

std::uint64_t raw_code(const Node& s) {
  std::array<int, kMaxN> id{};
  for (int i = 0; i < kMaxN; ++i) id[static_cast<std::size_t>(i)] = i;
  return encode(s, id);
}

/// Vertex invariant under relabelling and colour permutation.
std::uint64_t invariant(const Node& s, int v) {
  const auto c = s.colour[static_cast<std::size_t>(v)];
  int class_size = 0;
  if (c != 0) {
    for (int w = 0; w < s.n; ++w) class_size += s.colour[static_cast<std::size_t>(w)] == c;
  }
  const auto row = s.adj[static_cast<std::size_t>(v)];
  std::array<int, kMaxN> nd{};
  int deg = 0;
  for (int w = 0; w < s.n; ++w) {
    if ((row >> w) & 1U) nd[static_cast<std::size_t>(deg++)] = std::popcount(s.adj[static_cast<std::size_t>(w)]);
  }
  std::sort(nd.begin(), nd.begin() + deg, std::greater<>());
  std::uint64_t key = (c != 0 ? 1U : 0U);
  key = (key << 3) | static_cast<std::uint64_t>(class_size);
  key = (key << 3) | static_cast<std::uint64_t>(deg);
  for (int i = 0; i < kMaxN; ++i) key = (key << 3) | static_cast<std::uint64_t>(nd[static_cast<std::size_t>(i)]);
  return key;
}

std::uint64_t canonical(const Node& s) {
  std::array<std::uint64_t, kMaxN> inv{};
  std::array<int, kMaxN> perm{};
  for (int v = 0; v < s.n; ++v) {
    inv[static_cast<std::size_t>(v)] = invariant(s, v);
    perm[static_cast<std::size_t>(v)] = v;
  }
  std::sort(perm.begin(), perm.begin() + s.n, [&](int a, int b) {
    const auto ia = inv[static_cast<std::size_t>(a)];
    const auto ib = inv[static_cast<std::size_t>(b)];
    return ia != ib ? ia < ib : a < b;
  });
  std::array<int, kMaxN + 1> cell_start{};
  int cells = 0;
  for (int i = 0; i < s.n; ++i) {
    if (i == 0 || inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] !=
                      inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i - 1)])]) {
      cell_start[static_cast<std::size_t>(cells++)] = i;
    }
  }
  cell_start[static_cast<std::size_t>(cells)] = s.n;

  std::uint64_t best = encode(s, perm);
  for (;;) {
    int c = cells - 1;
    for (; c >= 0; --c) {
      auto* first = perm.data() + cell_start[static_cast<std::size_t>(c)];
      auto* last = perm.data() + cell_start[static_cast<std::size_t>(c) + 1];
      if (std::next_permutation(first, last)) break;
    }
    if (c < 0) break;
    best = std::min(best, encode(s, perm));
  }
  return best;
}

Node node_from_code(std::uint64_t code, int n, int k) {
  Node s;
  s.n = n;
  s.k = k;
  std::uint64_t adjacency = code & ((std::uint64_t{1} << pair_bits(n)) - 1);
  code >>= pair_bits(n);
  for (int i = n - 1; i >= 0; --i) {
    s.colour[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code & 7U);
    code >>= 3;
  }
  s.remaining = static_cast<int>(code & 7U);
  s.builder = (code & 8U) != 0;
  for (int i = n - 1; i >= 0; --i) {
    for (int j = n - 1; j > i; --j) {
      if (adjacency & 1U) {
        s.adj[static_cast<std::size_t>(i)] |= static_cast<std::uint8_t>(1U << j);
        s.adj[static_cast<std::size_t>(j)] |= static_cast<std::uint8_t>(1U << i);
      }
      adjacency >>= 1;
    }
  }
  return s;
}

Node node_of(const Position& pos) {
  const auto& cfg = pos.config;
  if (cfg.n > kMaxN) throw CapExceeded("positions need n <= " + std::to_string(kMaxN));
  if (cfg.k >= 8) throw CapExceeded("positions need k <= 7");
  Node s;
  s.n = cfg.n;
  s.k = cfg.k;
  for (int v = 1; v <= cfg.n; ++v) {
    s.colour[static_cast<std::size_t>(v - 1)] = static_cast<std::uint8_t>(pos.colours[static_cast<std::size_t>(v)]);
  }
  for (const Edge& e : pos.edges) {
    s.adj[static_cast<std::size_t>(e.u - 1)] |= static_cast<std::uint8_t>(1U << (e.v - 1));
    s.adj[static_cast<std::size_t>(e.v - 1)] |= static_cast<std::uint8_t>(1U << (e.u - 1));
  }
  s.builder = pos.turn == Turn::Builder;
  s.remaining = pos.remaining;
  return s;
}

class Solver {
 public:
  Solver(int p, int b) : p_(p), b_(b) {}

  bool painter_wins(const Node& s) {
    const std::uint64_t raw = raw_code(s);
    if (auto it = raw_memo_.find(raw); it != raw_memo_.end()) return it->second;
    const std::uint64_t key = canonical(s);
    bool result;
    if (auto it = memo_.find(key); it != memo_.end()) {
      result = it->second;
    } else {
      result = s.builder ? builder_node(s) : painter_node(s);
      memo_.emplace(key, result);
    }
    raw_memo_.emplace(raw, result);
    return result;
  }

  std::size_t positions() const { return memo_.size(); }

  Node opening(int n, int k) const {
    Node s;
    s.n = n;
    s.k = k;
    s.remaining = std::min(p_, n);
    return s;
  }

 private:
  static int uncoloured(const Node& s) {
    int count = 0;
    for (int v = 0; v < s.n; ++v) count += s.colour[static_cast<std::size_t>(v)] == 0;
    return count;
  }

  static unsigned neighbour_colours(const Node& s, int v) {
    unsigned mask = 0;
    for (int w = 0; w < s.n; ++w) {
      if ((s.adj[static_cast<std::size_t>(v)] >> w) & 1U) mask |= 1U << s.colour[static_cast<std::size_t>(w)];
    }
    return mask & ~1U;
  }

  static bool has_dead(const Node& s) {
    const unsigned full = ((1U << (s.k + 1)) - 1) & ~1U;
    for (int v = 0; v < s.n; ++v) {
      if (s.colour[static_cast<std::size_t>(v)] == 0 && (neighbour_colours(s, v) & full) == full) return true;
    }
    return false;
  }

  static bool legal_pair(const Node& s, int u, int v) {
    if ((s.adj[static_cast<std::size_t>(u)] >> v) & 1U) return false;
    const auto cu = s.colour[static_cast<std::size_t>(u)];
    return cu == 0 || cu != s.colour[static_cast<std::size_t>(v)];
  }

  static int legal_pairs(const Node& s) {
    int count = 0;
    for (int u = 0; u < s.n; ++u) {
      for (int v = u + 1; v < s.n; ++v) count += legal_pair(s, u, v);
    }
    return count;
  }

  void start_painter(Node& s) const {
    s.builder = false;
    s.remaining = std::min(p_, uncoloured(s));
  }

  void start_builder(Node& s) const {
    const int legal = legal_pairs(s);
    if (legal == 0) {
      start_painter(s);  // pass
      return;
    }
    s.builder = true;
    s.remaining = std::min(b_, legal);
  }

  bool painter_node(const Node& s) {
    unsigned used = 0;
    for (int v = 0; v < s.n; ++v) used |= 1U << s.colour[static_cast<std::size_t>(v)];
    for (int v = 0; v < s.n; ++v) {
      if (s.colour[static_cast<std::size_t>(v)] != 0) continue;
      const unsigned blocked = neighbour_colours(s, v);
      bool tried_fresh = false;
      for (int c = 1; c <= s.k; ++c) {
        if ((blocked >> c) & 1U) continue;
        // Unused colours are interchangeable.
        if (!((used >> c) & 1U)) {
          if (tried_fresh) continue;
          tried_fresh = true;
        }
        Node child = s;
        child.colour[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(c);
        if (uncoloured(child) == 0) return true;
        if (has_dead(child)) continue;
        if (--child.remaining == 0) start_builder(child);
        if (painter_wins(child)) return true;
      }
    }
    return false;
  }

  bool builder_node(const Node& s) {
    for (int u = 0; u < s.n; ++u) {
      for (int v = u + 1; v < s.n; ++v) {
        if (!legal_pair(s, u, v)) continue;
        Node child = s;
        child.adj[static_cast<std::size_t>(u)] |= static_cast<std::uint8_t>(1U << v);
        child.adj[static_cast<std::size_t>(v)] |= static_cast<std::uint8_t>(1U << u);
        if (has_dead(child)) return false;
        if (--child.remaining == 0) start_painter(child);
        if (!painter_wins(child)) return false;
      }
    }
    return true;
  }

  int p_;
  int b_;
  std::unordered_map<std::uint64_t, bool> memo_;
  std::unordered_map<std::uint64_t, bool> raw_memo_;
};

void check_caps(const GameConfig& config, const SolverCaps& caps) {
  validate(config);
  const bool biased = config.p != 1 || config.b != 1;
  const int cap = std::min(biased ? caps.max_n_biased : caps.max_n_unbiased, kMaxN);
  if (config.n > cap) {
    throw CapExceeded("n = " + std::to_string(config.n) + " exceeds the solver cap " + std::to_string(cap) +
                      (biased ? " for biased games" : ""));
  }
  if (config.p > 7 || config.b > 7) throw CapExceeded("solver supports p, b <= 7");
}

}  // namespace

Position position_of(const GameState& state) {
  Position pos;
  pos.config = state.config();
  pos.colours.assign(state.colours().begin(), state.colours().end());
  pos.edges.assign(state.edges().begin(), state.edges().end());
  pos.turn = state.turn();
  pos.remaining = state.turn() == Turn::Painter ? state.paints_remaining() : state.required_edge_count();
  return pos;
}

std::uint64_t canonical_code(const Position& position) { return canonical(node_of(position)); }

Position decode_position(std::uint64_t code, const GameConfig& config) {
  const Node s = node_from_code(code, config.n, config.k);
  Position pos;
  pos.config = config;
  pos.colours.assign(static_cast<std::size_t>(config.n) + 1, kUncoloured);
  for (int v = 0; v < config.n; ++v) pos.colours[static_cast<std::size_t>(v) + 1] = s.colour[static_cast<std::size_t>(v)];
  for (int u = 0; u < config.n; ++u) {
    for (int v = u + 1; v < config.n; ++v) {
      if ((s.adj[static_cast<std::size_t>(u)] >> v) & 1U) pos.edges.emplace_back(u + 1, v + 1);
    }
  }
  pos.turn = s.builder ? Turn::Builder : Turn::Painter;
  pos.remaining = s.remaining;
  return pos;
}

SolveResult solve_game(const GameConfig& config, const SolverCaps& caps) {
  check_caps(config, caps);
  // No vertex can see k >= n distinct colours.
  if (config.k >= config.n) return {Status::PainterWin, 0};
  Solver solver(config.p, config.b);
  const bool wins = solver.painter_wins(solver.opening(config.n, config.k));
  return {wins ? Status::PainterWin : Status::BuilderWin, solver.positions()};
}

int k_min_exact(int n, int p, int b, const SolverCaps& caps) {
  for (int k = 1; k <= n; ++k) {
    if (solve_game(GameConfig{n, k, p, b}, caps).winner == Status::PainterWin) return k;
  }
  throw std::logic_error("Painter loses with n colours");
}

namespace {

Status exhaustive(const GameState& state) {
  if (!state.ongoing()) return state.status();
  if (state.turn() == Turn::Painter) {
    for (Vertex v = 1; v <= state.n(); ++v) {
      if (state.coloured(v)) continue;
      for (Colour c : state.legal_colours(v)) {
        GameState child = state;
        child.apply_paint(v, c);
        if (exhaustive(child) == Status::PainterWin) return Status::PainterWin;
      }
    }
    return Status::BuilderWin;
  }
  std::vector<Edge> legal;
  for (Vertex u = 1; u <= state.n(); ++u) {
    for (Vertex v = u + 1; v <= state.n(); ++v) {
      if (state.is_legal_pair(u, v)) legal.emplace_back(u, v);
    }
  }
  const auto r = static_cast<std::size_t>(state.required_edge_count());
  std::vector<char> pick(legal.size(), 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(r), pick.end(), 1);
  do {
    std::vector<Edge> move;
    for (std::size_t i = 0; i < legal.size(); ++i) {
      if (pick[i]) move.push_back(legal[i]);
    }
    GameState child = state;
    child.apply_build(move);
    if (exhaustive(child) == Status::BuilderWin) return Status::BuilderWin;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return Status::PainterWin;
}

}  // namespace

Status solve_exhaustive(const GameConfig& config, int max_n) {
  validate(config);
  if (config.n > max_n) {
    throw CapExceeded("plain search limited to n <= " + std::to_string(max_n));
  }
  return exhaustive(GameState(config));
}

std::vector<SolveRow> solve_table(int max_n, int max_k, int p, int b, const SolverCaps& caps) {
  std::vector<SolveRow> rows;
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 1; k <= max_k; ++k) {
      const GameConfig config{n, k, p, b};
      rows.push_back({config, solve_game(config, caps).winner});
    }
  }
  return rows;
}

}  // namespace pbgame
