#include "pbgame/game.hpp"

#include <algorithm>
#include <set>

namespace pbgame {

void validate(const GameConfig& config) {
  if (config.n < 2) throw ConfigError("n must be at least 2, got " + std::to_string(config.n));
  if (config.k < 1) throw ConfigError("k must be at least 1, got " + std::to_string(config.k));
  if (config.p < 1) throw ConfigError("p must be at least 1, got " + std::to_string(config.p));
  if (config.b < 1) throw ConfigError("b must be at least 1, got " + std::to_string(config.b));
}

std::string to_string(Turn turn) { return turn == Turn::Painter ? "Painter" : "Builder"; }

std::string to_string(Status status) {
  switch (status) {
    case Status::Ongoing:
      return "Ongoing";
    case Status::PainterWin:
      return "PainterWin";
    case Status::BuilderWin:
      return "BuilderWin";
  }
  return "?";
}

Status status_from_string(const std::string& text) {
  if (text == "Ongoing") return Status::Ongoing;
  if (text == "PainterWin") return Status::PainterWin;
  if (text == "BuilderWin") return Status::BuilderWin;
  throw std::invalid_argument("unknown status '" + text + "'");
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::GameOver:
      return "game-over";
    case Rule::WrongTurn:
      return "wrong-turn";
    case Rule::VertexOutOfRange:
      return "vertex-out-of-range";
    case Rule::VertexColoured:
      return "vertex-already-coloured";
    case Rule::ColourOutOfRange:
      return "colour-out-of-range";
    case Rule::ColourConflict:
      return "colour-used-by-neighbour";
    case Rule::SelfLoop:
      return "self-loop";
    case Rule::DuplicateEdge:
      return "duplicate-edge";
    case Rule::RepeatedEdgeInMove:
      return "edge-repeated-in-move";
    case Rule::MonochromaticEdge:
      return "monochromatic-edge";
    case Rule::WrongEdgeCount:
      return "wrong-edge-count";
  }
  return "?";
}

IllegalMove::IllegalMove(Rule rule, const std::string& detail)
    : std::runtime_error(to_string(rule) + ": " + detail), rule_(rule) {}

namespace {

std::string edge_text(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

std::int64_t pairs(std::int64_t m) { return m * (m - 1) / 2; }

}  // namespace

GameState::GameState(const GameConfig& config) : config_(config) {
  validate(config_);
  const auto size = static_cast<std::size_t>(config_.n) + 1;
  colour_.assign(size, kUncoloured);
  adj_.resize(size);
  nbr_colours_.resize(size);
  dead_.assign(size, 0);
  classes_.resize(static_cast<std::size_t>(config_.k) + 1);
  start_painter_turn();
}

GameState GameState::from_position(const GameConfig& config, std::span<const Colour> colours,
                                   std::span<const Edge> edges) {
  GameState state(config);
  if (colours.size() != static_cast<std::size_t>(config.n) + 1) {
    throw std::invalid_argument("colour vector must have n+1 entries (index 0 unused)");
  }
  for (Vertex v = 1; v <= config.n; ++v) {
    const Colour c = colours[static_cast<std::size_t>(v)];
    if (c == kUncoloured) continue;
    if (c < 1 || c > config.k) {
      throw IllegalMove(Rule::ColourOutOfRange, "vertex " + std::to_string(v));
    }
    state.colour_[static_cast<std::size_t>(v)] = c;
    state.monochromatic_pairs_ += static_cast<std::int64_t>(state.classes_[c].size());
    state.classes_[c].push_back(v);
    ++state.coloured_count_;
  }
  for (const Edge& e : edges) {
    state.check(e.u);
    state.check(e.v);
    if (e.u == e.v) throw IllegalMove(Rule::SelfLoop, edge_text(e));
    if (state.has_edge(e.u, e.v)) throw IllegalMove(Rule::DuplicateEdge, edge_text(e));
    if (state.coloured(e.u) && state.colour(e.u) == state.colour(e.v)) {
      throw IllegalMove(Rule::MonochromaticEdge, edge_text(e));
    }
    state.add_edge_unchecked(e);
  }
  for (Vertex v = 1; v <= config.n; ++v) {
    if (!state.coloured(v) && state.distinct_neighbour_colours(v) == config.k) {
      state.dead_[static_cast<std::size_t>(v)] = 1;
      ++state.dead_count_;
    }
  }
  state.recompute_status();
  state.start_painter_turn();
  return state;
}

std::size_t GameState::check(Vertex v) const {
  if (v < 1 || v > config_.n) {
    throw IllegalMove(Rule::VertexOutOfRange, "vertex " + std::to_string(v) + " not in 1.." +
                                                  std::to_string(config_.n));
  }
  return static_cast<std::size_t>(v);
}

bool GameState::has_edge(Vertex u, Vertex v) const {
  if (u == v) return false;
  return edge_keys_.contains(Edge(u, v).key());
}

std::span<const Vertex> GameState::colour_class(Colour c) const {
  if (c < 1 || c > config_.k) {
    throw std::invalid_argument("colour " + std::to_string(c) + " out of range");
  }
  return classes_[static_cast<std::size_t>(c)];
}

std::int64_t GameState::legal_pair_count() const {
  return pairs(config_.n) - edge_count() - monochromatic_pairs_;
}

bool GameState::is_legal_pair(Vertex u, Vertex v) const {
  if (u == v) return false;
  check(u);
  check(v);
  if (has_edge(u, v)) return false;
  return !(coloured(u) && colour(u) == colour(v));
}

int GameState::required_edge_count() const {
  return static_cast<int>(std::min<std::int64_t>(config_.b, legal_pair_count()));
}

std::vector<Colour> GameState::legal_colours(Vertex v) const {
  if (coloured(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is already coloured");
  }
  std::vector<Colour> out;
  const auto& present = nbr_colours_[check(v)];
  auto it = present.begin();
  for (Colour c = 1; c <= config_.k; ++c) {
    if (it != present.end() && *it == c) {
      ++it;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

bool GameState::is_legal_colour(Vertex v, Colour c) const {
  if (coloured(v) || c < 1 || c > config_.k) return false;
  const auto& present = nbr_colours_[check(v)];
  return !std::binary_search(present.begin(), present.end(), c);
}

Colour GameState::smallest_legal_colour(Vertex v) const {
  const auto& present = nbr_colours_[check(v)];
  Colour c = 1;
  for (Colour seen : present) {
    if (seen != c) break;
    ++c;
  }
  return c <= config_.k ? c : kUncoloured;
}

std::vector<Vertex> GameState::dead_vertices() const {
  std::vector<Vertex> out;
  if (dead_count_ == 0) return out;
  for (Vertex v = 1; v <= config_.n; ++v) {
    if (dead_[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

void GameState::note_colour_at(Vertex v, Colour c) {
  auto& present = nbr_colours_[static_cast<std::size_t>(v)];
  auto it = std::lower_bound(present.begin(), present.end(), c);
  if (it != present.end() && *it == c) return;
  present.insert(it, c);
  if (!coloured(v) && !dead_[static_cast<std::size_t>(v)] &&
      static_cast<int>(present.size()) == config_.k) {
    dead_[static_cast<std::size_t>(v)] = 1;
    ++dead_count_;
  }
}

void GameState::add_edge_unchecked(Edge e) {
  edge_keys_.insert(e.key());
  edges_.push_back(e);
  adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
  adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
  if (coloured(e.u)) note_colour_at(e.v, colour(e.u));
  if (coloured(e.v)) note_colour_at(e.u, colour(e.v));
}

void GameState::recompute_status() {
  if (coloured_count_ == config_.n) {
    status_ = Status::PainterWin;
  } else if (dead_count_ > 0) {
    status_ = Status::BuilderWin;
  } else {
    status_ = Status::Ongoing;
  }
}

void GameState::start_painter_turn() {
  turn_ = Turn::Painter;
  paints_remaining_ = std::min(config_.p, uncoloured_count());
}

void GameState::apply_paint(Vertex v, Colour c) {
  if (!ongoing()) throw IllegalMove(Rule::GameOver, "game already ended as " + to_string(status_));
  if (turn_ != Turn::Painter) throw IllegalMove(Rule::WrongTurn, "it is Builder's turn");
  const auto idx = check(v);
  if (coloured(v)) {
    throw IllegalMove(Rule::VertexColoured,
                      "vertex " + std::to_string(v) + " already has colour " +
                          std::to_string(colour(v)));
  }
  if (c < 1 || c > config_.k) {
    throw IllegalMove(Rule::ColourOutOfRange,
                      "colour " + std::to_string(c) + " not in 1.." + std::to_string(config_.k));
  }
  if (!is_legal_colour(v, c)) {
    throw IllegalMove(Rule::ColourConflict, "vertex " + std::to_string(v) +
                                                " has a neighbour coloured " + std::to_string(c));
  }
  colour_[idx] = c;
  monochromatic_pairs_ += static_cast<std::int64_t>(classes_[static_cast<std::size_t>(c)].size());
  classes_[static_cast<std::size_t>(c)].push_back(v);
  ++coloured_count_;
  for (Vertex w : adj_[idx]) note_colour_at(w, c);
  recompute_status();
  if (--paints_remaining_ == 0) turn_ = Turn::Builder;
}

void GameState::apply_build(std::span<const Edge> edges) {
  if (!ongoing()) throw IllegalMove(Rule::GameOver, "game already ended as " + to_string(status_));
  if (turn_ != Turn::Builder) throw IllegalMove(Rule::WrongTurn, "it is Painter's turn");
  const int required = required_edge_count();
  if (static_cast<int>(edges.size()) != required) {
    throw IllegalMove(Rule::WrongEdgeCount, "expected " + std::to_string(required) +
                                                " edges, got " + std::to_string(edges.size()));
  }
  std::set<Edge> seen;
  for (const Edge& raw : edges) {
    const Edge e(raw.u, raw.v);
    check(e.u);
    check(e.v);
    if (e.u == e.v) throw IllegalMove(Rule::SelfLoop, edge_text(e));
    if (has_edge(e.u, e.v)) throw IllegalMove(Rule::DuplicateEdge, edge_text(e));
    if (!seen.insert(e).second) throw IllegalMove(Rule::RepeatedEdgeInMove, edge_text(e));
    if (coloured(e.u) && colour(e.u) == colour(e.v)) {
      throw IllegalMove(Rule::MonochromaticEdge, edge_text(e));
    }
  }
  for (const Edge& raw : edges) add_edge_unchecked(Edge(raw.u, raw.v));
  ++round_;
  recompute_status();
  start_painter_turn();
}

void GameState::apply(const Move& move) {
  if (const auto* paint = std::get_if<Paint>(&move)) {
    apply_paint(paint->vertex, paint->colour);
  } else {
    apply_build(std::get<Build>(move).edges);
  }
}

std::vector<Vertex> dead_vertices_from_scratch(const GameState& state) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= state.n(); ++v) {
    if (state.coloured(v)) continue;
    std::vector<char> seen(static_cast<std::size_t>(state.k()) + 1, 0);
    int distinct = 0;
    for (const Edge& e : state.edges()) {
      Vertex other = 0;
      if (e.u == v) other = e.v;
      if (e.v == v) other = e.u;
      if (other == 0) continue;
      const Colour c = state.colour(other);
      if (c != kUncoloured && !seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        ++distinct;
      }
    }
    if (distinct == state.k()) out.push_back(v);
  }
  return out;
}

}  // namespace pbgame
