#include "pbgame/painter.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbgame {

namespace {

bool planned(std::span<const Paint> plan, Vertex v) {
  return std::any_of(plan.begin(), plan.end(), [v](const Paint& p) { return p.vertex == v; });
}

/// Smallest colour legal for v once the planned paints of this turn land.
Colour smallest_colour_given(const GameState& state, std::span<const Paint> plan, Vertex v) {
  for (Colour c = 1; c <= state.k(); ++c) {
    if (!state.is_legal_colour(v, c)) continue;
    const bool clash = std::any_of(plan.begin(), plan.end(), [&](const Paint& p) {
      return p.colour == c && state.has_edge(p.vertex, v);
    });
    if (!clash) return c;
  }
  return kUncoloured;
}

Vertex lowest_uncoloured(const GameState& state, std::span<const Paint> plan = {}) {
  for (Vertex v = 1; v <= state.n(); ++v) {
    if (!state.coloured(v) && !planned(plan, v)) return v;
  }
  return 0;
}

std::optional<Paint> paint_smallest(const GameState& state, Vertex v) {
  if (v == 0) return std::nullopt;
  const Colour c = state.smallest_legal_colour(v);
  if (c == kUncoloured) return std::nullopt;
  return Paint{v, c};
}

/// Lowest-index unplanned uncoloured vertex with a legal colour.
std::optional<Paint> first_fit_given(const GameState& state, std::span<const Paint> plan) {
  for (Vertex v = 1; v <= state.n(); ++v) {
    if (state.coloured(v) || planned(plan, v)) continue;
    const Colour c = smallest_colour_given(state, plan, v);
    if (c != kUncoloured) return Paint{v, c};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Paint> random_greedy_move(const GameState& state, std::optional<Edge> last_edge,
                                        Rng& rng) {
  Vertex chosen = 0;
  if (last_edge) {
    const bool u_free = !state.coloured(last_edge->u);
    const bool v_free = !state.coloured(last_edge->v);
    if (u_free && v_free) {
      chosen = rng.coin() ? last_edge->u : last_edge->v;
    } else if (u_free) {
      chosen = last_edge->u;
    } else if (v_free) {
      chosen = last_edge->v;
    }
  }
  if (chosen == 0) chosen = lowest_uncoloured(state);
  return paint_smallest(state, chosen);
}

std::optional<Paint> biased_weighted_move(const GameState& state,
                                          std::span<const Edge> last_edges, Rng& rng) {
  Vertex chosen = 0;
  if (!last_edges.empty()) {
    // Each edge contributes one slot per endpoint, so a vertex of degree d in
    // the move is hit with probability d / (2m).
    const std::uint64_t slot = rng.below(2 * last_edges.size());
    const Edge& e = last_edges[slot / 2];
    const Vertex endpoint = (slot % 2 == 0) ? e.u : e.v;
    if (!state.coloured(endpoint)) chosen = endpoint;
  }
  if (chosen == 0) chosen = lowest_uncoloured(state);
  return paint_smallest(state, chosen);
}

std::vector<Paint> two_for_one_move(const GameState& state, std::optional<Edge> last_edge) {
  const int budget = state.paints_remaining();
  std::vector<Paint> plan;
  auto push = [&](Vertex v) {
    if (static_cast<int>(plan.size()) >= budget || state.coloured(v) || planned(plan, v)) return;
    const Colour c = smallest_colour_given(state, plan, v);
    if (c != kUncoloured) plan.push_back({v, c});
  };
  if (last_edge) {
    push(last_edge->u);
    push(last_edge->v);
  }
  for (Vertex v = 1; v <= state.n() && static_cast<int>(plan.size()) < budget; ++v) {
    if (state.degree(v) == 0 && !state.coloured(v) && !planned(plan, v)) {
      const Colour c = smallest_colour_given(state, plan, v);
      if (c != kUncoloured) plan.push_back({v, c});
    }
  }
  while (static_cast<int>(plan.size()) < budget) {
    auto extra = first_fit_given(state, plan);
    if (!extra) break;
    plan.push_back(*extra);
  }
  return plan;
}

std::optional<Paint> first_fit_move(const GameState& state) { return first_fit_given(state, {}); }

std::string to_string(PainterKind kind) {
  switch (kind) {
    case PainterKind::RandomGreedy:
      return "random-greedy";
    case PainterKind::BiasedWeighted:
      return "biased-weighted";
    case PainterKind::TwoForOne:
      return "two-for-one";
    case PainterKind::FirstFit:
      return "first-fit";
  }
  return "?";
}

PainterKind painter_kind_from_string(const std::string& name) {
  for (auto kind : {PainterKind::RandomGreedy, PainterKind::BiasedWeighted, PainterKind::TwoForOne,
                    PainterKind::FirstFit}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown painter '" + name + "'");
}

PaintTurn PainterAgent::play_turn(const GameState& state, std::span<const Edge> last_build) {
  PaintTurn turn;
  const int budget = state.paints_remaining();
  if (budget <= 0) return turn;
  const std::optional<Edge> last_edge =
      last_build.empty() ? std::nullopt : std::optional<Edge>(last_build.back());

  if (kind_ == PainterKind::TwoForOne) {
    turn.paints = two_for_one_move(state, last_edge);
    turn.forfeit = turn.paints.empty();
    return turn;
  }

  std::optional<Paint> first;
  switch (kind_) {
    case PainterKind::RandomGreedy:
      first = random_greedy_move(state, last_edge, rng_);
      break;
    case PainterKind::BiasedWeighted:
      first = biased_weighted_move(state, last_build, rng_);
      break;
    default:
      first = first_fit_move(state);
      break;
  }
  if (!first) {
    turn.forfeit = true;
    return turn;
  }
  turn.paints.push_back(*first);
  // Extra paints of a (p : b) turn go to the lowest-index vertices.
  while (static_cast<int>(turn.paints.size()) < budget) {
    auto extra = first_fit_given(state, turn.paints);
    if (!extra) break;
    turn.paints.push_back(*extra);
  }
  return turn;
}

}  // namespace pbgame
