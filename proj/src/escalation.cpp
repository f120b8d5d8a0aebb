#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "pbgame/builder.hpp"

namespace pbgame {

std::string to_string(EscalationRoute route) {
  switch (route) {
    case EscalationRoute::AlreadyAhead:
      return "already-ahead";
    case EscalationRoute::OneColouredEndpoint:
      return "one-coloured-endpoint";
    case EscalationRoute::SameClassDirect:
      return "same-class-direct";
    case EscalationRoute::SameClass:
      return "same-class";
    case EscalationRoute::MixedClasses:
      return "mixed-classes";
  }
  return "?";
}

namespace {

using ClassKey = std::vector<Colour>;

double binomial(int k, int t) {
  if (t < 0 || t > k) return 0.0;
  return std::round(std::exp(std::lgamma(k + 1.0) - std::lgamma(t + 1.0) - std::lgamma(k - t + 1.0)));
}

/// A step-1 matching edge; both endpoints were strict with colour set `key`.
struct Pair {
  Vertex u = 0;
  Vertex w = 0;
  ClassKey key;
};

ClassKey key_of(const GameState& state, Vertex v) {
  const auto colours = state.neighbour_colours(v);
  return ClassKey(colours.begin(), colours.end());
}

bool strict(const GameState& state, Vertex v, int t) {
  return !state.coloured(v) && state.distinct_neighbour_colours(v) == t;
}

bool ahead(const GameState& state, Vertex v, int t) {
  return !state.coloured(v) && state.distinct_neighbour_colours(v) >= t + 1;
}

/// An endpoint of `p` already at level t+1, or 0.
Vertex ahead_endpoint(const GameState& state, const Pair& p, int t) {
  if (ahead(state, p.u, t)) return p.u;
  if (ahead(state, p.w, t)) return p.w;
  return 0;
}

Vertex coloured_endpoint(const GameState& state, const Pair& p) {
  if (state.coloured(p.u)) return p.u;
  if (state.coloured(p.w)) return p.w;
  return 0;
}

/// Target of a pairing if still uncoloured, else its partner if uncoloured.
Vertex survivor(const GameState& state, const Pair& p) {
  if (!state.coloured(p.u)) return p.u;
  if (!state.coloured(p.w)) return p.w;
  return 0;
}

}  // namespace

void check_escalation_preconditions(const GameState& state, const EscalationState& esc,
                                    const BuilderConstants& constants) {
  const int t = esc.level;
  const auto size = static_cast<double>(esc.members.size());
  if (t < 0 || t >= state.k()) {
    throw PreconditionViolation("level " + std::to_string(t) + " outside [0, k)");
  }
  if (!(size > 2.0 * binomial(state.k(), t))) {
    throw PreconditionViolation("|V_t| = " + std::to_string(esc.members.size()) +
                                " not above 2*C(k,t) = " + std::to_string(2.0 * binomial(state.k(), t)));
  }
  if (!(size > constants.min_size)) {
    throw PreconditionViolation("|V_t| = " + std::to_string(esc.members.size()) +
                                " not above " + std::to_string(constants.min_size));
  }
  for (Vertex v : esc.members) {
    if (state.coloured(v) || state.distinct_neighbour_colours(v) < t) {
      throw PreconditionViolation("member " + std::to_string(v) + " is not an uncoloured level-" +
                                  std::to_string(t) + " vertex");
    }
  }
}

EscalationResult escalate_step(Driver& driver, const EscalationState& esc, WaitingRoom& room,
                               const BuilderConstants& constants, const EdgeSink& emit) {
  const GameState& state = driver.state();
  check_escalation_preconditions(state, esc, constants);
  const int t = esc.level;
  const int size_t_ = static_cast<int>(esc.members.size());
  const double floor_size = constants.shrink * size_t_;
  const int start_moves = driver.builder_moves();
  EscalationResult result;

  auto finish = [&](const std::vector<Vertex>& candidates, EscalationRoute route) {
    std::vector<Vertex> next;
    for (Vertex v : candidates) {
      if (v != 0 && ahead(state, v, t)) next.push_back(v);
    }
    if (auto violation = check_escalation(state, next, t + 1, size_t_, constants.shrink, room.a, room.b)) {
      throw ConsistencyFailure("escalation " + std::to_string(t) + "->" + std::to_string(t + 1) + " via " +
                               to_string(route) + ": " + *violation);
    }
    result.next = EscalationState{t + 1, std::move(next)};
    result.route = route;
    result.rounds = driver.builder_moves() - start_moves;
    return result;
  };
  auto stall = [&] {
    auto edge = stall_in_waiting_room(state, room);
    if (!edge) throw RoomExhausted("waiting-room exhausted during escalation");
    emit({*edge}, {});
  };

  // Members already at level t+1.
  std::vector<Vertex> already;
  for (Vertex v : esc.members) {
    if (ahead(state, v, t)) already.push_back(v);
  }
  if (already.size() > floor_size) return finish(already, EscalationRoute::AlreadyAhead);

  // Match strict members of equal colour class for as long as possible. A
  // strict vertex keeps its class until it is coloured or gains a colour, so
  // buckets only ever lose members.
  std::map<ClassKey, std::deque<Vertex>> buckets;
  for (Vertex v : esc.members) {
    if (strict(state, v, t)) buckets[key_of(state, v)].push_back(v);
  }
  std::vector<Pair> matching;
  for (;;) {
    std::optional<Pair> found;
    for (auto& [key, queue] : buckets) {
      while (!queue.empty() && !strict(state, queue.front(), t)) queue.pop_front();
      if (queue.size() < 2) continue;
      const Vertex u = queue.front();
      queue.pop_front();
      while (!queue.empty() && !strict(state, queue.front(), t)) queue.pop_front();
      if (queue.empty()) {
        queue.push_front(u);
        continue;
      }
      const Vertex w = queue.front();
      queue.pop_front();
      found = Pair{u, w, key};
      break;
    }
    if (!found) break;
    matching.push_back(*found);
    emit({Edge(found->u, found->w)}, {});
  }

  // Matched edges with an endpoint already at level t+1 (in particular those
  // with exactly one coloured endpoint).
  std::vector<Vertex> from_matching;
  for (const Pair& p : matching) {
    if (Vertex v = ahead_endpoint(state, p, t)) from_matching.push_back(v);
  }
  if (from_matching.size() > floor_size) return finish(from_matching, EscalationRoute::OneColouredEndpoint);

  // Matched edges with both endpoints uncoloured and still strict.
  std::vector<Pair> clean;
  for (const Pair& p : matching) {
    if (strict(state, p.u, t) && strict(state, p.w, t)) clean.push_back(p);
  }
  const int m = static_cast<int>(clean.size());
  std::map<ClassKey, std::vector<Pair>> by_class;
  for (const Pair& p : clean) by_class[p.key].push_back(p);

  const int third = (m + 2) / 3;  // ceil(m/3)
  auto big = std::find_if(by_class.begin(), by_class.end(), [&](const auto& entry) {
    return static_cast<int>(entry.second.size()) >= third;
  });

  if (m > 0 && big != by_class.end()) {
    // One class holds at least a third of the clean edges.
    std::vector<Pair> chosen(big->second.begin(), big->second.begin() + third);
    const int m1 = third;
    const int m2 = m1 / 6;
    auto hit_count = [&] {
      return static_cast<int>(std::count_if(chosen.begin(), chosen.end(),
                                            [&](const Pair& p) { return coloured_endpoint(state, p) != 0; }));
    };
    while (hit_count() < m2) stall();

    std::vector<Vertex> sources;
    std::vector<Pair> unhit;
    for (const Pair& p : chosen) {
      if (Vertex c = coloured_endpoint(state, p)) {
        if (static_cast<int>(sources.size()) < m2) sources.push_back(c);
      } else {
        unhit.push_back(p);
      }
    }
    const int threshold = (m1 - m2) / 2;
    if (!(threshold > m1 / 3.0)) {
      result.warnings.push_back("floor((m'-m'')/2) = " + std::to_string(threshold) +
                                " does not exceed m'/3 for m' = " + std::to_string(m1));
    }
    std::vector<Vertex> direct;
    for (const Pair& p : unhit) {
      if (Vertex v = ahead_endpoint(state, p, t)) direct.push_back(v);
    }
    if (threshold > 0 && static_cast<int>(direct.size()) >= threshold) {
      return finish(direct, EscalationRoute::SameClassDirect);
    }

    std::vector<Pair> targets;
    for (const Pair& p : unhit) {
      if (strict(state, p.u, t) && strict(state, p.w, t)) targets.push_back(p);
    }
    if (!(static_cast<int>(targets.size()) > 2 * m2)) {
      result.warnings.push_back("only " + std::to_string(targets.size()) +
                                " strict targets for m'' = " + std::to_string(m2));
    }
    const std::size_t count = std::min(sources.size(), targets.size());
    // Each coloured source carries a colour outside the shared class, so it
    // lifts its target to level t+1.
    for (std::size_t i = 0; i < count; ++i) {
      const Vertex target = targets[i].u;
      if (!state.coloured(target) && state.is_legal_pair(sources[i], target)) {
        emit({Edge(sources[i], target)}, {});
      }
    }
    std::vector<Vertex> candidates;
    for (std::size_t i = 0; i < count; ++i) candidates.push_back(survivor(state, targets[i]));
    return finish(candidates, EscalationRoute::SameClass);
  }

  // Every class is small: pick classes totalling between m/6 and m/3 edges.
  std::vector<Pair> selected;
  std::vector<Pair> rest;
  {
    auto fits = [&](int c) { return 6 * c >= m && 3 * c <= m; };
    auto single = std::find_if(by_class.begin(), by_class.end(),
                               [&](const auto& entry) { return fits(static_cast<int>(entry.second.size())); });
    std::vector<const ClassKey*> picked;
    if (single != by_class.end()) {
      picked.push_back(&single->first);
    } else {
      int total = 0;
      for (const auto& [key, pairs] : by_class) {
        if (6 * total >= m) break;
        picked.push_back(&key);
        total += static_cast<int>(pairs.size());
      }
    }
    for (const auto& [key, pairs] : by_class) {
      const bool in = std::find(picked.begin(), picked.end(), &key) != picked.end();
      auto& dest = in ? selected : rest;
      dest.insert(dest.end(), pairs.begin(), pairs.end());
    }
  }
  const std::size_t count = std::min(selected.size(), rest.size());
  for (std::size_t i = 0; i < count; ++i) {
    const Vertex target = rest[i].u;
    if (state.coloured(target)) continue;
    const auto target_colours = state.neighbour_colours(target);
    // A coloured neighbour of the selected vertex whose colour the target lacks.
    for (Vertex w : state.neighbours(selected[i].u)) {
      if (!state.coloured(w)) continue;
      if (std::binary_search(target_colours.begin(), target_colours.end(), state.colour(w))) continue;
      if (!state.is_legal_pair(w, target)) continue;
      emit({Edge(w, target)}, {});
      break;
    }
  }
  std::vector<Vertex> candidates;
  for (std::size_t i = 0; i < count; ++i) candidates.push_back(survivor(state, rest[i]));
  return finish(candidates, EscalationRoute::MixedClasses);
}

}  // namespace pbgame
