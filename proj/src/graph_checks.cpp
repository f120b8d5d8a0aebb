#include "pbgame/graph_checks.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

namespace pbgame {

ParityDsu::ParityDsu(int n) { reset(n); }

void ParityDsu::reset(int n) {
  parent_.resize(static_cast<std::size_t>(n) + 1);
  std::iota(parent_.begin(), parent_.end(), 0);
  parity_.assign(static_cast<std::size_t>(n) + 1, 0);
  rank_.assign(static_cast<std::size_t>(n) + 1, 0);
  side_.assign(static_cast<std::size_t>(n) + 1, {1, 0});
  bipartite_ = true;
}

int ParityDsu::find(Vertex v) {
  path_.clear();
  int root = v;
  while (parent_[static_cast<std::size_t>(root)] != root) {
    path_.push_back(root);
    root = parent_[static_cast<std::size_t>(root)];
  }
  // Nearest-to-root first, so each parent already carries its parity to root.
  for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
    const auto x = static_cast<std::size_t>(*it);
    const int p = parent_[x];
    if (p != root) parity_[x] = static_cast<char>(parity_[x] ^ parity_[static_cast<std::size_t>(p)]);
    parent_[x] = root;
  }
  return root;
}

int ParityDsu::parity(Vertex v) {
  find(v);
  return v == parent_[static_cast<std::size_t>(v)] ? 0 : parity_[static_cast<std::size_t>(v)];
}

bool ParityDsu::can_join(Vertex u, Vertex v) {
  if (find(u) != find(v)) return true;
  return parity(u) != parity(v);
}

std::int64_t ParityDsu::merge_cost(Vertex u, Vertex v) {
  const int ru = find(u);
  const int rv = find(v);
  if (ru == rv) return 0;
  const auto pu = static_cast<std::size_t>(parity(u));
  const auto pv = static_cast<std::size_t>(parity(v));
  const auto& su = side_[static_cast<std::size_t>(ru)];
  const auto& sv = side_[static_cast<std::size_t>(rv)];
  // u lands opposite v.
  return su[pu] * sv[pv ^ 1] + su[pu ^ 1] * sv[pv];
}

bool ParityDsu::unite(Vertex u, Vertex v) {
  int ru = find(u);
  int rv = find(v);
  const int pu = parity(u);
  const int pv = parity(v);
  if (ru == rv) {
    if (pu == pv) bipartite_ = false;
    return pu != pv;
  }
  if (rank_[static_cast<std::size_t>(ru)] < rank_[static_cast<std::size_t>(rv)]) std::swap(ru, rv);
  parent_[static_cast<std::size_t>(rv)] = ru;
  const int flip = pu ^ pv ^ 1;
  parity_[static_cast<std::size_t>(rv)] = static_cast<char>(flip);
  auto& into = side_[static_cast<std::size_t>(ru)];
  const auto& from = side_[static_cast<std::size_t>(rv)];
  into[static_cast<std::size_t>(flip)] += from[0];
  into[static_cast<std::size_t>(flip ^ 1)] += from[1];
  if (rank_[static_cast<std::size_t>(ru)] == rank_[static_cast<std::size_t>(rv)]) {
    ++rank_[static_cast<std::size_t>(ru)];
  }
  return true;
}

bool is_bipartite(const GameState& state) {
  std::vector<int> side(static_cast<std::size_t>(state.n()) + 1, -1);
  std::queue<Vertex> queue;
  for (Vertex s = 1; s <= state.n(); ++s) {
    if (side[static_cast<std::size_t>(s)] != -1) continue;
    side[static_cast<std::size_t>(s)] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      for (Vertex w : state.neighbours(v)) {
        auto& sw = side[static_cast<std::size_t>(w)];
        if (sw == -1) {
          sw = 1 - side[static_cast<std::size_t>(v)];
          queue.push(w);
        } else if (sw == side[static_cast<std::size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<int> component_labels(const GameState& state) {
  std::vector<int> label(static_cast<std::size_t>(state.n()) + 1, -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= state.n(); ++s) {
    if (label[static_cast<std::size_t>(s)] != -1) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : state.neighbours(v)) {
        if (label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

Violation check_disjoint_paths(const GameState& state, int max_len) {
  const auto label = component_labels(state);
  const int components = label.empty() ? 0 : *std::max_element(label.begin() + 1, label.end()) + 1;
  std::vector<int> vertices(static_cast<std::size_t>(components), 0);
  std::vector<std::int64_t> edges(static_cast<std::size_t>(components), 0);
  for (Vertex v = 1; v <= state.n(); ++v) {
    if (state.degree(v) > 2) {
      return "vertex " + std::to_string(v) + " has degree " + std::to_string(state.degree(v));
    }
    ++vertices[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])];
  }
  for (const Edge& e : state.edges()) ++edges[static_cast<std::size_t>(label[static_cast<std::size_t>(e.u)])];
  for (int c = 0; c < components; ++c) {
    const auto ci = static_cast<std::size_t>(c);
    if (edges[ci] != vertices[ci] - 1) return "component " + std::to_string(c) + " contains a cycle";
    if (edges[ci] > max_len) {
      return "component " + std::to_string(c) + " is a path of length " + std::to_string(edges[ci]);
    }
  }
  return std::nullopt;
}

std::unordered_set<std::uint64_t> bridge_keys(const GameState& state) {
  // Iterative lowpoint DFS; the parent edge is skipped by edge index.
  const int n = state.n();
  const auto edges = state.edges();
  std::vector<std::vector<std::pair<Vertex, int>>> inc(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    inc[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].u)].emplace_back(edges[static_cast<std::size_t>(i)].v, i);
    inc[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].v)].emplace_back(edges[static_cast<std::size_t>(i)].u, i);
  }
  std::vector<int> disc(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> low(static_cast<std::size_t>(n) + 1, 0);
  std::unordered_set<std::uint64_t> bridges;
  struct Frame {
    Vertex v;
    int parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  for (Vertex root = 1; root <= n; ++root) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& list = inc[static_cast<std::size_t>(f.v)];
      if (f.next < list.size()) {
        const auto [w, id] = list[f.next++];
        if (id == f.parent_edge) continue;
        if (disc[static_cast<std::size_t>(w)] == -1) {
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          stack.push_back({w, id, 0});
        } else {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      const Vertex parent = stack.back().v;
      low[static_cast<std::size_t>(parent)] =
          std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done.v)]);
      if (low[static_cast<std::size_t>(done.v)] > disc[static_cast<std::size_t>(parent)]) {
        bridges.insert(edges[static_cast<std::size_t>(done.parent_edge)].key());
      }
    }
  }
  return bridges;
}

Violation check_clique(const GameState& state, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!state.has_edge(vertices[i], vertices[j])) {
        return "missing clique edge {" + std::to_string(vertices[i]) + "," +
               std::to_string(vertices[j]) + "}";
      }
    }
  }
  return std::nullopt;
}

int count_with_colour_neighbourhood(const GameState& state, std::span<const Vertex> vertices,
                                    int level) {
  int count = 0;
  for (Vertex v : vertices) {
    if (state.distinct_neighbour_colours(v) >= level) ++count;
  }
  return count;
}

Violation check_waiting_room(const GameState& state, std::span<const Vertex> a,
                             std::span<const Vertex> b, Colour room_colour, int min_size,
                             bool require_perfect_matching) {
  if (a.size() != b.size()) return std::string("|A| != |B|");
  if (static_cast<int>(a.size()) < min_size) {
    return "room size " + std::to_string(a.size()) + " below " + std::to_string(min_size);
  }
  std::set<Vertex> in_a(a.begin(), a.end());
  std::set<Vertex> in_b(b.begin(), b.end());
  if (in_a.size() != a.size() || in_b.size() != b.size()) return std::string("repeated room vertex");
  for (Vertex v : a) {
    if (in_b.contains(v)) return "vertex " + std::to_string(v) + " in both A and B";
    if (state.colour(v) != room_colour) {
      return "A vertex " + std::to_string(v) + " not coloured " + std::to_string(room_colour);
    }
  }
  for (Vertex v : b) {
    if (state.colour(v) == room_colour) {
      return "B vertex " + std::to_string(v) + " carries the room colour";
    }
  }
  auto independent = [&](std::span<const Vertex> side, const char* name) -> Violation {
    for (std::size_t i = 0; i < side.size(); ++i) {
      for (std::size_t j = i + 1; j < side.size(); ++j) {
        if (state.has_edge(side[i], side[j])) return std::string(name) + " is not independent";
      }
    }
    return std::nullopt;
  };
  if (auto v = independent(a, "A")) return v;
  if (auto v = independent(b, "B")) return v;
  if (require_perfect_matching) {
    for (Vertex v : a) {
      int matched = 0;
      for (Vertex w : state.neighbours(v)) matched += in_b.contains(w) ? 1 : 0;
      if (matched != 1) return "A vertex " + std::to_string(v) + " has " + std::to_string(matched) + " B-neighbours";
    }
    for (Vertex v : b) {
      int matched = 0;
      for (Vertex w : state.neighbours(v)) matched += in_a.contains(w) ? 1 : 0;
      if (matched != 1) return "B vertex " + std::to_string(v) + " has " + std::to_string(matched) + " A-neighbours";
    }
  }
  return std::nullopt;
}

Violation check_escalation(const GameState& state, std::span<const Vertex> next, int level,
                           int previous_size, double shrink, std::span<const Vertex> room_a,
                           std::span<const Vertex> room_b) {
  if (!(static_cast<double>(next.size()) > shrink * previous_size)) {
    return "size " + std::to_string(next.size()) + " not above " + std::to_string(shrink) + " * " +
           std::to_string(previous_size);
  }
  for (Vertex v : next) {
    if (state.coloured(v)) return "vertex " + std::to_string(v) + " is coloured";
    if (state.distinct_neighbour_colours(v) < level) {
      return "vertex " + std::to_string(v) + " has only " +
             std::to_string(state.distinct_neighbour_colours(v)) + " neighbour colours";
    }
  }
  const auto label = component_labels(state);
  std::set<int> used;
  for (Vertex v : next) {
    if (!used.insert(label[static_cast<std::size_t>(v)]).second) {
      return "vertex " + std::to_string(v) + " shares a component with another member";
    }
  }
  std::vector<std::int64_t> vertices(static_cast<std::size_t>(state.n()) + 1, 0);
  std::vector<std::int64_t> edges(static_cast<std::size_t>(state.n()) + 1, 0);
  for (Vertex v = 1; v <= state.n(); ++v) ++vertices[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])];
  for (const Edge& e : state.edges()) ++edges[static_cast<std::size_t>(label[static_cast<std::size_t>(e.u)])];
  for (Vertex v : next) {
    const auto c = static_cast<std::size_t>(label[static_cast<std::size_t>(v)]);
    if (edges[c] != vertices[c] - 1) return "component of " + std::to_string(v) + " is not a tree";
  }
  const auto bridges = bridge_keys(state);
  std::set<Vertex> in_a(room_a.begin(), room_a.end());
  std::set<Vertex> in_b(room_b.begin(), room_b.end());
  for (const Edge& e : state.edges()) {
    if (bridges.contains(e.key())) continue;
    const bool room_edge = (in_a.contains(e.u) && in_b.contains(e.v)) ||
                           (in_a.contains(e.v) && in_b.contains(e.u));
    if (!room_edge) {
      return "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
             "} lies on a cycle outside the waiting-room";
    }
  }
  return std::nullopt;
}

}  // namespace pbgame
