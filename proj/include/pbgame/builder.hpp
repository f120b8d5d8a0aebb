#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbgame/game.hpp"
#include "pbgame/graph_checks.hpp"
#include "pbgame/match.hpp"
#include "pbgame/rng.hpp"

namespace pbgame {

/// Constants of the logarithmic Builder. Defaults are the proven values; any
/// other setting runs outside the proven regime.
struct BuilderConstants {
  double shrink = 0.001;        ///< |V_{t+1}| > shrink * |V_t|
  int min_size = 1000;          ///< escalation needs |V_t| > min_size
  double room_fraction = 0.1;   ///< matching rounds ceil(f*n); room size ceil(f*n/k)
  double round_cap = 0.2;       ///< room must be certified within cap*n Builder moves
  int room_min_n = 50;          ///< room construction needs n > room_min_n
  double proven_min_n = 1e8;    ///< the full lower bound argument needs n > this

  friend bool operator==(const BuilderConstants&, const BuilderConstants&) = default;
};

nlohmann::json to_json(const BuilderConstants& constants);
BuilderConstants builder_constants_from_json(const nlohmann::json& j);

/// A proof step's hypothesis does not hold in the live position.
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guarantee the procedure claims failed a runtime check.
class ConsistencyFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Every A-B pair of the waiting-room has been drawn.
class RoomExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Edge selection helpers

/// b uniformly random legal edges (all of them when fewer remain); empty means
/// a pass.
Build random_builder_move(const GameState& state, Rng& rng);

/// Lowest-index legal pair accepted by `filter` and not in `taken`.
std::optional<Edge> lowest_legal_pair(const GameState& state,
                                      const std::function<bool(Vertex, Vertex)>& filter,
                                      const std::vector<Edge>& taken = {});

/// Edge pushing an uncoloured vertex with the most distinct neighbour colours
/// towards death: it is joined to a coloured vertex carrying a colour it lacks.
/// With `parity` set, only edges keeping the graph bipartite are considered.
std::optional<Edge> greedy_pressure_edge(const GameState& state, ParityDsu* parity,
                                         const std::vector<Edge>& taken = {});

/// Emits one Builder move (plus notes for the Build record). Multi-round
/// procedures go through a sink so the biased game can top moves up to b edges.
using EdgeSink = std::function<void(std::vector<Edge>, std::vector<NoteRecord>)>;

// ---------------------------------------------------------------------------
// Waiting-room

struct WaitingRoom {
  std::vector<Vertex> a;  ///< monochromatic side, ascending
  std::vector<Vertex> b;  ///< ascending
  Colour colour = kUncoloured;
  std::size_t cursor = 0;  ///< next (i, j) pair index to try, row-major over a x b
};

/// Builds a waiting-room: ceil(f*n) matching rounds on isolated uncoloured
/// vertices, then each of t = ceil(f*n/k) vertices of the most frequent colour
/// joined to a fresh isolated uncoloured vertex. The returned room is
/// certified by a "waiting_room" note on the final Build record.
WaitingRoom build_waiting_room(Driver& driver, const BuilderConstants& constants,
                               const EdgeSink& emit);

/// Lowest-index unused A-B pair, advancing the room cursor. nullopt when the
/// room is exhausted.
std::optional<Edge> stall_in_waiting_room(const GameState& state, WaitingRoom& room);

// ---------------------------------------------------------------------------
// Escalation

struct EscalationState {
  int level = 0;                 ///< t
  std::vector<Vertex> members;   ///< V_t
};

/// Which branch of the escalation step produced the next level.
enum class EscalationRoute { AlreadyAhead, OneColouredEndpoint, SameClassDirect, SameClass, MixedClasses };
std::string to_string(EscalationRoute route);

struct EscalationResult {
  EscalationState next;
  EscalationRoute route = EscalationRoute::AlreadyAhead;
  int rounds = 0;                      ///< Builder moves spent
  std::vector<std::string> warnings;   ///< runtime branch-inequality violations
};

/// Throws PreconditionViolation unless t < k, |V_t| > 2*C(k,t), |V_t| > min_size
/// and every member is uncoloured with at least t neighbour colours.
void check_escalation_preconditions(const GameState& state, const EscalationState& esc,
                                    const BuilderConstants& constants);

/// One escalation step from level t to t+1. Stalls in `room` whenever it has to
/// wait for Painter. Postconditions are checked on the live graph before
/// returning; a failed check throws ConsistencyFailure.
EscalationResult escalate_step(Driver& driver, const EscalationState& esc, WaitingRoom& room,
                               const BuilderConstants& constants, const EdgeSink& emit);

// ---------------------------------------------------------------------------
// Biased clique

/// n_0 = n, n_{i+1} = n_i - p*ceil((n_i - 1)/b) - 1, up to the first n_i <= 0.
/// p = 1 is the (1 : b) game; larger p accounts for the extra paints per round.
std::vector<std::int64_t> clique_sequence(std::int64_t n, std::int64_t b, std::int64_t p = 1);
/// t = max{i : n_i > 0}.
int clique_depth(std::int64_t n, std::int64_t b, std::int64_t p = 1);

// ---------------------------------------------------------------------------
// Agents

enum class BuilderKind { Random, Logarithmic, BiasedClique };
std::string to_string(BuilderKind kind);
BuilderKind builder_kind_from_string(const std::string& name);

class RandomBuilder : public BuilderAgent {
 public:
  explicit RandomBuilder(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  std::uint64_t seed() const override { return rng_.seed(); }
  void play(Driver& driver) override;

 private:
  Rng rng_;
};

/// Waiting-room, then escalation levels 0..k-1, keeping the graph bipartite.
/// Falls back to stalling, then to bipartite pressure edges, whenever a
/// phase's hypotheses fail.
class LogarithmicBuilder : public BuilderAgent {
 public:
  explicit LogarithmicBuilder(BuilderConstants constants = {}) : constants_(constants) {}
  std::string name() const override { return "logarithmic"; }
  nlohmann::json constants() const override { return to_json(constants_); }
  void play(Driver& driver) override;

 private:
  BuilderConstants constants_;
};

/// Grows a clique K_j with a pool V_j joined to all of K_j, one apex per phase.
class BiasedCliqueBuilder : public BuilderAgent {
 public:
  std::string name() const override { return "biased-clique"; }
  void play(Driver& driver) override;
};

std::unique_ptr<BuilderAgent> make_builder(BuilderKind kind, std::uint64_t seed,
                                           const BuilderConstants& constants = {});

}  // namespace pbgame
