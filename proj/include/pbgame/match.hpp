#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbgame/game.hpp"
#include "pbgame/painter.hpp"
#include "pbgame/transcript.hpp"

namespace pbgame {

/// Thrown out of Driver::build once the game has ended, unwinding whatever
/// Builder procedure was running.
struct GameOver {};

/// Runs a game on behalf of a Builder procedure: each build() applies the
/// Builder move, then plays Painter's reply before returning. Builder code can
/// therefore be written as straight-line multi-round procedures.
class Driver {
 public:
  Driver(GameState& state, PainterAgent& painter, Transcript* transcript = nullptr);

  const GameState& state() const { return state_; }
  const GameConfig& config() const { return state_.config(); }

  /// Painter's opening turn. Throws GameOver if the game ends on it.
  void open();

  /// Applies a Builder move then Painter's reply. `notes` are recorded right
  /// after the Build record, before Painter moves. Throws GameOver once the
  /// game has ended; IllegalMove on a rule violation.
  void build(std::vector<Edge> edges, std::vector<NoteRecord> notes = {});

  /// Records a note at the current position.
  void annotate(std::string kind, nlohmann::json data);

  int builder_moves() const { return builder_moves_; }
  const std::vector<Edge>& last_build() const { return last_build_; }

 private:
  void painter_turn();
  void record(Record record);

  GameState& state_;
  PainterAgent& painter_;
  Transcript* transcript_;
  std::vector<Edge> last_build_;
  int builder_moves_ = 0;
};

/// A Builder strategy. play() keeps calling Driver::build until GameOver.
class BuilderAgent {
 public:
  virtual ~BuilderAgent() = default;
  virtual std::string name() const = 0;
  virtual std::uint64_t seed() const { return 0; }
  virtual nlohmann::json constants() const { return nlohmann::json::object(); }
  virtual void play(Driver& driver) = 0;
};

struct GameResult {
  Status status = Status::Ongoing;
  int rounds = 0;
  int builder_moves = 0;
  std::string digest;
};

/// Plays one full game. When `transcript` is given it receives the header,
/// every event and the terminal record.
GameResult play_game(const GameConfig& config, PainterAgent& painter, BuilderAgent& builder,
                     Transcript* transcript = nullptr);

}  // namespace pbgame
