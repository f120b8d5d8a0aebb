#include "pbgame/match.hpp"

#include <stdexcept>

#include "pbgame/rng.hpp"

namespace pbgame {

Driver::Driver(GameState& state, PainterAgent& painter, Transcript* transcript)
    : state_(state), painter_(painter), transcript_(transcript) {}

void Driver::record(Record record) {
  if (transcript_) transcript_->records.push_back(std::move(record));
}

void Driver::open() {
  painter_turn();
  if (!state_.ongoing()) throw GameOver{};
}

void Driver::painter_turn() {
  if (!state_.ongoing() || state_.turn() != Turn::Painter) return;
  PaintTurn turn = painter_.play_turn(state_, last_build_);
  for (const Paint& paint : turn.paints) {
    if (!state_.ongoing()) break;
    record(PaintRecord{state_.round(), paint});
    state_.apply_paint(paint.vertex, paint.colour);
  }
  if (turn.forfeit && turn.paints.empty()) {
    record(ForfeitRecord{state_.round()});
    if (state_.ongoing()) {
      throw std::logic_error(painter_.name() + " forfeited while a legal paint existed");
    }
    return;
  }
  if (state_.ongoing() && state_.turn() == Turn::Painter) {
    throw std::logic_error(painter_.name() + " painted fewer vertices than its turn requires");
  }
}

void Driver::build(std::vector<Edge> edges, std::vector<NoteRecord> notes) {
  if (!state_.ongoing()) throw GameOver{};
  for (Edge& e : edges) e = Edge(e.u, e.v);
  const int round = state_.round();
  state_.apply_build(edges);
  ++builder_moves_;
  record(BuildRecord{round, edges});
  for (NoteRecord& note : notes) {
    note.round = round;
    record(std::move(note));
  }
  last_build_ = std::move(edges);
  if (!state_.ongoing()) throw GameOver{};
  painter_turn();
  if (!state_.ongoing()) throw GameOver{};
}

void Driver::annotate(std::string kind, nlohmann::json data) {
  record(NoteRecord{state_.round(), std::move(kind), std::move(data)});
}

GameResult play_game(const GameConfig& config, PainterAgent& painter, BuilderAgent& builder,
                     Transcript* transcript) {
  GameState state(config);
  if (transcript) {
    transcript->header = TranscriptHeader{config,           painter.name(),
                                          painter.seed(),   builder.name(),
                                          builder.seed(),   builder.constants(),
                                          std::string(kRngName), std::string(kTranscriptFormat)};
    transcript->records.clear();
    transcript->terminal.reset();
  }
  Driver driver(state, painter, transcript);
  try {
    driver.open();
    builder.play(driver);
  } catch (const GameOver&) {
  }
  if (state.ongoing()) throw std::logic_error(builder.name() + " stopped before the game ended");
  GameResult result{state.status(), state.round(), driver.builder_moves(), state_digest(state)};
  if (transcript) transcript->terminal = TerminalRecord{result.status, result.rounds, result.digest};
  return result;
}

}  // namespace pbgame
