#include <doctest.h>

#include "synthetic.hpp"

using namespace pbgame;
using namespace synthetic;

TEST_CASE("escalation preconditions") {
  Synthetic s = make_synthetic(3, 4, 1000, [](int) { return 2; }, false, 0);
  GameState state = GameState::from_position(s.config, s.colours, s.edges);
  const BuilderConstants c;
  CHECK_THROWS_AS(check_escalation_preconditions(state, EscalationState{1, s.members}, c), PreconditionViolation);

  Synthetic big = make_synthetic(3, 4, 1001, [](int) { return 2; }, false, 0);
  GameState ok = GameState::from_position(big.config, big.colours, big.edges);
  CHECK_NOTHROW(check_escalation_preconditions(ok, EscalationState{1, big.members}, c));
  CHECK_THROWS_AS(check_escalation_preconditions(ok, EscalationState{2, big.members}, c), PreconditionViolation);
  CHECK_THROWS_AS(check_escalation_preconditions(ok, EscalationState{3, big.members}, c), PreconditionViolation);

  std::vector<Colour> coloured = big.colours;
  coloured[static_cast<std::size_t>(big.members.front())] = 1;
  GameState bad = GameState::from_position(big.config, coloured, big.edges);
  CHECK_THROWS_AS(check_escalation_preconditions(bad, EscalationState{1, big.members}, c), PreconditionViolation);
}

TEST_CASE("escalation branches on synthetic positions") {
  for (const Scenario& sc : scenarios()) {
    CAPTURE(sc.name);
    const Synthetic s = sc.setup();
    oracle::ScriptedPainter painter(sc.painter(s));
    const StepOutcome out = run_step(s, painter, sc.level);
    CHECK(out.result.route == sc.route);
    CHECK(out.result.next.members.size() == sc.expected_size);
    CHECK(out.result.warnings.empty());
    const auto failure = postcondition_failure(s, out, sc.level);
    CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
  }
}

TEST_CASE("stalling past the end of the room") {
  Synthetic s = make_synthetic(3, 3, 2000, [](int) { return 2; }, false, 3000);
  // Painter never touches the chosen edges, so Builder waits forever.
  oracle::ScriptedPainter painter(filler_policy(s, {}));
  CHECK_THROWS_AS(run_step(s, painter, 1), RoomExhausted);
}

TEST_CASE("property: escalation notes of live games satisfy the postconditions") {
  // Scaled-down constants so that escalation runs at a few thousand vertices.
  BuilderConstants c;
  c.min_size = 20;
  int steps = 0;
  for (int n : {600, 2000}) {
    for (int k : {2, 3, 4}) {
      for (auto kind : {PainterKind::RandomGreedy, PainterKind::BiasedWeighted, PainterKind::TwoForOne,
                        PainterKind::FirstFit}) {
        PainterAgent painter(kind, static_cast<std::uint64_t>(n * 10 + k));
        LogarithmicBuilder builder(c);
        Transcript t;
        play_game(GameConfig{n, k, 1, 1}, painter, builder, &t);
        const auto audit = oracle::audit_escalations(t);
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(to_string(kind));
        CHECK(audit.failures.empty());
        steps += audit.steps;
      }
    }
  }
  CHECK(steps > 0);
}
