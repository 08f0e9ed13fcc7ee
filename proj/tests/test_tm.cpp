#include <map>

#include <gtest/gtest.h>

#include "tkft/corpus.hpp"
#include "tkft/error.hpp"
#include "tkft/random.hpp"
#include "tkft/tm.hpp"
#include "tkft/tm_format.hpp"

using namespace tkft;

namespace {

Tape tape_of(std::initializer_list<std::pair<std::int64_t, Symbol>> cells) {
  Tape t;
  for (auto [n, a] : cells) t.set(n, a);
  return t;
}

// Moves a head over a fixed tape instead of relabelling.
struct HeadSim {
  std::map<std::int64_t, Symbol> cells;
  std::int64_t head = 0;
  StateId state;

  HeadSim(const Configuration& c) : state(c.state) {
    for (std::int64_t n = c.tape.lo(); n < c.tape.hi(); ++n)
      if (c.tape.get(n)) cells[n] = c.tape.get(n);
  }
  bool step(const TuringMachine& m) {
    if (m.is_halting(state)) return false;
    auto it = cells.find(head);
    const Symbol a = it == cells.end() ? 0 : it->second;
    const Transition t = *m.delta(state, a);
    cells[head] = t.write;
    head += t.shift;
    state = t.target;
    return true;
  }
  Configuration view() const {
    Configuration c{state, {}};
    for (auto [n, a] : cells) c.tape.set(n - head, a);
    return c;
  }
};

}  // namespace

TEST(Step, SuccReadsOne) {
  const auto m = corpus::succ1();
  const Configuration c{0, tape_of({{0, 1}, {1, 1}})};
  const auto next = step(m, c);
  ASSERT_TRUE(next);
  EXPECT_EQ(next->state, 0u);
  EXPECT_EQ(next->tape, tape_of({{-1, 1}, {0, 1}}));
}

TEST(Step, HaltingIsAbsorbing) {
  const auto m = corpus::succ1();
  const Configuration c{*m.find_state("qh"), tape_of({{0, 1}})};
  EXPECT_FALSE(step(m, c));
  const auto r = run(m, c, 10);
  EXPECT_EQ(r.outcome, RunResult::Outcome::Halted);
  EXPECT_EQ(r.config, c);
  EXPECT_EQ(r.steps, 0u);
}

TEST(Step, BlankTape) {
  const auto m = corpus::succ1();
  const auto next = step(m, Configuration{0, {}});
  ASSERT_TRUE(next);
  EXPECT_EQ(m.state_name(next->state), "qh");
  EXPECT_EQ(next->tape, tape_of({{-1, 1}}));
}

TEST(Step, RejectsForeignSymbol) {
  const auto m = corpus::succ1();
  EXPECT_THROW(step(m, Configuration{0, tape_of({{0, 7}})}), MalformedInput);
  EXPECT_THROW(step(m, Configuration{9, {}}), MalformedInput);
}

TEST(Run, SuccOnTwo) {
  const auto m = corpus::succ1();
  const std::vector<Natural> in{2};
  const auto r = run(m, initial_configuration(m, in), 100);
  ASSERT_EQ(r.outcome, RunResult::Outcome::Halted);
  EXPECT_EQ(r.steps, 3u);
  EXPECT_EQ(r.config.tape, tape_of({{-3, 1}, {-2, 1}, {-1, 1}}));
  EXPECT_EQ(decode_output(m, r.config.tape), std::vector<Natural>{3});
}

TEST(Run, FuelZero) {
  const auto m = corpus::succ1();
  const auto r = run(m, Configuration{0, {}}, 0);
  EXPECT_EQ(r.outcome, RunResult::Outcome::OutOfFuel);
  EXPECT_EQ(r.steps, 0u);
}

TEST(Run, Diverger) {
  const auto m = corpus::diverger();
  const auto r = run(m, Configuration{0, {}}, 50);
  EXPECT_EQ(r.outcome, RunResult::Outcome::OutOfFuel);
  EXPECT_EQ(r.steps, 50u);
}

TEST(Run, AddUnary) {
  const auto m = corpus::add_unary();
  for (int x = 0; x <= 6; ++x)
    for (int y = 0; y <= 6; ++y) {
      const std::vector<Natural> in{x, y};
      const auto r = run(m, initial_configuration(m, in), 1000);
      ASSERT_EQ(r.outcome, RunResult::Outcome::Halted);
      EXPECT_EQ(decode_output(m, r.config.tape), std::vector<Natural>{x + y}) << x << "," << y;
    }
}

TEST(Run, AgreesWithHeadSimulation) {
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    const auto m = corpus::random_machine(rng, 4);
    for (int j = 0; j < 20; ++j) {
      Configuration c = corpus::random_configuration(rng, m, 5);
      HeadSim sim(c);
      for (int s = 0; s < 40; ++s) {
        const auto next = step(m, c);
        const bool moved = sim.step(m);
        ASSERT_EQ(bool(next), moved);
        if (!next) break;
        c = *next;
        ASSERT_EQ(c, sim.view());
      }
    }
  }
}

TEST(Reversible, Succ) { EXPECT_TRUE(is_reversible(corpus::succ1()).reversible); }

TEST(Reversible, CollidingPair) {
  const TuringMachine m({"q0", "q1"}, "q0", {"q1"}, {"0", "1"}, "0",
                        {{"q0", "0", "q1", "1", 1}, {"q0", "1", "q1", "1", 1}});
  const auto r = is_reversible(m);
  ASSERT_FALSE(r.reversible);
  ASSERT_TRUE(r.collision);
  EXPECT_EQ(r.collision->first.read, 0);
  EXPECT_EQ(r.collision->second.read, 1);
}

TEST(Reversible, SingleTransition) {
  const TuringMachine m({"q0", "q1"}, "q0", {"q1"}, {"0"}, "0", {{"q0", "0", "q1", "0", 1}});
  EXPECT_TRUE(is_reversible(m).reversible);
}

// Brute-force injectivity of step on every configuration with support in a
// small window.
TEST(Reversible, InjectiveOnSmallWindows) {
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const auto m = corpus::random_reversible_machine(rng, 3);
    ASSERT_TRUE(is_reversible(m).reversible);
    std::map<std::pair<StateId, std::vector<std::pair<std::int64_t, Symbol>>>, int> seen;
    for (StateId q = 0; q < m.num_states(); ++q) {
      if (m.is_halting(q)) continue;
      for (unsigned bits = 0; bits < 64; ++bits) {
        Configuration c{q, {}};
        for (int i = 0; i < 6; ++i) c.tape.set(i - 3, static_cast<Symbol>((bits >> i) & 1));
        const auto next = *step(m, c);
        std::vector<std::pair<std::int64_t, Symbol>> key;
        for (auto n = next.tape.lo(); n < next.tape.hi(); ++n) key.emplace_back(n, next.tape.get(n));
        EXPECT_EQ((seen[{next.state, key}]++), 0);
      }
    }
  }
}

TEST(Construction, Errors) {
  EXPECT_THROW(TuringMachine({"q0"}, "q0", {"q0"}, {"_"}, "_", {}), ConstructionError);
  EXPECT_THROW(TuringMachine({"q0", "qh"}, "q0", {}, {"_"}, "_", {}), ConstructionError);
  EXPECT_THROW(TuringMachine({"q0", "qh"}, "q0", {"qh"}, {"_", "1"}, "_", {{"q0", "_", "qh", "1", 1}}),
               ConstructionError);
  EXPECT_THROW(TuringMachine({"q0", "qh"}, "q0", {"qh"}, {"_"}, "_",
                             {{"q0", "_", "qh", "_", 1}, {"qh", "_", "q0", "_", 1}}),
               ConstructionError);
  EXPECT_THROW(TuringMachine({"q0", "qh"}, "q0", {"qh"}, {"_"}, "_", {{"q0", "_", "qh", "_", 2}}),
               ConstructionError);
}

TEST(Format, TextRoundTrip) {
  for (const auto& m : {corpus::succ1(), corpus::add_unary(), corpus::diverger()}) {
    const auto back = parse_machine(format_machine(m));
    EXPECT_EQ(format_machine(back), format_machine(m));
    EXPECT_EQ(back.io(), m.io());
  }
}

TEST(Format, JsonRoundTrip) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const auto m = corpus::random_machine(rng, 5);
    const auto back = parse_machine_any(machine_to_json(m).dump());
    EXPECT_EQ(format_machine(back), format_machine(m));
  }
}

TEST(Format, IoLine) {
  IoConvention io;
  io.kind = IoConvention::Kind::Tracks;
  io.registers = 3;
  io.inputs = {1, 2};
  io.outputs = {3};
  EXPECT_EQ(parse_io(format_io(io)), io);
  EXPECT_EQ(parse_io("unary-tuple arity=2").arity, 2);
  EXPECT_THROW(parse_io("binary"), MalformedInput);
}

TEST(Format, ParseErrors) {
  EXPECT_THROW(parse_machine("states: q0\n"), Error);
  EXPECT_THROW(parse_machine("nonsense"), Error);
}

TEST(Io, TracksLayout) {
  IoConvention io;
  io.kind = IoConvention::Kind::Tracks;
  io.registers = 2;
  io.inputs = {1, 2};
  io.outputs = {2, 1};
  auto m = corpus::succ1();
  m.set_io(io);
  const std::vector<Natural> in{5, 2};
  const Tape t = encode_input(m, in);
  EXPECT_EQ(decode_output(m, t), (std::vector<Natural>{2, 5}));
  EXPECT_EQ(input_arity(m), 2u);
}
