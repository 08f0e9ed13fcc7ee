#include <gtest/gtest.h>

#include "tkft/bordism.hpp"
#include "tkft/corpus.hpp"
#include "tkft/error.hpp"
#include "tkft/flowchart.hpp"
#include "tkft/flowchart_tm.hpp"
#include "tkft/murec.hpp"

using namespace tkft;

namespace {

std::vector<Natural> nat(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

std::vector<std::vector<Natural>> inputs_for(int arity, int hi) {
  std::vector<std::vector<Natural>> out;
  if (arity == 1)
    for (int x = 0; x <= hi; ++x) out.push_back(nat({x}));
  else
    for (int x = 0; x <= hi; ++x)
      for (int y = 0; y <= hi; ++y) out.push_back(nat({x, y}));
  return out;
}

// r3 = r1 + r2 by moving r1 into r3 and then r2 into r3.
const char* kAddChart = R"(registers: 3
inputs: 1 2
outputs: 3
entry: 0
block 0:
  decjz r1 1 2
block 1:
  decjz r2 3 4
block 2:
  inc r3
  jump 0
block 3:
  halt
block 4:
  inc r3
  jump 1
)";

}  // namespace

TEST(Loops, Counts) {
  EXPECT_EQ(loop_count(compile_to_flowchart(corpus::program("succ"))), 0u);
  EXPECT_EQ(loop_count(compile_to_flowchart(corpus::program("add"))), 1u);
  EXPECT_EQ(loop_count(compile_to_flowchart(corpus::program("mu"))), 3u);
  EXPECT_EQ(loop_count(parse_flowchart(kAddChart)), 2u);
}

TEST(Loops, LoopCountTracksLoopNodes) {
  for (const auto& p : corpus::programs()) {
    const auto e = parse_program(p.source);
    EXPECT_EQ(loop_count(compile_to_flowchart(e)), loop_nodes(e)) << p.name;
  }
}

TEST(Compile, ChartAgreesWithEval) {
  for (const auto& p : corpus::programs()) {
    if (p.name == "nozero") continue;
    const auto e = parse_program(p.source);
    const auto fc = compile_to_flowchart(e);
    for (const auto& in : inputs_for(e->arity(), 6)) {
      const auto want = eval(e, in, 1000000);
      ASSERT_EQ(want.outcome, EvalResult::Outcome::Value);
      const auto got = run_flowchart(fc, in, 1000000);
      ASSERT_EQ(got.outcome, FlowRun::Outcome::Halted) << p.name;
      EXPECT_EQ(got.outputs, want.values) << p.name;
    }
  }
}

TEST(Compile, NoZeroDiverges) {
  const auto fc = compile_to_flowchart(corpus::program("nozero"));
  EXPECT_EQ(run_flowchart(fc, nat({0}), 5000).outcome, FlowRun::Outcome::OutOfFuel);
}

TEST(Format, RoundTrip) {
  const auto fc = parse_flowchart(kAddChart);
  EXPECT_EQ(parse_flowchart(format_flowchart(fc)), fc);
  EXPECT_EQ(run_flowchart(fc, nat({4, 5}), 1000).outputs, nat({9}));
  for (const auto& p : corpus::programs()) {
    const auto c = compile_to_flowchart(parse_program(p.source));
    EXPECT_EQ(parse_flowchart(format_flowchart(c)), c) << p.name;
  }
  EXPECT_THROW(parse_flowchart("registers: 1\nentry: 0\nblock 0:\n  jump 5\n"), Error);
  EXPECT_THROW(parse_flowchart("registers: 1\nentry: 0\nblock 0:\n  inc r4\n  halt\n"), Error);
}

TEST(Renumber, PreservesBehaviour) {
  const auto fc = parse_flowchart(kAddChart);
  const std::vector<int> perm{4, 2, 0, 3, 1};
  const auto moved = renumber(fc, perm);
  EXPECT_EQ(moved.entry, 4);
  EXPECT_EQ(loop_count(moved), loop_count(fc));
  for (const auto& in : inputs_for(2, 4))
    EXPECT_EQ(run_flowchart(moved, in, 1000).outputs, run_flowchart(fc, in, 1000).outputs);
}

TEST(Dot, HasEveryBlock) {
  const auto dot = flowchart_dot(parse_flowchart(kAddChart));
  for (int b = 0; b < 5; ++b) EXPECT_NE(dot.find("b" + std::to_string(b) + " "), std::string::npos);
}

TEST(ToMachine, HandChart) {
  const auto m = flowchart_to_tm(parse_flowchart(kAddChart));
  for (const auto& in : inputs_for(2, 5)) {
    const auto r = run(m, initial_configuration(m, in), 100000);
    ASSERT_EQ(r.outcome, RunResult::Outcome::Halted);
    EXPECT_EQ(decode_output(m, r.config.tape), nat({static_cast<int>(in[0] + in[1])}));
  }
}

TEST(ToMachine, SuccSweep) {
  const auto m = flowchart_to_tm(compile_to_flowchart(corpus::program("succ")));
  for (int x = 0; x <= 10; ++x) {
    const auto in = nat({x});
    const auto r = run(m, initial_configuration(m, in), 100000);
    ASSERT_EQ(r.outcome, RunResult::Outcome::Halted);
    EXPECT_EQ(decode_output(m, r.config.tape), nat({x + 1}));
  }
}

TEST(ToMachine, AddOnTwoThree) {
  const auto m = flowchart_to_tm(compile_to_flowchart(corpus::program("add")));
  const auto r = run(m, initial_configuration(m, nat({2, 3})), 100000);
  ASSERT_EQ(r.outcome, RunResult::Outcome::Halted);
  EXPECT_EQ(decode_output(m, r.config.tape), nat({5}));
  EXPECT_EQ(m.num_symbols(), 2u);
}

TEST(ToMachine, LoadAndCopy) {
  const auto fc = parse_flowchart(R"(registers: 3
inputs: 1
outputs: 2 3
entry: 0
block 0:
  load r2 13
  copy r3 r1
  inc r3
  halt
)");
  const auto m = flowchart_to_tm(fc);
  for (int x : {0, 1, 6, 31}) {
    const auto r = run(m, initial_configuration(m, nat({x})), 100000);
    ASSERT_EQ(r.outcome, RunResult::Outcome::Halted);
    EXPECT_EQ(decode_output(m, r.config.tape), nat({13, x + 1}));
  }
}

TEST(ToMachine, NoZeroDiverges) {
  const auto m = flowchart_to_tm(compile_to_flowchart(corpus::program("nozero")));
  EXPECT_EQ(run(m, initial_configuration(m, nat({0})), 100000).outcome, RunResult::Outcome::OutOfFuel);
}

TEST(ToMachine, BettiIsFinite) {
  for (const auto& p : corpus::programs()) {
    const auto m = flowchart_to_tm(compile_to_flowchart(parse_program(p.source)));
    const auto g = build_graph(m);
    EXPECT_EQ(betti1(g), g.edges.size() - g.vertices.size() + 1) << p.name;
  }
}
