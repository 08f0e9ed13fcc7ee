#include "tkft/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "tkft/error.hpp"
#include "tkft/tm_format.hpp"

namespace tkft::corpus {

const char* succ1_text() {
  return R"(# unary successor
states: q0 qh
initial: q0
halting: qh
alphabet: _ 1
blank: _
io: unary
q0 1 -> q0 1 R
q0 _ -> qh 1 R
)";
}

const char* add_unary_text() {
  return R"(# unary addition of 1^x _ 1^y
states: q0 q1 qh qz
initial: q0
halting: qh qz
alphabet: _ 1
blank: _
io: unary-tuple arity=2
q0 1 -> q1 _ R
q0 _ -> qz _ R
q1 1 -> q1 1 R
q1 _ -> qh 1 R
)";
}

const char* diverger_text() {
  return R"(# runs right forever on a blank tape
states: q0 qh
initial: q0
halting: qh
alphabet: _ 1
blank: _
io: unary
q0 _ -> q0 _ R
q0 1 -> qh 1 R
)";
}

TuringMachine succ1() { return parse_machine(succ1_text()); }
TuringMachine add_unary() { return parse_machine(add_unary_text()); }
TuringMachine diverger() { return parse_machine(diverger_text()); }

GeneralizedShift full_shift() { return GeneralizedShift(1, {0, 1}, {1, 1}); }

GeneralizedShift jump_shift() {
  return GeneralizedShift(2, {0b00, 0b10, 0b10, 0b11}, {0, 3, 0, 0});
}

GeneralizedShift jump_completion() {
  return GeneralizedShift(2, {0b00, 0b10, 0b01, 0b11}, {3, 3, 3, 3});
}

GeneralizedShift random_permutation_shift(Rng& rng, int r, int max_shift) {
  std::vector<Window> g(std::size_t{1} << r);
  std::iota(g.begin(), g.end(), Window{0});
  for (std::size_t i = g.size(); i > 1; --i) std::swap(g[i - 1], g[rng.below(i)]);
  const std::int64_t s = rng.between(-max_shift, max_shift);
  return GeneralizedShift(r, std::move(g), std::vector<std::int64_t>(std::size_t{1} << r, s));
}

namespace {

std::vector<std::string> state_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

}  // namespace

TuringMachine random_machine(Rng& rng, int max_states) {
  const int n = static_cast<int>(rng.between(2, max_states));
  const auto names = state_names(n);
  const std::string sym[2] = {"_", "1"};
  std::vector<TuringMachine::Rule> rules;
  for (int q = 0; q + 1 < n; ++q)
    for (int a = 0; a < 2; ++a)
      rules.push_back({names[static_cast<std::size_t>(q)], sym[a],
                       names[rng.below(static_cast<std::uint64_t>(n))], sym[rng.below(2)],
                       rng.coin() ? 1 : -1});
  return TuringMachine(names, "q0", {names.back()}, {"_", "1"}, "_", rules);
}

TuringMachine random_reversible_machine(Rng& rng, int states) {
  auto names = state_names(states);
  names.push_back("qh");
  const std::string sym[2] = {"_", "1"};
  std::vector<int> dir(static_cast<std::size_t>(states));
  for (auto& d : dir) d = rng.coin() ? 1 : -1;
  // Each working state is entered exactly twice, once writing each symbol.
  std::vector<std::pair<int, int>> slots;
  for (int q = 0; q < states; ++q)
    for (int w = 0; w < 2; ++w) slots.emplace_back(q, w);
  for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[rng.below(i)]);
  std::vector<TuringMachine::Rule> rules;
  std::size_t k = 0;
  for (int q = 0; q < states; ++q)
    for (int a = 0; a < 2; ++a, ++k) {
      const auto [to, w] = slots[k];
      rules.push_back({names[static_cast<std::size_t>(q)], sym[a], names[static_cast<std::size_t>(to)],
                       sym[w], dir[static_cast<std::size_t>(to)]});
    }
  return TuringMachine(names, "q0", {"qh"}, {"_", "1"}, "_", rules);
}

Configuration random_configuration(Rng& rng, const TuringMachine& m, int radius) {
  Configuration c{static_cast<StateId>(rng.below(m.num_states())), {}};
  for (int n = -radius; n <= radius; ++n)
    c.tape.set(n, static_cast<Symbol>(rng.below(m.num_symbols())));
  return c;
}

BiWord random_biword(Rng& rng, int radius) {
  BiWord w;
  for (int n = -radius; n <= radius; ++n) w.set(n, rng.coin() ? 1 : 0);
  return w;
}

MachineGraph random_graph(Rng& rng, int max_vertices, int max_edges) {
  MachineGraph g;
  const auto v = static_cast<std::uint64_t>(rng.between(1, max_vertices));
  for (std::uint64_t i = 0; i < v; ++i) g.vertices.push_back("v" + std::to_string(i));
  g.stop.assign(v, false);
  g.symbols = {"_", "1"};
  const auto e = rng.between(0, max_edges);
  for (std::int64_t i = 0; i < e; ++i)
    g.edges.push_back({static_cast<StateId>(rng.below(v)), static_cast<StateId>(rng.below(v)), 0, 0, 1});
  return g;
}

const std::vector<Program>& programs() {
  static const std::vector<Program> all = {
      {"succ", "succ\n"},
      {"add", "# add(y, x) = x + y\nprimrec(proj 1/1, comp(succ, proj 2/3))\n"},
      {"mul",
       "let add = primrec(proj 1/1, comp(succ, proj 2/3));\n"
       "# mul(y, x) = x * y\n"
       "primrec(const 0/1, comp(add, tuple(proj 3/3, proj 2/3)))\n"},
      {"pred", "primrec(const 0/0, proj 1/2)\n"},
      {"tsub",
       "let pred = primrec(const 0/0, proj 1/2);\n"
       "# subrev(y, x) = x - y, truncated at 0\n"
       "let subrev = primrec(proj 1/1, comp(pred, proj 2/3));\n"
       "comp(subrev, tuple(proj 2/2, proj 1/2))\n"},
      {"mu",
       "let pred = primrec(const 0/0, proj 1/2);\n"
       "let subrev = primrec(proj 1/1, comp(pred, proj 2/3));\n"
       "# least y with x - y = 0, which is x\n"
       "mu(subrev)\n"},
      {"sign", "# sign(x): least y with (y = 0 ? x : 0) = 0\nmu(primrec(proj 1/1, const 0/3))\n"},
      {"nozero", "# no y makes a non-zero constant vanish\nmu(const 1/2)\n"},
  };
  return all;
}

ExprPtr program(const std::string& name) {
  for (const auto& p : programs())
    if (p.name == name) return parse_program(p.source);
  throw MalformedInput("no corpus program named '" + name + "'");
}

}  // namespace tkft::corpus
