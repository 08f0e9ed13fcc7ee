#pragma once

#include <string>
#include <vector>

#include "tkft/bordism.hpp"
#include "tkft/gshift.hpp"
#include "tkft/murec.hpp"
#include "tkft/random.hpp"
#include "tkft/tm.hpp"

namespace tkft::corpus {

// Unary successor: 1 -> (q0, 1, R), _ -> (qh, 1, R).
TuringMachine succ1();
// Unary addition on "1^x _ 1^y": blank the first mark, then fill the gap.
TuringMachine add_unary();
// Walks right over blanks forever.
TuringMachine diverger();

const char* succ1_text();
const char* add_unary_text();
const char* diverger_text();

// r = 1, G = id, F = 1.
GeneralizedShift full_shift();
// r = 2, G(01) = 10 and F(01) = 3; identity with no shift elsewhere.
GeneralizedShift jump_shift();
// r = 2, G swaps 01 and 10, F = 3 on every window.
GeneralizedShift jump_completion();
// G a random permutation of {0,1}^r, F constant in [-max_shift, max_shift].
GeneralizedShift random_permutation_shift(Rng& rng, int r, int max_shift);

// Binary alphabet, 2..max_states states of which the last halts, random
// total delta.
TuringMachine random_machine(Rng& rng, int max_states);
// Reversible binary machine with `states` working states and one halting
// state that no transition enters.
TuringMachine random_reversible_machine(Rng& rng, int states);
// A random configuration whose tape has support inside [-radius, radius].
Configuration random_configuration(Rng& rng, const TuringMachine& m, int radius);
BiWord random_biword(Rng& rng, int radius);
MachineGraph random_graph(Rng& rng, int max_vertices, int max_edges);

struct Program {
  std::string name;
  std::string source;
};

// succ, add, mul, pred, tsub, mu (least y with x - y = 0), sign, nozero.
const std::vector<Program>& programs();
ExprPtr program(const std::string& name);

}  // namespace tkft::corpus
