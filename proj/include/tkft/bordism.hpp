#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tkft/cantor.hpp"
#include "tkft/gshift.hpp"
#include "tkft/numeric.hpp"
#include "tkft/tm.hpp"

namespace tkft {

struct GraphEdge {
  StateId from = 0;
  StateId to = 0;
  Symbol read = 0;
  Symbol write = 0;
  int shift = +1;
};

// One vertex per state, one edge per transition labelled (a, a', s).
struct MachineGraph {
  std::vector<std::string> vertices;
  std::vector<std::string> symbols;
  StateId start = 0;
  std::vector<bool> stop;
  std::vector<GraphEdge> edges;

  std::string label(const GraphEdge& e) const;
};

MachineGraph build_graph(const TuringMachine& m);

// Cycle rank |E| - |V| + #components of the underlying undirected graph.
std::size_t betti1(const MachineGraph& g);
// Edges left over by a breadth-first spanning forest.
std::size_t forest_cycle_dimension(const MachineGraph& g);
// Back edges of a depth-first search from the start vertex (then from any
// unvisited vertex in index order).
std::size_t control_loop_count(const MachineGraph& g);

std::string graph_dot(const MachineGraph& g);

// Disc model: the tape alone, cell j at bits [j*w, (j+1)*w) with the
// symbol codes of Encoding::standard.
BiWord encode_tape(const Encoding& enc, const Tape& tape);
Tape decode_tape(const Encoding& enc, const BiWord& w);

struct Tube {
  std::size_t edge;
  BlockMap map;
  Rational length{1};
};

struct ThickenOptions {
  // Build the skeleton for a machine that fails is_reversible. Betti numbers
  // and lengths stay meaningful; the reaching map may not be injective.
  bool allow_irreversible = false;
  Rational length{1};
};

class BordismSkeleton {
 public:
  BordismSkeleton(const TuringMachine& m, const ThickenOptions& options);

  const TuringMachine& machine() const { return machine_; }
  const MachineGraph& graph() const { return graph_; }
  const Encoding& encoding() const { return encoding_; }
  const std::vector<Tube>& tubes() const { return tubes_; }
  const std::vector<std::size_t>& outgoing(StateId disc) const { return outgoing_.at(disc); }
  bool reversible() const { return reversible_; }

  // Every tube length multiplied by lambda > 0.
  BordismSkeleton rescaled(const Rational& lambda) const;

 private:
  friend struct ReachEngine;
  struct FastPiece {
    Rational x0, x1, y0, y1;
    Rational alpha, gamma, tx, ty;
  };

  TuringMachine machine_;
  MachineGraph graph_;
  Encoding encoding_;
  std::vector<Tube> tubes_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<FastPiece>> fast_;
  bool reversible_ = true;
};

// Throws Refused with the colliding transitions for an irreversible machine
// unless options.allow_irreversible is set.
BordismSkeleton thicken(const TuringMachine& m, const ThickenOptions& options = {});

struct ReachTrace {
  enum class Outcome { Reached, Diverged };
  struct Hop {
    std::size_t tube;
    CantorPoint point;  // position on the disc before the tube is traversed
  };

  std::vector<Natural> input;
  Outcome outcome = Outcome::Diverged;
  std::vector<Natural> output;
  StateId final_disc = 0;
  std::uint64_t steps = 0;
  Rational length;
  CantorPoint final_point;
  std::vector<Hop> path;
};

// Follows the point kappa(tape of input) through the tubes until it reaches
// a stop disc or `fuel` tubes have been traversed. Throws DomainGap when the
// point lies in no outgoing source block.
ReachTrace reach(const BordismSkeleton& sk, const std::vector<Natural>& input,
                 std::uint64_t fuel, bool record_path = false);

// Sum of traversed tube lengths; nullopt stands for infinity (no stop disc
// reached within fuel).
std::optional<Rational> length_complexity(const BordismSkeleton& sk,
                                          const std::vector<Natural>& input, std::uint64_t fuel);

struct ConjectureRow {
  Natural n;
  bool reached;
  std::uint64_t steps;
  Rational length;
  Rational ratio;
};

// LenC(n)/T(n) for n in [lo, hi]; a machine of arity k is fed (n, ..., n).
std::vector<ConjectureRow> conjecture_report(const BordismSkeleton& sk, std::uint64_t lo,
                                             std::uint64_t hi, std::uint64_t fuel);

std::string conjecture_csv(const std::vector<ConjectureRow>& rows);
std::string format_inputs(const std::vector<Natural>& xs);
std::string trace_csv_header();
std::string trace_csv_row(const ReachTrace& t);
std::string trace_log(const BordismSkeleton& sk, const ReachTrace& t);

}  // namespace tkft
