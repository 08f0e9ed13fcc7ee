#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tkft/numeric.hpp"
#include "tkft/sequence.hpp"

namespace tkft {

using StateId = std::uint32_t;

struct Transition {
  StateId target = 0;
  Symbol write = 0;
  int shift = +1;  // +1 or -1

  friend bool operator==(const Transition&, const Transition&) = default;
};

// How naturals are laid out on the tape before a run and read back after it.
// The head always sits at index 0.
struct IoConvention {
  enum class Kind {
    Unary,       // n as n marks at 0..n-1; output = number of non-blank cells
    UnaryTuple,  // x1 marks, blank, x2 marks, ...; output as for Unary
    Tracks,      // interleaved binary registers written by flowchart_to_tm
  };
  Kind kind = Kind::Unary;
  // UnaryTuple only: number of fields (0 accepts any count).
  int arity = 0;
  // Tracks only: register count and 1-based input/output registers.
  int registers = 0;
  std::vector<int> inputs;
  std::vector<int> outputs;

  friend bool operator==(const IoConvention&, const IoConvention&) = default;
};

// A deterministic single-tape machine (states, initial, halting, alphabet,
// delta). Symbols are indices with the blank at 0; the original names are
// kept for formatting. Halting states carry no transitions and every other
// state has one transition per symbol.
class TuringMachine {
 public:
  struct Rule {
    std::string from;
    std::string read;
    std::string to;
    std::string write;
    int shift = +1;
  };

  TuringMachine(std::vector<std::string> states, const std::string& initial,
                const std::vector<std::string>& halting,
                const std::vector<std::string>& alphabet, const std::string& blank,
                const std::vector<Rule>& rules, IoConvention io = {});

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_symbols() const { return symbol_names_.size(); }
  StateId initial() const { return initial_; }
  bool is_halting(StateId q) const { return halting_.at(q); }

  // nullopt exactly for halting states.
  const std::optional<Transition>& delta(StateId q, Symbol a) const {
    return delta_[q * num_symbols() + a];
  }

  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  const std::string& symbol_name(Symbol a) const { return symbol_names_.at(a); }
  std::span<const std::string> state_names() const { return state_names_; }
  std::span<const std::string> symbol_names() const { return symbol_names_; }
  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<Symbol> find_symbol(const std::string& name) const;

  const IoConvention& io() const { return io_; }
  void set_io(IoConvention io);

  // All transitions as (from, read, transition), non-halting states only.
  struct Edge {
    StateId from;
    Symbol read;
    Transition to;
  };
  std::vector<Edge> edges() const;

 private:
  std::vector<std::string> state_names_;
  std::vector<std::string> symbol_names_;
  std::vector<bool> halting_;
  StateId initial_ = 0;
  std::vector<std::optional<Transition>> delta_;
  IoConvention io_;
};

struct Configuration {
  StateId state = 0;
  Tape tape;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// One application of the machine's dynamics. Returns nullopt when the state is
// halting (the configuration is left as is). Throws MalformedInput for an
// unknown state or a read symbol outside the alphabet.
std::optional<Configuration> step(const TuringMachine& m, const Configuration& c);

struct RunResult {
  enum class Outcome { Halted, OutOfFuel };
  Outcome outcome;
  Configuration config;
  std::uint64_t steps;
};

RunResult run(const TuringMachine& m, Configuration c, std::uint64_t fuel);

struct ReversibilityReport {
  bool reversible = true;
  // Two (state, symbol) pairs whose transitions have a common image.
  struct Ref {
    StateId from;
    Symbol read;
  };
  std::optional<std::pair<Ref, Ref>> collision;

  std::string describe(const TuringMachine& m) const;
};

// Injectivity of the step map on non-halting configurations: for each target
// state, all incoming transitions must move the same way and write distinct
// symbols.
ReversibilityReport is_reversible(const TuringMachine& m);

// Tape layout for a tuple of naturals under the machine's I/O convention.
Tape encode_input(const TuringMachine& m, std::span<const Natural> args);
std::vector<Natural> decode_output(const TuringMachine& m, const Tape& tape);

// Number of naturals the machine's I/O convention expects (1 for unary, the
// declared arity for tuples, 1 for an arity-free tuple layout).
std::size_t input_arity(const TuringMachine& m);

Configuration initial_configuration(const TuringMachine& m, std::span<const Natural> args);

std::string format_tape(const TuringMachine& m, const Tape& t);

}  // namespace tkft
