#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tkft/murec.hpp"
#include "tkft/numeric.hpp"

namespace tkft {

// Register operations. Registers are numbered from 1.
struct Op {
  enum class Kind { Inc, Copy, Load };
  Kind kind = Kind::Inc;
  int dst = 0;
  int src = 0;    // Copy
  Natural value;  // Load

  friend bool operator==(const Op&, const Op&) = default;
};

struct Terminator {
  enum class Kind { Jump, DecJz, Halt };
  Kind kind = Kind::Halt;
  int reg = 0;      // DecJz
  int target = 0;   // Jump; DecJz when the register is zero
  int nonzero = 0;  // DecJz after decrementing a non-zero register

  friend bool operator==(const Terminator&, const Terminator&) = default;
};

struct Block {
  std::vector<Op> ops;
  Terminator next;

  friend bool operator==(const Block&, const Block&) = default;
};

struct Flowchart {
  int registers = 0;
  std::vector<int> inputs;
  std::vector<int> outputs;
  int entry = 0;
  std::vector<Block> blocks;

  // Throws ConstructionError for out-of-range registers or block targets.
  void validate() const;
  std::vector<int> successors(int block) const;

  friend bool operator==(const Flowchart&, const Flowchart&) = default;
};

// One loop per PrimRec and per Mu node; registers 1..arity hold the inputs.
Flowchart compile_to_flowchart(const ExprPtr& e);

// Back edges of a depth-first search from the entry block.
std::size_t loop_count(const Flowchart& fc);

struct FlowRun {
  enum class Outcome { Halted, OutOfFuel };
  Outcome outcome = Outcome::Halted;
  std::vector<Natural> outputs;
  std::uint64_t steps = 0;  // operations plus terminators executed
};

FlowRun run_flowchart(const Flowchart& fc, std::span<const Natural> args, std::uint64_t fuel);

// Same chart with block i moved to position perm[i].
Flowchart renumber(const Flowchart& fc, std::span<const int> perm);

std::string format_flowchart(const Flowchart& fc);
Flowchart parse_flowchart(const std::string& text);
std::string flowchart_dot(const Flowchart& fc);

}  // namespace tkft
