#include "tkft/flowchart_tm.hpp"

#include <functional>
#include <map>
#include <tuple>

#include "tkft/error.hpp"

namespace tkft {

namespace {

constexpr int L = -1, R = +1;

class MachineBuilder {
 public:
  explicit MachineBuilder(int group) : g_(group) { halt_ = state("halt"); }

  int state(const std::string& name) {
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
  }
  int fresh() { return state("s" + std::to_string(names_.size())); }
  int halt() const { return halt_; }

  // delta(q, a) = (to, write, dir).
  void rule(int q, int a, int to, int write, int dir) {
    rules_.push_back({q, a, to, write, dir});
  }
  // The same transition on both symbols, leaving the cell as it is.
  void pass(int q, int to, int dir) {
    rule(q, 0, to, 0, dir);
    rule(q, 1, to, 1, dir);
  }

  // A state that moves n cells in `dir` without writing, then enters `to`.
  int move(int dir, int n, int to) {
    if (n == 0) return to;
    auto key = std::tuple{dir, n, to};
    auto it = moves_.find(key);
    if (it != moves_.end()) return it->second;
    const int q = fresh();
    moves_[key] = q;
    pass(q, move(dir, n - 1, to), dir);
    return q;
  }

  // Entered on the origin cell of some group: walks left one group at a
  // time until it reads the origin flag, then steps onto the used flag of
  // group 0 and enters `exit`.
  int home(int exit) {
    auto it = homes_.find(exit);
    if (it != homes_.end()) return it->second;
    const int q = fresh();
    homes_[exit] = q;
    rule(q, 1, exit, 1, R);
    rule(q, 0, move(L, g_ - 1, q), 0, L);
    return q;
  }

  void inc(int entry, int r, int exit) {
    const int carry = fresh(), set_used = fresh();
    pass(entry, move(R, r - 1, carry), R);
    rule(carry, 1, move(R, g_ - 1, carry), 0, R);
    rule(carry, 0, move(L, r - 1, set_used), 1, L);
    rule(set_used, 0, home(exit), 1, L);
    rule(set_used, 1, home(exit), 1, L);
  }

  // Finds the lowest set bit of r; if there is none, goes to `zero`.
  // Otherwise clears it, sets every bit below it and goes to `nonzero`.
  void decjz(int entry, int r, int zero, int nonzero) {
    const int scan = fresh(), used = fresh(), back = fresh(), fill = fresh();
    pass(entry, move(R, r - 1, scan), R);
    rule(scan, 1, move(L, r, back), 0, L);
    rule(scan, 0, move(R, g_ - r - 1, used), 0, R);
    rule(used, 1, move(R, r - 1, scan), 1, R);
    rule(used, 0, home(zero), 0, L);
    rule(back, 1, nonzero, 1, R);
    rule(back, 0, move(L, g_ - r - 2, fill), 0, L);
    rule(fill, 0, move(L, r, back), 1, L);
    rule(fill, 1, move(L, r, back), 1, L);
  }

  void copy(int entry, int dst, int src, int exit) {
    const int dir = dst > src ? R : L;
    const int dist = dst > src ? dst - src : src - dst;
    const int read = fresh();
    const int write[2] = {fresh(), fresh()};
    rule(entry, 1, move(R, src - 1, read), 1, R);
    rule(entry, 0, home(exit), 0, L);
    for (int b = 0; b < 2; ++b) {
      rule(read, b, move(dir, dist - 1, write[b]), b, dir);
      pass_write(write[b], b, move(R, g_ - dst - 1, entry), R);
    }
  }

  void load(int entry, int r, const Natural& k, int exit) {
    const std::size_t n = k == 0 ? 0 : msb(k) + 1;
    const int clear = n == 0 ? entry : fresh();
    int at = entry;
    for (std::size_t j = 0; j < n; ++j) {
      const int bit = fresh();
      const int next = j + 1 == n ? clear : fresh();
      pass_write(at, 1, move(R, r - 1, bit), R);
      pass_write(bit, bit_test(k, static_cast<unsigned>(j)) ? 1 : 0, move(R, g_ - r - 1, next), R);
      at = next;
    }
    const int clear_bit = fresh();
    rule(clear, 1, move(R, r - 1, clear_bit), 1, R);
    rule(clear, 0, home(exit), 0, L);
    pass_write(clear_bit, 0, move(R, g_ - r - 1, clear), R);
  }

  TuringMachine build(int initial, IoConvention io) {
    // A chart that halts at once still needs a non-halting state.
    if (names_.size() == 1) pass(state("idle"), 1, R);
    std::vector<TuringMachine::Rule> rules;
    const std::string sym[2] = {"_", "1"};
    for (const auto& [q, a, to, w, d] : rules_)
      rules.push_back({names_[q], sym[a], names_[to], sym[w], d});
    return TuringMachine(names_, names_[initial], {"halt"}, {"_", "1"}, "_", rules, std::move(io));
  }

 private:
  void pass_write(int q, int write, int to, int dir) {
    rule(q, 0, to, write, dir);
    rule(q, 1, to, write, dir);
  }

  struct RawRule {
    int q, a, to, write, dir;
  };

  int g_;
  int halt_;
  std::vector<std::string> names_;
  std::vector<RawRule> rules_;
  std::map<std::tuple<int, int, int>, int> moves_;
  std::map<int, int> homes_;
};

}  // namespace

TuringMachine flowchart_to_tm(const Flowchart& fc) {
  fc.validate();
  const int g = fc.registers + 2;
  MachineBuilder mb(g);
  const auto nblocks = fc.blocks.size();

  auto is_noop = [](const Op& op) { return op.kind == Op::Kind::Copy && op.dst == op.src; };
  auto has_ops = [&](std::size_t b) {
    for (const auto& op : fc.blocks[b].ops)
      if (!is_noop(op)) return true;
    return false;
  };

  // Blocks that are nothing but a jump share the state of their target.
  std::vector<int> entry(nblocks, -1);
  std::vector<int> visiting(nblocks, 0);
  std::function<int(std::size_t)> entry_of = [&](std::size_t b) -> int {
    if (entry[b] >= 0) return entry[b];
    const auto& t = fc.blocks[b].next;
    if (!has_ops(b) && t.kind == Terminator::Kind::Jump) {
      if (visiting[b]) {
        const int spin = mb.state("b" + std::to_string(b));
        mb.pass(spin, spin, R);
        return entry[b] = spin;
      }
      visiting[b] = 1;
      const int e = entry_of(static_cast<std::size_t>(t.target));
      return entry[b] = entry[b] >= 0 ? entry[b] : e;
    }
    if (!has_ops(b) && t.kind == Terminator::Kind::Halt) return entry[b] = mb.halt();
    return entry[b] = mb.state("b" + std::to_string(b));
  };
  for (std::size_t b = 0; b < nblocks; ++b) entry_of(b);

  for (std::size_t b = 0; b < nblocks; ++b) {
    const Block& block = fc.blocks[b];
    std::vector<const Op*> ops;
    for (const auto& op : block.ops)
      if (!is_noop(op)) ops.push_back(&op);
    if (ops.empty() && block.next.kind != Terminator::Kind::DecJz) continue;

    const auto& t = block.next;
    int tail;
    if (t.kind == Terminator::Kind::Jump)
      tail = entry_of(static_cast<std::size_t>(t.target));
    else if (t.kind == Terminator::Kind::Halt)
      tail = mb.halt();
    else
      tail = ops.empty() ? entry[b] : mb.fresh();

    int at = entry[b];
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const int next = i + 1 == ops.size() ? tail : mb.fresh();
      const Op& op = *ops[i];
      switch (op.kind) {
        case Op::Kind::Inc:
          mb.inc(at, op.dst, next);
          break;
        case Op::Kind::Copy:
          mb.copy(at, op.dst, op.src, next);
          break;
        case Op::Kind::Load:
          mb.load(at, op.dst, op.value, next);
          break;
      }
      at = next;
    }
    if (t.kind == Terminator::Kind::DecJz)
      mb.decjz(tail, t.reg, entry_of(static_cast<std::size_t>(t.target)),
               entry_of(static_cast<std::size_t>(t.nonzero)));
  }

  IoConvention io;
  io.kind = IoConvention::Kind::Tracks;
  io.registers = fc.registers;
  io.inputs = fc.inputs;
  io.outputs = fc.outputs;
  return mb.build(entry[static_cast<std::size_t>(fc.entry)], std::move(io));
}

}  // namespace tkft
