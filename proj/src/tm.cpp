#include "tkft/tm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

namespace {

int checked_index(const std::vector<std::string>& names, const std::string& name,
                  const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw ConstructionError(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<int>(it - names.begin());
}

}  // namespace

TuringMachine::TuringMachine(std::vector<std::string> states, const std::string& initial,
                             const std::vector<std::string>& halting,
                             const std::vector<std::string>& alphabet,
                             const std::string& blank, const std::vector<Rule>& rules,
                             IoConvention io)
    : state_names_(std::move(states)) {
  if (state_names_.empty()) throw ConstructionError("machine has no states");
  if (std::set<std::string>(state_names_.begin(), state_names_.end()).size() !=
      state_names_.size())
    throw ConstructionError("duplicate state names");
  if (std::set<std::string>(alphabet.begin(), alphabet.end()).size() != alphabet.size())
    throw ConstructionError("duplicate alphabet symbols");
  if (std::find(alphabet.begin(), alphabet.end(), blank) == alphabet.end())
    throw ConstructionError("blank '" + blank + "' is not in the alphabet");

  symbol_names_.push_back(blank);
  for (const auto& s : alphabet)
    if (s != blank) symbol_names_.push_back(s);

  initial_ = static_cast<StateId>(checked_index(state_names_, initial, "initial state"));
  halting_.assign(state_names_.size(), false);
  for (const auto& h : halting) halting_[checked_index(state_names_, h, "halting state")] = true;
  const auto n_halting = std::count(halting_.begin(), halting_.end(), true);
  if (n_halting == 0) throw ConstructionError("halting set is empty");
  if (n_halting == static_cast<long>(state_names_.size()))
    throw ConstructionError("halting set must be a proper subset of the states");

  delta_.assign(state_names_.size() * symbol_names_.size(), std::nullopt);
  for (const auto& r : rules) {
    const auto q = static_cast<StateId>(checked_index(state_names_, r.from, "state"));
    const auto a = static_cast<Symbol>(checked_index(symbol_names_, r.read, "symbol"));
    const auto q2 = static_cast<StateId>(checked_index(state_names_, r.to, "state"));
    const auto a2 = static_cast<Symbol>(checked_index(symbol_names_, r.write, "symbol"));
    if (r.shift != 1 && r.shift != -1)
      throw ConstructionError("shift must be +1 or -1");
    if (halting_[q])
      throw ConstructionError("transition out of halting state '" + r.from + "'");
    auto& slot = delta_[q * symbol_names_.size() + a];
    if (slot) throw ConstructionError("duplicate transition for (" + r.from + ", " + r.read + ")");
    slot = Transition{q2, a2, r.shift};
  }
  for (StateId q = 0; q < state_names_.size(); ++q) {
    if (halting_[q]) continue;
    for (Symbol a = 0; a < symbol_names_.size(); ++a)
      if (!delta_[q * symbol_names_.size() + a])
        throw ConstructionError("missing transition for (" + state_names_[q] + ", " +
                                symbol_names_[a] + ")");
  }
  set_io(std::move(io));
}

void TuringMachine::set_io(IoConvention io) {
  if (io.kind == IoConvention::Kind::Tracks) {
    if (io.registers < 1) throw ConstructionError("track layout needs at least one register");
    auto in_range = [&](int r) { return r >= 1 && r <= io.registers; };
    if (!std::all_of(io.inputs.begin(), io.inputs.end(), in_range) ||
        !std::all_of(io.outputs.begin(), io.outputs.end(), in_range) || io.outputs.empty())
      throw ConstructionError("track layout register out of range");
  }
  io_ = std::move(io);
}

std::optional<StateId> TuringMachine::find_state(const std::string& name) const {
  auto it = std::find(state_names_.begin(), state_names_.end(), name);
  if (it == state_names_.end()) return std::nullopt;
  return static_cast<StateId>(it - state_names_.begin());
}

std::optional<Symbol> TuringMachine::find_symbol(const std::string& name) const {
  auto it = std::find(symbol_names_.begin(), symbol_names_.end(), name);
  if (it == symbol_names_.end()) return std::nullopt;
  return static_cast<Symbol>(it - symbol_names_.begin());
}

std::vector<TuringMachine::Edge> TuringMachine::edges() const {
  std::vector<Edge> out;
  for (StateId q = 0; q < num_states(); ++q)
    for (Symbol a = 0; a < num_symbols(); ++a)
      if (const auto& t = delta(q, a)) out.push_back({q, a, *t});
  return out;
}

std::optional<Configuration> step(const TuringMachine& m, const Configuration& c) {
  if (c.state >= m.num_states()) throw MalformedInput("configuration state out of range");
  if (m.is_halting(c.state)) return std::nullopt;
  const Symbol a = c.tape.get(0);
  if (a >= m.num_symbols()) throw MalformedInput("tape symbol outside the alphabet");
  const Transition& t = *m.delta(c.state, a);
  Configuration next{t.target, c.tape};
  next.tape.set(0, t.write);
  next.tape.relabel(t.shift);
  return next;
}

RunResult run(const TuringMachine& m, Configuration c, std::uint64_t fuel) {
  if (c.state >= m.num_states()) throw MalformedInput("configuration state out of range");
  std::uint64_t steps = 0;
  while (!m.is_halting(c.state)) {
    if (steps == fuel) return {RunResult::Outcome::OutOfFuel, std::move(c), steps};
    const Symbol a = c.tape.get(0);
    if (a >= m.num_symbols()) throw MalformedInput("tape symbol outside the alphabet");
    const Transition& t = *m.delta(c.state, a);
    c.tape.set(0, t.write);
    c.tape.relabel(t.shift);
    c.state = t.target;
    ++steps;
  }
  return {RunResult::Outcome::Halted, std::move(c), steps};
}

std::string ReversibilityReport::describe(const TuringMachine& m) const {
  if (!collision) return "reversible";
  const auto& [a, b] = *collision;
  const auto& ta = *m.delta(a.from, a.read);
  const auto& tb = *m.delta(b.from, b.read);
  auto one = [&](const Ref& r, const Transition& t) {
    return "delta(" + m.state_name(r.from) + "," + m.symbol_name(r.read) + ")=(" +
           m.state_name(t.target) + "," + m.symbol_name(t.write) + "," +
           (t.shift > 0 ? "R" : "L") + ")";
  };
  return one(a, ta) + " and " + one(b, tb);
}

ReversibilityReport is_reversible(const TuringMachine& m) {
  ReversibilityReport report;
  std::map<StateId, std::vector<ReversibilityReport::Ref>> incoming;
  for (const auto& e : m.edges()) incoming[e.to.target].push_back({e.from, e.read});
  for (const auto& [target, refs] : incoming) {
    for (std::size_t i = 0; i < refs.size(); ++i) {
      for (std::size_t j = i + 1; j < refs.size(); ++j) {
        const auto& ti = *m.delta(refs[i].from, refs[i].read);
        const auto& tj = *m.delta(refs[j].from, refs[j].read);
        if (ti.shift != tj.shift || ti.write == tj.write) {
          report.reversible = false;
          report.collision = {refs[i], refs[j]};
          return report;
        }
      }
    }
  }
  return report;
}

namespace {

// Tracks layout: group j occupies cells j*g-1 .. j*g+g-2 where g = registers+2;
// offset 0 flags the first group, offset 1 flags groups in use and offset r+1
// holds bit j of register r (least significant bit in group 0).
std::int64_t track_cell(int registers, std::int64_t group, int offset) {
  return group * (registers + 2) + offset - 1;
}

}  // namespace

Tape encode_input(const TuringMachine& m, std::span<const Natural> args) {
  const IoConvention& io = m.io();
  Tape tape;
  constexpr Symbol mark = 1;
  const bool writes_marks =
      io.kind == IoConvention::Kind::Tracks ||
      std::any_of(args.begin(), args.end(), [](const Natural& x) { return x != 0; });
  if (m.num_symbols() < 2 && writes_marks)
    throw MalformedInput("writing input needs a non-blank mark symbol");
  switch (io.kind) {
    case IoConvention::Kind::Unary: {
      if (args.size() != 1) throw MalformedInput("unary convention takes exactly one natural");
      const auto n = args[0].convert_to<std::int64_t>();
      for (std::int64_t i = 0; i < n; ++i) tape.set(i, mark);
      break;
    }
    case IoConvention::Kind::UnaryTuple: {
      if (io.arity > 0 && args.size() != static_cast<std::size_t>(io.arity))
        throw MalformedInput("expected " + std::to_string(io.arity) + " inputs, got " +
                             std::to_string(args.size()));
      std::int64_t pos = 0;
      for (const auto& x : args) {
        const auto n = x.convert_to<std::int64_t>();
        for (std::int64_t i = 0; i < n; ++i) tape.set(pos++, mark);
        ++pos;
      }
      break;
    }
    case IoConvention::Kind::Tracks: {
      if (args.size() != io.inputs.size())
        throw MalformedInput("expected " + std::to_string(io.inputs.size()) + " inputs, got " +
                             std::to_string(args.size()));
      std::int64_t width = 1;
      for (const auto& x : args)
        width = std::max<std::int64_t>(width, x == 0 ? 1 : static_cast<std::int64_t>(msb(x)) + 1);
      tape.set(track_cell(io.registers, 0, 0), mark);
      for (std::int64_t j = 0; j < width; ++j) tape.set(track_cell(io.registers, j, 1), mark);
      for (std::size_t i = 0; i < args.size(); ++i) {
        const Natural& x = args[i];
        if (x == 0) continue;
        for (std::int64_t j = 0; j <= static_cast<std::int64_t>(msb(x)); ++j)
          if (bit_test(x, static_cast<unsigned>(j)))
            tape.set(track_cell(io.registers, j, io.inputs[i] + 1), mark);
      }
      break;
    }
  }
  return tape;
}

std::vector<Natural> decode_output(const TuringMachine& m, const Tape& tape) {
  const IoConvention& io = m.io();
  if (io.kind != IoConvention::Kind::Tracks) return {Natural(tape.count_nonblank())};
  std::vector<Natural> out;
  for (int r : io.outputs) {
    Natural v = 0;
    for (std::int64_t j = 0; tape.get(track_cell(io.registers, j, 1)) != 0; ++j)
      if (tape.get(track_cell(io.registers, j, r + 1)) != 0) bit_set(v, static_cast<unsigned>(j));
    out.push_back(v);
  }
  return out;
}

std::size_t input_arity(const TuringMachine& m) {
  const IoConvention& io = m.io();
  switch (io.kind) {
    case IoConvention::Kind::Unary:
      return 1;
    case IoConvention::Kind::UnaryTuple:
      return io.arity > 0 ? static_cast<std::size_t>(io.arity) : 1;
    case IoConvention::Kind::Tracks:
      return io.inputs.size();
  }
  return 1;
}

Configuration initial_configuration(const TuringMachine& m, std::span<const Natural> args) {
  return {m.initial(), encode_input(m, args)};
}

std::string format_tape(const TuringMachine& m, const Tape& t) {
  std::ostringstream os;
  const std::int64_t lo = std::min<std::int64_t>(t.lo(), 0);
  const std::int64_t hi = std::max<std::int64_t>(t.hi(), 1);
  for (std::int64_t n = lo; n < hi; ++n) {
    if (n == 0) os << '[';
    os << m.symbol_name(t.get(n));
    if (n == 0) os << ']';
    if (n + 1 < hi) os << ' ';
  }
  return os.str();
}

}  // namespace tkft
