#include "tkft/flowchart.hpp"

#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

void Flowchart::validate() const {
  auto reg_ok = [&](int r) { return r >= 1 && r <= registers; };
  auto block_ok = [&](int b) { return b >= 0 && b < static_cast<int>(blocks.size()); };
  if (blocks.empty() || !block_ok(entry)) throw ConstructionError("flowchart entry out of range");
  for (int r : inputs)
    if (!reg_ok(r)) throw ConstructionError("input register " + std::to_string(r) + " out of range");
  for (int r : outputs)
    if (!reg_ok(r)) throw ConstructionError("output register " + std::to_string(r) + " out of range");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto where = "block " + std::to_string(b) + ": ";
    for (const auto& op : blocks[b].ops) {
      if (!reg_ok(op.dst) || (op.kind == Op::Kind::Copy && !reg_ok(op.src)))
        throw ConstructionError(where + "register out of range");
      if (op.kind == Op::Kind::Load && op.value < 0)
        throw ConstructionError(where + "negative constant");
    }
    const auto& t = blocks[b].next;
    if (t.kind == Terminator::Kind::Jump && !block_ok(t.target))
      throw ConstructionError(where + "jump target out of range");
    if (t.kind == Terminator::Kind::DecJz &&
        (!reg_ok(t.reg) || !block_ok(t.target) || !block_ok(t.nonzero)))
      throw ConstructionError(where + "decjz operand out of range");
  }
}

std::vector<int> Flowchart::successors(int block) const {
  const auto& t = blocks.at(static_cast<std::size_t>(block)).next;
  switch (t.kind) {
    case Terminator::Kind::Jump:
      return {t.target};
    case Terminator::Kind::DecJz:
      return {t.target, t.nonzero};
    case Terminator::Kind::Halt:
      return {};
  }
  return {};
}

namespace {

class Compiler {
 public:
  struct Val {
    int reg;
    bool owned;  // the consumer may overwrite the register
  };

  Flowchart compile(const ExprPtr& e) {
    fc_.blocks.emplace_back();
    std::vector<Val> args;
    for (int i = 1; i <= e->arity(); ++i) {
      fc_.inputs.push_back(i);
      args.push_back({i, true});
    }
    fc_.registers = e->arity();
    for (const auto& v : gen(e, args)) fc_.outputs.push_back(v.reg);
    block().next = {Terminator::Kind::Halt, 0, 0, 0};
    if (fc_.registers == 0) fc_.registers = 1;
    return fc_;
  }

 private:
  Block& block() { return fc_.blocks[static_cast<std::size_t>(cur_)]; }
  int fresh() { return ++fc_.registers; }
  int new_block() {
    fc_.blocks.emplace_back();
    return static_cast<int>(fc_.blocks.size()) - 1;
  }
  void emit(Op op) { block().ops.push_back(std::move(op)); }
  void copy(int dst, int src) {
    if (dst != src) emit({Op::Kind::Copy, dst, src, 0});
  }
  void load(int dst, Natural k) { emit({Op::Kind::Load, dst, 0, std::move(k)}); }
  void inc(int dst) { emit({Op::Kind::Inc, dst, 0, 0}); }

  // A register the caller may overwrite, holding v's value.
  int owned_copy(const Val& v) {
    if (v.owned) return v.reg;
    const int r = fresh();
    copy(r, v.reg);
    return r;
  }

  std::vector<Val> gen(const ExprPtr& e, std::vector<Val> args) {
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].owned && reads_of(e, static_cast<int>(i) + 1) > 1) args[i].owned = false;
    const auto& c = e->children();
    switch (e->kind()) {
      case Expr::Kind::Const: {
        const int r = fresh();
        load(r, e->value());
        return {{r, true}};
      }
      case Expr::Kind::Succ: {
        const int r = owned_copy(args[0]);
        inc(r);
        return {{r, true}};
      }
      case Expr::Kind::Proj:
        return {args[static_cast<std::size_t>(e->index() - 1)]};
      case Expr::Kind::Tuple: {
        std::vector<Val> out;
        for (const auto& part : c) {
          auto v = gen(part, args);
          out.insert(out.end(), v.begin(), v.end());
        }
        return out;
      }
      case Expr::Kind::Compose:
        return gen(c[0], gen(c[1], args));
      case Expr::Kind::PrimRec: {
        const auto& f = c[0];
        const auto& g = c[1];
        std::vector<Val> xs(args.begin() + 1, args.end());
        const int acc = owned_copy(gen(f, xs)[0]);
        const int counter = owned_copy(args[0]);
        const bool uses_index = reads_of(g, 1) > 0;
        const int index = uses_index ? fresh() : 0;
        if (uses_index) load(index, 0);
        const int header = new_block();
        block().next = {Terminator::Kind::Jump, 0, header, 0};
        const int body = new_block();
        const int exit = new_block();
        fc_.blocks[static_cast<std::size_t>(header)].next = {Terminator::Kind::DecJz, counter, exit, body};
        cur_ = body;
        std::vector<Val> inner{{index, false}, {acc, true}};
        for (const auto& x : xs) inner.push_back({x.reg, false});
        if (!uses_index) inner[0] = {acc, false};  // never read
        copy(acc, gen(g, inner)[0].reg);
        if (uses_index) inc(index);
        block().next = {Terminator::Kind::Jump, 0, header, 0};
        cur_ = exit;
        return {{acc, true}};
      }
      case Expr::Kind::Mu: {
        const int y = fresh();
        load(y, 0);
        const int header = new_block();
        block().next = {Terminator::Kind::Jump, 0, header, 0};
        cur_ = header;
        std::vector<Val> inner{{y, false}};
        for (const auto& x : args) inner.push_back({x.reg, false});
        const int z = owned_copy(gen(c[0], inner)[0]);
        const int body = new_block();
        const int exit = new_block();
        block().next = {Terminator::Kind::DecJz, z, exit, body};
        cur_ = body;
        inc(y);
        block().next = {Terminator::Kind::Jump, 0, header, 0};
        cur_ = exit;
        return {{y, true}};
      }
    }
    return {};
  }

  Flowchart fc_;
  int cur_ = 0;
};

}  // namespace

Flowchart compile_to_flowchart(const ExprPtr& e) {
  Flowchart fc = Compiler().compile(e);
  fc.validate();
  return fc;
}

std::size_t loop_count(const Flowchart& fc) {
  enum Colour { White, Grey, Black };
  std::vector<Colour> colour(fc.blocks.size(), White);
  std::size_t back_edges = 0;
  std::vector<std::pair<int, std::size_t>> stack{{fc.entry, 0}};
  colour[static_cast<std::size_t>(fc.entry)] = Grey;
  while (!stack.empty()) {
    auto& [b, next] = stack.back();
    const auto succ = fc.successors(b);
    if (next == succ.size()) {
      colour[static_cast<std::size_t>(b)] = Black;
      stack.pop_back();
      continue;
    }
    const int w = succ[next++];
    if (colour[static_cast<std::size_t>(w)] == Grey) {
      ++back_edges;
    } else if (colour[static_cast<std::size_t>(w)] == White) {
      colour[static_cast<std::size_t>(w)] = Grey;
      stack.emplace_back(w, 0);
    }
  }
  return back_edges;
}

FlowRun run_flowchart(const Flowchart& fc, std::span<const Natural> args, std::uint64_t fuel) {
  fc.validate();
  if (args.size() != fc.inputs.size())
    throw MalformedInput("expected " + std::to_string(fc.inputs.size()) + " arguments, got " +
                         std::to_string(args.size()));
  std::vector<Natural> reg(static_cast<std::size_t>(fc.registers) + 1, 0);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] < 0) throw MalformedInput("arguments are naturals");
    reg[static_cast<std::size_t>(fc.inputs[i])] = args[i];
  }
  FlowRun run;
  auto burn = [&] {
    if (run.steps == fuel) return false;
    ++run.steps;
    return true;
  };
  int b = fc.entry;
  for (;;) {
    const Block& block = fc.blocks[static_cast<std::size_t>(b)];
    for (const auto& op : block.ops) {
      if (!burn()) return run.outcome = FlowRun::Outcome::OutOfFuel, run;
      auto& d = reg[static_cast<std::size_t>(op.dst)];
      switch (op.kind) {
        case Op::Kind::Inc:
          ++d;
          break;
        case Op::Kind::Copy:
          d = reg[static_cast<std::size_t>(op.src)];
          break;
        case Op::Kind::Load:
          d = op.value;
          break;
      }
    }
    if (!burn()) return run.outcome = FlowRun::Outcome::OutOfFuel, run;
    const auto& t = block.next;
    if (t.kind == Terminator::Kind::Halt) break;
    if (t.kind == Terminator::Kind::Jump) {
      b = t.target;
    } else {
      auto& r = reg[static_cast<std::size_t>(t.reg)];
      if (r == 0) {
        b = t.target;
      } else {
        --r;
        b = t.nonzero;
      }
    }
  }
  for (int r : fc.outputs) run.outputs.push_back(reg[static_cast<std::size_t>(r)]);
  return run;
}

Flowchart renumber(const Flowchart& fc, std::span<const int> perm) {
  if (perm.size() != fc.blocks.size()) throw MalformedInput("permutation has the wrong size");
  Flowchart out = fc;
  auto at = [&](int b) { return perm[static_cast<std::size_t>(b)]; };
  out.entry = at(fc.entry);
  for (std::size_t b = 0; b < fc.blocks.size(); ++b) {
    Block moved = fc.blocks[b];
    moved.next.target = moved.next.kind == Terminator::Kind::Halt ? 0 : at(moved.next.target);
    if (moved.next.kind == Terminator::Kind::DecJz) moved.next.nonzero = at(moved.next.nonzero);
    out.blocks[static_cast<std::size_t>(at(static_cast<int>(b)))] = std::move(moved);
  }
  return out;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string op_text(const Op& op) {
  switch (op.kind) {
    case Op::Kind::Inc:
      return "inc r" + std::to_string(op.dst);
    case Op::Kind::Copy:
      return "copy r" + std::to_string(op.dst) + " r" + std::to_string(op.src);
    case Op::Kind::Load:
      return "load r" + std::to_string(op.dst) + " " + op.value.str();
  }
  return {};
}

}  // namespace

std::string format_flowchart(const Flowchart& fc) {
  std::ostringstream os;
  os << "registers: " << fc.registers << '\n';
  os << "inputs: " << join(fc.inputs) << '\n';
  os << "outputs: " << join(fc.outputs) << '\n';
  os << "entry: " << fc.entry << '\n';
  for (std::size_t b = 0; b < fc.blocks.size(); ++b) {
    os << "block " << b << ":\n";
    for (const auto& op : fc.blocks[b].ops) os << "  " << op_text(op) << '\n';
    const auto& t = fc.blocks[b].next;
    switch (t.kind) {
      case Terminator::Kind::Jump:
        os << "  jump " << t.target << '\n';
        break;
      case Terminator::Kind::DecJz:
        os << "  decjz r" << t.reg << ' ' << t.target << ' ' << t.nonzero << '\n';
        break;
      case Terminator::Kind::Halt:
        os << "  halt\n";
        break;
    }
  }
  return os.str();
}

Flowchart parse_flowchart(const std::string& text) {
  Flowchart fc;
  std::istringstream is(text);
  int line_no = 0;
  bool terminated = true;
  auto fail = [&](const std::string& what) {
    throw MalformedInput("line " + std::to_string(line_no) + ": " + what);
  };
  auto reg = [&](const std::string& w) {
    if (w.size() < 2 || w[0] != 'r') fail("expected a register like r3, got '" + w + "'");
    try {
      return std::stoi(w.substr(1));
    } catch (const std::exception&) {
      fail("bad register '" + w + "'");
    }
    return 0;
  };
  auto num = [&](std::istringstream& ls) {
    int v;
    if (!(ls >> v)) fail("expected a number");
    return v;
  };
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    std::istringstream ls(raw.substr(0, raw.find('#')));
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "registers:") {
      fc.registers = num(ls);
    } else if (key == "inputs:" || key == "outputs:") {
      auto& list = key == "inputs:" ? fc.inputs : fc.outputs;
      for (int v; ls >> v;) list.push_back(v);
    } else if (key == "entry:") {
      fc.entry = num(ls);
    } else if (key == "block") {
      std::string label;
      ls >> label;
      if (!terminated) fail("previous block has no jump, decjz or halt");
      if (label != std::to_string(fc.blocks.size()) + ":")
        fail("blocks must be numbered 0, 1, ... in order");
      fc.blocks.emplace_back();
      terminated = false;
    } else {
      if (fc.blocks.empty() || terminated) fail("statement outside a block");
      Block& b = fc.blocks.back();
      std::string a, c;
      if (key == "inc") {
        ls >> a;
        b.ops.push_back({Op::Kind::Inc, reg(a), 0, 0});
      } else if (key == "copy") {
        ls >> a >> c;
        b.ops.push_back({Op::Kind::Copy, reg(a), reg(c), 0});
      } else if (key == "load") {
        ls >> a >> c;
        bool digits = !c.empty() && c.find_first_not_of("0123456789") == std::string::npos;
        if (!digits) fail("load needs a natural constant");
        b.ops.push_back({Op::Kind::Load, reg(a), 0, Natural(c)});
      } else if (key == "jump") {
        b.next = {Terminator::Kind::Jump, 0, num(ls), 0};
        terminated = true;
      } else if (key == "decjz") {
        ls >> a;
        const int r = reg(a);
        const int zero = num(ls);
        b.next = {Terminator::Kind::DecJz, r, zero, num(ls)};
        terminated = true;
      } else if (key == "halt") {
        b.next = {Terminator::Kind::Halt, 0, 0, 0};
        terminated = true;
      } else {
        fail("unknown statement '" + key + "'");
      }
      std::string extra;
      if (ls >> extra) fail("unexpected '" + extra + "'");
    }
  }
  if (!terminated) throw MalformedInput("last block has no jump, decjz or halt");
  fc.validate();
  return fc;
}

std::string flowchart_dot(const Flowchart& fc) {
  std::ostringstream os;
  os << "digraph flowchart {\n  node [shape=box, fontname=monospace];\n";
  for (std::size_t b = 0; b < fc.blocks.size(); ++b) {
    os << "  b" << b << " [label=\"" << b << ":";
    for (const auto& op : fc.blocks[b].ops) os << "\\l" << op_text(op);
    const auto& t = fc.blocks[b].next;
    if (t.kind == Terminator::Kind::DecJz) os << "\\lr" << t.reg << " = 0 ?";
    if (t.kind == Terminator::Kind::Halt) os << "\\lhalt";
    os << "\\l\"";
    if (static_cast<int>(b) == fc.entry) os << ", style=bold";
    os << "];\n";
  }
  for (std::size_t b = 0; b < fc.blocks.size(); ++b) {
    const auto& t = fc.blocks[b].next;
    if (t.kind == Terminator::Kind::Jump) os << "  b" << b << " -> b" << t.target << ";\n";
    if (t.kind == Terminator::Kind::DecJz) {
      os << "  b" << b << " -> b" << t.target << " [label=\"zero\"];\n";
      os << "  b" << b << " -> b" << t.nonzero << " [label=\"dec\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace tkft
