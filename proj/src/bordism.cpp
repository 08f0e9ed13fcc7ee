#include "tkft/bordism.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

std::string MachineGraph::label(const GraphEdge& e) const {
  return symbols.at(e.read) + "/" + symbols.at(e.write) + "," + (e.shift > 0 ? "R" : "L");
}

MachineGraph build_graph(const TuringMachine& m) {
  MachineGraph g;
  g.vertices.assign(m.state_names().begin(), m.state_names().end());
  g.symbols.assign(m.symbol_names().begin(), m.symbol_names().end());
  g.start = m.initial();
  for (StateId q = 0; q < m.num_states(); ++q) g.stop.push_back(m.is_halting(q));
  for (const auto& e : m.edges())
    g.edges.push_back({e.from, e.to.target, e.read, e.to.write, e.to.shift});
  return g;
}

namespace {

std::size_t components(const MachineGraph& g) {
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t count = g.vertices.size();
  for (const auto& e : g.edges) {
    const auto a = find(e.from), b = find(e.to);
    if (a != b) parent[a] = b, --count;
  }
  return count;
}

}  // namespace

std::size_t betti1(const MachineGraph& g) {
  return g.edges.size() + components(g) - g.vertices.size();
}

std::size_t forest_cycle_dimension(const MachineGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertices.size());
  for (const auto& e : g.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(g.vertices.size(), false);
  std::size_t tree_edges = 0;
  for (std::size_t root = 0; root < g.vertices.size(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      const auto v = todo.front();
      todo.pop();
      for (auto w : adj[v])
        if (!seen[w]) seen[w] = true, ++tree_edges, todo.push(w);
    }
  }
  return g.edges.size() - tree_edges;
}

std::size_t control_loop_count(const MachineGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : g.edges) succ[e.from].push_back(e.to);
  enum Colour { White, Grey, Black };
  std::vector<Colour> colour(n, White);
  std::size_t back_edges = 0;
  std::vector<std::size_t> roots{g.start};
  for (std::size_t v = 0; v < n; ++v) roots.push_back(v);
  for (auto root : roots) {
    if (colour[root] != White) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == succ[v].size()) {
        colour[v] = Black;
        stack.pop_back();
        continue;
      }
      const auto w = succ[v][next++];
      if (colour[w] == Grey) {
        ++back_edges;
      } else if (colour[w] == White) {
        colour[w] = Grey;
        stack.emplace_back(w, 0);
      }
    }
  }
  return back_edges;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string graph_dot(const MachineGraph& g) {
  std::ostringstream os;
  os << "digraph machine {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  __start [shape=point];\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    os << "  " << quoted(g.vertices[v]);
    if (g.stop[v]) os << " [shape=doublecircle]";
    else if (v == g.start) os << " [style=bold]";
    os << ";\n";
  }
  os << "  __start -> " << quoted(g.vertices[g.start]) << ";\n";
  for (const auto& e : g.edges)
    os << "  " << quoted(g.vertices[e.from]) << " -> " << quoted(g.vertices[e.to])
       << " [label=" << quoted(g.label(e)) << "];\n";
  os << "}\n";
  return os.str();
}

BiWord encode_tape(const Encoding& enc, const Tape& tape) {
  BiWord w;
  const auto cells = tape.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] >= enc.symbol_codes.size()) throw MalformedInput("tape symbol outside the alphabet");
    const std::int64_t j = tape.lo() + static_cast<std::int64_t>(i);
    write_bits(w, j * enc.symbol_width, enc.symbol_width, enc.symbol_codes[cells[i]]);
  }
  return w;
}

Tape decode_tape(const Encoding& enc, const BiWord& w) {
  const std::int64_t width = enc.symbol_width;
  auto floor_div = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  Tape tape;
  for (std::int64_t j = floor_div(w.lo(), width); j * width < w.hi(); ++j) {
    const Window code = read_bits(w, j * width, enc.symbol_width);
    auto a = std::find(enc.symbol_codes.begin(), enc.symbol_codes.end(), code);
    if (a == enc.symbol_codes.end())
      throw DecodeError("cell " + std::to_string(j) + " holds unused symbol code " +
                        format_window(code, enc.symbol_width));
    tape.set(j, static_cast<Symbol>(a - enc.symbol_codes.begin()));
  }
  return tape;
}

BordismSkeleton::BordismSkeleton(const TuringMachine& m, const ThickenOptions& options)
    : machine_(m), graph_(build_graph(m)), encoding_(Encoding::standard(m)) {
  if (options.length <= 0) throw ConstructionError("tube length must be positive");
  const auto rev = is_reversible(m);
  reversible_ = rev.reversible;
  if (!rev.reversible && !options.allow_irreversible)
    throw Refused("machine is not reversible", rev.describe(m));

  const int w = encoding_.symbol_width;
  outgoing_.resize(graph_.vertices.size());
  for (std::size_t i = 0; i < graph_.edges.size(); ++i) {
    const auto& e = graph_.edges[i];
    // The single-window shift that rewrites code(a) to code(a') and moves
    // the tape by one cell; only the pieces over code(a) belong to this tube.
    std::vector<Window> g(std::size_t{1} << w);
    std::iota(g.begin(), g.end(), Window{0});
    std::vector<std::int64_t> f(g.size(), 0);
    const Window code = encoding_.symbol_codes[e.read];
    g[code] = encoding_.symbol_codes[e.write];
    f[code] = e.shift * w;
    Tube tube{i, {}, options.length};
    for (auto& p : pieces(GeneralizedShift(w, std::move(g), std::move(f))))
      if (p.window == code)
        tube.map.pieces.push_back({std::move(p.source), std::move(p.target), p.shift, -p.shift});
    outgoing_[e.from].push_back(tubes_.size());
    tubes_.push_back(std::move(tube));
  }

  for (std::size_t q = 0; q < outgoing_.size(); ++q) {
    std::vector<Cylinder> sources;
    for (auto t : outgoing_[q])
      for (const auto& p : tubes_[t].map.pieces) sources.push_back(p.source);
    if (auto hit = find_overlap(sources))
      throw ConstructionError("outgoing tubes of disc " + graph_.vertices[q] + " overlap");
  }

  fast_.resize(tubes_.size());
  for (std::size_t t = 0; t < tubes_.size(); ++t) {
    for (const auto& p : tubes_[t].map.pieces) {
      const Rational x0 = x_lo(p.source), y0 = y_lo(p.source);
      fast_[t].push_back({x0, x0 + pow3(-static_cast<std::int64_t>(p.source.u.size())), y0,
                          y0 + pow3(-static_cast<std::int64_t>(p.source.v.size())), p.alpha(),
                          p.gamma(), x_lo(p.target), y_lo(p.target)});
    }
  }
}

BordismSkeleton BordismSkeleton::rescaled(const Rational& lambda) const {
  if (lambda <= 0) throw ConstructionError("rescaling factor must be positive");
  BordismSkeleton out = *this;
  for (auto& t : out.tubes_) t.length *= lambda;
  return out;
}

BordismSkeleton thicken(const TuringMachine& m, const ThickenOptions& options) {
  return BordismSkeleton(m, options);
}

struct ReachEngine {
  static ReachTrace run(const BordismSkeleton& sk, const std::vector<Natural>& input,
                        std::uint64_t fuel, bool record_path) {
    const TuringMachine& m = sk.machine_;
    ReachTrace trace;
    trace.input = input;
    CantorPoint p = kappa(encode_tape(sk.encoding_, encode_input(m, input)));
    StateId disc = sk.graph_.start;
    while (!sk.graph_.stop[disc]) {
      if (trace.steps == fuel) {
        trace.outcome = ReachTrace::Outcome::Diverged;
        trace.final_disc = disc;
        trace.final_point = std::move(p);
        return trace;
      }
      const BordismSkeleton::FastPiece* hit = nullptr;
      std::size_t tube = 0;
      for (auto t : sk.outgoing_[disc]) {
        for (const auto& fp : sk.fast_[t]) {
          if (fp.x0 <= p.x && p.x <= fp.x1 && fp.y0 <= p.y && p.y <= fp.y1) {
            hit = &fp;
            tube = t;
            break;
          }
        }
        if (hit) break;
      }
      if (!hit)
        throw DomainGap("point " + format_point(p) + " on disc " + sk.graph_.vertices[disc] +
                        " lies in no outgoing tube");
      if (record_path) trace.path.push_back({tube, p});
      p.x = hit->alpha * (p.x - hit->x0) + hit->tx;
      p.y = hit->gamma * (p.y - hit->y0) + hit->ty;
      trace.length += sk.tubes_[tube].length;
      disc = sk.graph_.edges[sk.tubes_[tube].edge].to;
      ++trace.steps;
    }
    trace.outcome = ReachTrace::Outcome::Reached;
    trace.final_disc = disc;
    trace.output = decode_output(m, decode_tape(sk.encoding_, kappa_inv(p)));
    trace.final_point = std::move(p);
    return trace;
  }
};

ReachTrace reach(const BordismSkeleton& sk, const std::vector<Natural>& input,
                 std::uint64_t fuel, bool record_path) {
  return ReachEngine::run(sk, input, fuel, record_path);
}

std::optional<Rational> length_complexity(const BordismSkeleton& sk,
                                          const std::vector<Natural>& input, std::uint64_t fuel) {
  auto t = reach(sk, input, fuel);
  if (t.outcome == ReachTrace::Outcome::Diverged) return std::nullopt;
  return t.length;
}

std::vector<ConjectureRow> conjecture_report(const BordismSkeleton& sk, std::uint64_t lo,
                                             std::uint64_t hi, std::uint64_t fuel) {
  std::vector<ConjectureRow> rows;
  const std::size_t arity = input_arity(sk.machine());
  for (std::uint64_t n = lo; n <= hi; ++n) {
    auto t = reach(sk, std::vector<Natural>(arity, Natural(n)), fuel);
    ConjectureRow row{Natural(n), t.outcome == ReachTrace::Outcome::Reached, t.steps, t.length, 0};
    if (row.reached && t.steps > 0) row.ratio = t.length / Rational(t.steps);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string conjecture_csv(const std::vector<ConjectureRow>& rows) {
  std::ostringstream os;
  os << "n,outcome,T,LenC,ratio\n";
  for (const auto& r : rows) {
    os << r.n << ',' << (r.reached ? "reached" : "diverged") << ',';
    if (r.reached)
      os << r.steps << ',' << to_string(r.length) << ',' << (r.steps ? to_string(r.ratio) : "nan");
    else
      os << ">" << r.steps << ",inf,nan";
    os << '\n';
  }
  return os.str();
}

std::string format_inputs(const std::vector<Natural>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + xs[i].str();
  return out;
}

std::string trace_csv_header() { return "n,outcome,steps,length\n"; }

std::string trace_csv_row(const ReachTrace& t) {
  std::ostringstream os;
  os << format_inputs(t.input) << ',';
  if (t.outcome == ReachTrace::Outcome::Reached)
    os << "reached(" << format_inputs(t.output) << ")," << t.steps << ',' << to_string(t.length);
  else
    os << "diverged," << t.steps << ",inf";
  os << '\n';
  return os.str();
}

std::string trace_log(const BordismSkeleton& sk, const ReachTrace& t) {
  std::ostringstream os;
  const auto& g = sk.graph();
  os << "input " << format_inputs(t.input) << '\n';
  for (std::size_t k = 0; k < t.path.size(); ++k) {
    const auto& e = g.edges[sk.tubes()[t.path[k].tube].edge];
    os << k << ' ' << g.vertices[e.from] << " -> " << g.vertices[e.to] << " [" << g.label(e)
       << "] at " << format_point(t.path[k].point) << '\n';
  }
  if (t.outcome == ReachTrace::Outcome::Reached)
    os << "reached " << g.vertices[t.final_disc] << " output " << format_inputs(t.output)
       << " steps " << t.steps << " length " << to_string(t.length) << '\n';
  else
    os << "diverged after " << t.steps << " steps on disc " << g.vertices[t.final_disc] << '\n';
  return os.str();
}

}  // namespace tkft
