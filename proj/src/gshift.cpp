#include "tkft/gshift.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

namespace {

std::vector<std::uint8_t> bits_of(Window w, int len) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>((w >> (len - 1 - i)) & 1U);
  return out;
}

bool prefix_compatible(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  const auto n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
}

bool contains(const Cylinder& c, const BiWord& t) {
  for (std::size_t i = 0; i < c.u.size(); ++i)
    if (t.get(static_cast<std::int64_t>(i)) != c.u[i]) return false;
  for (std::size_t k = 0; k < c.v.size(); ++k)
    if (t.get(-1 - static_cast<std::int64_t>(k)) != c.v[k]) return false;
  return true;
}

}  // namespace

GeneralizedShift::GeneralizedShift(int r, std::vector<Window> g, std::vector<std::int64_t> f)
    : r_(r), g_(std::move(g)), f_(std::move(f)) {
  if (r < 1 || r > kMaxWindow)
    throw ConstructionError("window length must be in 1.." + std::to_string(kMaxWindow));
  const std::size_t n = std::size_t{1} << r;
  if (g_.size() != n || f_.size() != n)
    throw ConstructionError("G and F must be given on all " + std::to_string(n) + " windows");
  for (Window b : g_)
    if (b >= n) throw ConstructionError("G(w) longer than the window");
}

GeneralizedShift GeneralizedShift::identity(int r) {
  if (r < 1 || r > kMaxWindow) throw ConstructionError("bad window length");
  std::vector<Window> g(std::size_t{1} << r);
  std::iota(g.begin(), g.end(), Window{0});
  return GeneralizedShift(r, std::move(g), std::vector<std::int64_t>(g.size(), 0));
}

BiWord apply(const GeneralizedShift& s, const BiWord& t) {
  const Window w = read_bits(t, 0, s.r());
  BiWord out = t;
  write_bits(out, 0, s.r(), s.G(w));
  out.relabel(s.F(w));
  return out;
}

Encoding Encoding::standard(const TuringMachine& m) {
  Encoding e;
  e.state_width = std::bit_width(m.num_states());
  e.symbol_width = std::max(1, static_cast<int>(std::bit_width(m.num_symbols() - 1)));
  for (std::size_t q = 0; q < m.num_states(); ++q) e.state_codes.push_back(q + 1);
  for (std::size_t a = 0; a < m.num_symbols(); ++a) e.symbol_codes.push_back(a);
  return e;
}

void Encoding::validate(const TuringMachine& m) const {
  if (state_codes.size() != m.num_states() || symbol_codes.size() != m.num_symbols())
    throw ConstructionError("encoding does not cover every state and symbol");
  if (state_width < 1 || symbol_width < 1 || window() > kMaxWindow)
    throw ConstructionError("encoding widths out of range (window at most " +
                            std::to_string(kMaxWindow) + " bits)");
  auto check = [](const std::vector<Window>& codes, int width, const char* what) {
    std::vector<Window> sorted = codes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ConstructionError(std::string("encoding collision among ") + what + " codes");
    if (!sorted.empty() && sorted.back() >> width)
      throw ConstructionError(std::string(what) + " code wider than its field");
  };
  check(state_codes, state_width, "state");
  check(symbol_codes, symbol_width, "symbol");
  if (std::find(state_codes.begin(), state_codes.end(), 0) != state_codes.end())
    throw ConstructionError("state codes must not be all-zero");
  if (symbol_codes[0] != 0) throw ConstructionError("the blank must have the all-zero code");
}

namespace {

std::int64_t symbol_start(const Encoding& enc, std::int64_t j) {
  if (j >= 0) return enc.symbol_width + enc.state_width + j * enc.symbol_width;
  return (j + 1) * enc.symbol_width;
}

}  // namespace

BiWord encode_config(const TuringMachine& m, const Encoding& enc, const Configuration& c) {
  enc.validate(m);
  if (c.state >= m.num_states()) throw MalformedInput("configuration state out of range");
  BiWord w;
  write_bits(w, enc.symbol_width, enc.state_width, enc.state_codes[c.state]);
  const auto cells = c.tape.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] >= m.num_symbols()) throw MalformedInput("tape symbol outside the alphabet");
    const std::int64_t j = c.tape.lo() + static_cast<std::int64_t>(i);
    write_bits(w, symbol_start(enc, j), enc.symbol_width, enc.symbol_codes[cells[i]]);
  }
  return w;
}

Configuration decode_config(const TuringMachine& m, const Encoding& enc, const BiWord& t) {
  enc.validate(m);
  const Window qc = read_bits(t, enc.symbol_width, enc.state_width);
  auto q = std::find(enc.state_codes.begin(), enc.state_codes.end(), qc);
  if (q == enc.state_codes.end())
    throw DecodeError("no state has code " + format_window(qc, enc.state_width));
  Configuration c{static_cast<StateId>(q - enc.state_codes.begin()), {}};
  auto read_symbol = [&](std::int64_t j) {
    const Window code = read_bits(t, symbol_start(enc, j), enc.symbol_width);
    auto a = std::find(enc.symbol_codes.begin(), enc.symbol_codes.end(), code);
    if (a == enc.symbol_codes.end())
      throw DecodeError("cell " + std::to_string(j) + " holds unused symbol code " +
                        format_window(code, enc.symbol_width));
    c.tape.set(j, static_cast<Symbol>(a - enc.symbol_codes.begin()));
  };
  for (std::int64_t j = 0; symbol_start(enc, j) < t.hi(); ++j) read_symbol(j);
  for (std::int64_t j = -1; symbol_start(enc, j) + enc.symbol_width > t.lo(); --j) read_symbol(j);
  return c;
}

GeneralizedShift compile_tm(const TuringMachine& m, const Encoding& enc) {
  enc.validate(m);
  const int wa = enc.symbol_width, wq = enc.state_width, r = enc.window();
  std::vector<int> state_of(std::size_t{1} << wq, -1), symbol_of(std::size_t{1} << wa, -1);
  for (std::size_t q = 0; q < m.num_states(); ++q) state_of[enc.state_codes[q]] = static_cast<int>(q);
  for (std::size_t a = 0; a < m.num_symbols(); ++a)
    symbol_of[enc.symbol_codes[a]] = static_cast<int>(a);

  const std::size_t n = std::size_t{1} << r;
  std::vector<Window> g(n);
  std::vector<std::int64_t> f(n, 0);
  const Window mask_q = (Window{1} << wq) - 1, mask_a = (Window{1} << wa) - 1;
  for (Window w = 0; w < n; ++w) {
    g[w] = w;
    const Window x = w >> (wq + wa);
    const int q = state_of[(w >> wa) & mask_q];
    const int a = symbol_of[w & mask_a];
    if (q < 0 || a < 0 || m.is_halting(static_cast<StateId>(q))) continue;
    const Transition& t = *m.delta(static_cast<StateId>(q), static_cast<Symbol>(a));
    const Window qc = enc.state_codes[t.target], ac = enc.symbol_codes[t.write];
    if (t.shift > 0) {
      g[w] = (x << (wa + wq)) | (ac << wq) | qc;
      f[w] = wa;
    } else {
      g[w] = (qc << (2 * wa)) | (x << wa) | ac;
      f[w] = -wa;
    }
  }
  return GeneralizedShift(r, std::move(g), std::move(f));
}

bool intersects(const Cylinder& a, const Cylinder& b) {
  return prefix_compatible(a.u, b.u) && prefix_compatible(a.v, b.v);
}

std::string format_cylinder(const Cylinder& c) {
  std::string out = "(";
  for (auto d : c.u) out.push_back(d ? '1' : '0');
  out.push_back(';');
  for (auto d : c.v) out.push_back(d ? '1' : '0');
  out.push_back(')');
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_overlap(std::span<const Cylinder> cs) {
  // In lexicographic order of u, the cylinders whose u is a prefix of the
  // current one form a stack; only those can meet it.
  std::vector<std::size_t> order(cs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cs[a].u < cs[b].u; });
  std::vector<std::size_t> stack;
  for (std::size_t i : order) {
    while (!stack.empty() && !prefix_compatible(cs[stack.back()].u, cs[i].u)) stack.pop_back();
    for (std::size_t j : stack)
      if (prefix_compatible(cs[j].v, cs[i].v)) return std::pair{std::min(i, j), std::max(i, j)};
    stack.push_back(i);
  }
  return std::nullopt;
}

std::vector<ShiftPiece> pieces(const GeneralizedShift& s) {
  const int r = s.r();
  std::vector<ShiftPiece> out;
  for (Window w = 0; w < s.size(); ++w) {
    const std::int64_t sh = s.F(w);
    const std::int64_t p = std::max<std::int64_t>(r, sh);
    const std::int64_t m = sh < 0 ? -sh : 0;
    if (p - r + m > 20)
      throw ConstructionError("window " + format_window(w, r) + " shifts too far to tabulate");
    const auto ext_bits = static_cast<int>(p - r), v_bits = static_cast<int>(m);
    const auto rewritten = bits_of(s.G(w), r);
    const auto original = bits_of(w, r);
    for (Window ext = 0; ext < (Window{1} << ext_bits); ++ext) {
      for (Window vext = 0; vext < (Window{1} << v_bits); ++vext) {
        ShiftPiece piece{w, {}, {}, sh};
        const auto tail = bits_of(ext, ext_bits);
        piece.source.u = original;
        piece.source.u.insert(piece.source.u.end(), tail.begin(), tail.end());
        piece.source.v = bits_of(vext, v_bits);
        auto ur = rewritten;
        ur.insert(ur.end(), tail.begin(), tail.end());
        // Fixed digits occupy [-m, p) before the relabeling and
        // [-m - sh, p - sh) after it.
        auto digit = [&](std::int64_t pos) {
          return pos < 0 ? piece.source.v[static_cast<std::size_t>(-pos - 1)]
                         : ur[static_cast<std::size_t>(pos)];
        };
        for (std::int64_t n = 0; n < p - sh; ++n) piece.target.u.push_back(digit(n + sh));
        for (std::int64_t n = -1; n >= -m - sh; --n) piece.target.v.push_back(digit(n + sh));
        out.push_back(std::move(piece));
      }
    }
  }
  return out;
}

std::string BijectivityReport::describe(int r) const {
  if (!collision) return "bijective";
  return "windows " + format_window(collision->first, r) + " and " +
         format_window(collision->second, r) + " have overlapping images";
}

BijectivityReport is_bijective(const GeneralizedShift& s) {
  const auto ps = pieces(s);
  std::vector<Cylinder> targets;
  targets.reserve(ps.size());
  for (const auto& p : ps) targets.push_back(p.target);
  BijectivityReport report;
  if (auto hit = find_overlap(targets)) {
    report.bijective = false;
    report.collision = {ps[hit->first].window, ps[hit->second].window};
  }
  return report;
}

InverseShift::InverseShift(const GeneralizedShift& s) : r_(s.r()), pieces_(pieces(s)) {
  std::vector<Cylinder> targets;
  for (const auto& p : pieces_) targets.push_back(p.target);
  if (auto hit = find_overlap(targets)) {
    BijectivityReport report{false, std::pair{pieces_[hit->first].window,
                                              pieces_[hit->second].window}};
    throw Refused("shift is not bijective", report.describe(r_));
  }
}

BiWord InverseShift::operator()(const BiWord& t) const {
  for (const auto& p : pieces_) {
    if (!contains(p.target, t)) continue;
    BiWord out = t;
    out.relabel(-p.shift);
    write_bits(out, 0, r_, p.window);
    return out;
  }
  throw DomainGap("word lies in no image cylinder: " + format_biword(t));
}

std::string format_window(Window w, int r) {
  std::string out;
  for (int i = r - 1; i >= 0; --i) out.push_back(((w >> i) & 1U) ? '1' : '0');
  return out;
}

Window parse_window(const std::string& bits) {
  if (bits.empty() || bits.size() > kMaxWindow) throw MalformedInput("bad window '" + bits + "'");
  Window w = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw MalformedInput("window digits must be 0/1: '" + bits + "'");
    w = (w << 1) | static_cast<Window>(c - '0');
  }
  return w;
}

std::string format_shift(const GeneralizedShift& s) {
  std::ostringstream os;
  os << "r: " << s.r() << '\n';
  for (Window w = 0; w < s.size(); ++w)
    os << format_window(w, s.r()) << " -> " << format_window(s.G(w), s.r()) << ' ' << s.F(w)
       << '\n';
  return os.str();
}

namespace {

GeneralizedShift from_rows(int r, const std::vector<std::tuple<std::string, std::string, std::int64_t>>& rows) {
  if (r < 1 || r > kMaxWindow) throw MalformedInput("window length must be in 1.." + std::to_string(kMaxWindow));
  const std::size_t n = std::size_t{1} << r;
  std::vector<Window> g(n);
  std::vector<std::int64_t> f(n);
  std::vector<bool> seen(n, false);
  for (const auto& [ws, gs, fv] : rows) {
    if (static_cast<int>(ws.size()) != r || static_cast<int>(gs.size()) != r)
      throw MalformedInput("window '" + ws + " -> " + gs + "' does not have length " + std::to_string(r));
    const Window w = parse_window(ws);
    if (seen[w]) throw MalformedInput("window " + ws + " listed twice");
    seen[w] = true;
    g[w] = parse_window(gs);
    f[w] = fv;
  }
  for (Window w = 0; w < n; ++w)
    if (!seen[w]) throw MalformedInput("window " + format_window(w, r) + " is missing");
  return GeneralizedShift(r, std::move(g), std::move(f));
}

}  // namespace

GeneralizedShift parse_shift(const std::string& text) {
  std::istringstream is(text);
  int r = 0;
  std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
  int line_no = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    const std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "r:") {
      if (!(ls >> r)) throw MalformedInput("line " + std::to_string(line_no) + ": bad 'r:' header");
      continue;
    }
    std::string arrow, g;
    std::int64_t f;
    if (!(ls >> arrow >> g >> f) || arrow != "->")
      throw MalformedInput("line " + std::to_string(line_no) + ": expected 'w -> G(w) F(w)'");
    rows.emplace_back(first, g, f);
  }
  if (r == 0) throw MalformedInput("shift table needs an 'r:' header");
  return from_rows(r, rows);
}

nlohmann::json shift_to_json(const GeneralizedShift& s) {
  nlohmann::json j;
  j["r"] = s.r();
  auto& rows = j["table"] = nlohmann::json::array();
  for (Window w = 0; w < s.size(); ++w)
    rows.push_back({{"w", format_window(w, s.r())}, {"G", format_window(s.G(w), s.r())}, {"F", s.F(w)}});
  return j;
}

GeneralizedShift shift_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
    for (const auto& row : j.at("table"))
      rows.emplace_back(row.at("w").get<std::string>(), row.at("G").get<std::string>(),
                        row.at("F").get<std::int64_t>());
    return from_rows(j.at("r").get<int>(), rows);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("shift JSON: ") + e.what());
  }
}

GeneralizedShift parse_shift_any(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return shift_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedInput(std::string("shift JSON: ") + e.what());
    }
  }
  return parse_shift(text);
}

}  // namespace tkft
