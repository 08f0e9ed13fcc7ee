#include "tkft/cantor.hpp"

#include <cstdio>
#include <regex>
#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

namespace {

// sum 2 d_i 3^-(i+1) over the digits of a word.
Rational ternary_value(const std::vector<std::uint8_t>& digits) {
  Natural num = 0;
  for (auto d : digits) num = num * 3 + 2 * d;
  return Rational(num) * pow3(-static_cast<std::int64_t>(digits.size()));
}

std::vector<std::uint8_t> ternary_digits(const Rational& q, const char* axis) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (q < 0 || q >= 1)
    throw DomainGap(std::string(axis) + " = " + to_string(q) + " is outside [0,1)");
  Natural den = denominator(q);
  std::size_t e = 0;
  while (den % 3 == 0) den /= 3, ++e;
  if (den != 1)
    throw DomainGap(std::string(axis) + " = " + to_string(q) + " has no finite ternary expansion");
  Natural num = numerator(q);
  std::vector<std::uint8_t> digits(e);
  for (std::size_t i = e; i-- > 0;) {
    const auto d = static_cast<int>(num % 3);
    if (d == 1)
      throw DomainGap(std::string(axis) + " = " + to_string(q) + " has a ternary digit 1");
    digits[i] = static_cast<std::uint8_t>(d / 2);
    num /= 3;
  }
  return digits;
}

std::string word(const std::vector<std::uint8_t>& w) {
  std::string out;
  for (auto d : w) out.push_back(d ? '1' : '0');
  return out;
}

std::vector<std::uint8_t> parse_word(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw MalformedInput("block words use digits 0/1: '" + s + "'");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

}  // namespace

std::string format_point(const CantorPoint& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

CantorPoint kappa(const BiWord& t) {
  std::vector<std::uint8_t> right, left;
  for (std::int64_t n = 0; n < t.hi(); ++n) right.push_back(t.get(n));
  for (std::int64_t k = 1; -k >= t.lo(); ++k) left.push_back(t.get(-k));
  return {ternary_value(right), ternary_value(left)};
}

BiWord kappa_inv(const CantorPoint& p) {
  const auto right = ternary_digits(p.x, "x");
  const auto left = ternary_digits(p.y, "y");
  BiWord t;
  for (std::size_t n = 0; n < right.size(); ++n) t.set(static_cast<std::int64_t>(n), right[n]);
  for (std::size_t k = 0; k < left.size(); ++k) t.set(-1 - static_cast<std::int64_t>(k), left[k]);
  return t;
}

Rational x_lo(const CantorBlock& b) { return ternary_value(b.u); }
Rational y_lo(const CantorBlock& b) { return ternary_value(b.v); }

Rational area(const CantorBlock& b) {
  return pow3(-static_cast<std::int64_t>(b.u.size() + b.v.size()));
}

bool contains(const CantorBlock& b, const CantorPoint& p) {
  const Rational x0 = x_lo(b), y0 = y_lo(b);
  return x0 <= p.x && p.x <= x0 + pow3(-static_cast<std::int64_t>(b.u.size())) && y0 <= p.y &&
         p.y <= y0 + pow3(-static_cast<std::int64_t>(b.v.size()));
}

Rational BlockPiece::beta() const { return x_lo(target) - alpha() * x_lo(source); }
Rational BlockPiece::delta() const { return y_lo(target) - gamma() * y_lo(source); }

CantorPoint BlockPiece::map(const CantorPoint& p) const {
  return {alpha() * (p.x - x_lo(source)) + x_lo(target),
          gamma() * (p.y - y_lo(source)) + y_lo(target)};
}

BlockMap gshift_to_blockmap(const GeneralizedShift& s) {
  const auto report = is_bijective(s);
  if (!report.bijective) throw Refused("shift is not bijective", report.describe(s.r()));
  BlockMap f;
  for (auto& p : pieces(s)) f.pieces.push_back({std::move(p.source), std::move(p.target), p.shift, -p.shift});
  return f;
}

CantorPoint apply_blockmap(const BlockMap& f, const CantorPoint& p) {
  for (const auto& piece : f.pieces)
    if (contains(piece.source, p)) return piece.map(p);
  throw DomainGap("point " + format_point(p) + " lies in no source block");
}

std::string VolumeReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << "piece " << v.piece << ": " << v.reason << '\n';
  os << "source area " << to_string(source_area) << ", target area " << to_string(target_area)
     << (source_area == target_area ? "" : " (differ)") << '\n';
  return os.str();
}

VolumeReport check_volume(const BlockMap& f) {
  VolumeReport report;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    const auto& p = f.pieces[i];
    report.source_area += area(p.source);
    report.target_area += area(p.target);
    if (p.alpha() * p.gamma() != 1)
      report.violations.push_back({i, "alpha*gamma = " + to_string(p.alpha() * p.gamma())});
    const auto su = static_cast<std::int64_t>(p.source.u.size());
    const auto sv = static_cast<std::int64_t>(p.source.v.size());
    if (su - p.a != static_cast<std::int64_t>(p.target.u.size()) ||
        sv - p.b != static_cast<std::int64_t>(p.target.v.size()))
      report.violations.push_back({i, "affine map does not carry " + format_cylinder(p.source) +
                                          " onto " + format_cylinder(p.target)});
  }
  return report;
}

DisjointnessReport check_disjoint(const BlockMap& f) {
  std::vector<Cylinder> sources, targets;
  for (const auto& p : f.pieces) {
    sources.push_back(p.source);
    targets.push_back(p.target);
  }
  return {find_overlap(sources), find_overlap(targets)};
}

std::string format_blockmap(const BlockMap& f) {
  std::ostringstream os;
  for (const auto& p : f.pieces)
    os << "source" << format_cylinder(p.source) << " -> target" << format_cylinder(p.target)
       << " scale(3^" << p.a << ", 3^" << p.b << ")\n";
  return os.str();
}

BlockMap parse_blockmap(const std::string& text) {
  static const std::regex line_re(
      R"(\s*source\(([01]*);([01]*)\)\s*->\s*target\(([01]*);([01]*)\)\s*scale\(\s*3\^(-?\d+)\s*,\s*3\^(-?\d+)\s*\)\s*)");
  BlockMap f;
  std::istringstream is(text);
  int line_no = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    const std::string line = raw.substr(0, raw.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(line, m, line_re))
      throw MalformedInput("line " + std::to_string(line_no) +
                           ": expected 'source(u;v) -> target(u';v') scale(3^a, 3^b)'");
    f.pieces.push_back({{parse_word(m[1]), parse_word(m[2])},
                        {parse_word(m[3]), parse_word(m[4])},
                        std::stoll(m[5]),
                        std::stoll(m[6])});
  }
  return f;
}

nlohmann::json blockmap_to_json(const BlockMap& f) {
  auto arr = nlohmann::json::array();
  for (const auto& p : f.pieces)
    arr.push_back({{"source", {{"u", word(p.source.u)}, {"v", word(p.source.v)}}},
                   {"target", {{"u", word(p.target.u)}, {"v", word(p.target.v)}}},
                   {"x_exponent", p.a},
                   {"y_exponent", p.b}});
  return {{"pieces", arr}};
}

BlockMap blockmap_from_json(const nlohmann::json& j) {
  try {
    BlockMap f;
    for (const auto& p : j.at("pieces")) {
      auto block = [](const nlohmann::json& b) {
        return CantorBlock{parse_word(b.at("u").get<std::string>()),
                           parse_word(b.at("v").get<std::string>())};
      };
      f.pieces.push_back({block(p.at("source")), block(p.at("target")),
                          p.at("x_exponent").get<std::int64_t>(),
                          p.at("y_exponent").get<std::int64_t>()});
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("block map JSON: ") + e.what());
  }
}

BlockMap parse_blockmap_any(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return blockmap_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedInput(std::string("block map JSON: ") + e.what());
    }
  }
  return parse_blockmap(text);
}

std::string blockmap_svg(const BlockMap& f) {
  constexpr double side = 400, margin = 20;
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n",
                3 * margin + 2 * side, 2 * margin + side + 20);
  os << buf;
  for (int panel = 0; panel < 2; ++panel) {
    const double left = margin + panel * (side + margin);
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  left, margin, side, side);
    os << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.4f\" y=\"%.4f\" font-size=\"14\">%s</text>\n",
                  left, 2 * margin + side + 10, panel == 0 ? "source" : "target");
    os << buf;
  }
  const std::size_t n = f.pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int hue = static_cast<int>(360 * i / std::max<std::size_t>(n, 1));
    for (int panel = 0; panel < 2; ++panel) {
      const auto& b = panel == 0 ? f.pieces[i].source : f.pieces[i].target;
      const double x0 = x_lo(b).convert_to<double>(), y0 = y_lo(b).convert_to<double>();
      const double w = pow3(-static_cast<std::int64_t>(b.u.size())).convert_to<double>();
      const double h = pow3(-static_cast<std::int64_t>(b.v.size())).convert_to<double>();
      const double left = margin + panel * (side + margin);
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" "
                    "fill=\"hsl(%d,70%%,55%%)\" fill-opacity=\"0.6\" stroke=\"black\" "
                    "stroke-width=\"0.3\"><title>piece %zu %s</title></rect>\n",
                    left + x0 * side, margin + (1 - y0 - h) * side, w * side, h * side, hue, i,
                    format_cylinder(b).c_str());
      os << buf;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tkft
