#include "tkft/sequence.hpp"

#include "tkft/error.hpp"

namespace tkft {

BiWord parse_biword(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '.') s.push_back(c);
  const auto bar = s.find('|');
  if (bar == std::string::npos || s.find('|', bar + 1) != std::string::npos)
    throw MalformedInput("word literal needs exactly one '|': " + text);
  BiWord w;
  auto put = [&](char c, std::int64_t n) {
    if (c != '0' && c != '1') throw MalformedInput("word literal digit must be 0 or 1: " + text);
    if (c == '1') w.set(n, 1);
  };
  const std::string left = s.substr(0, bar);
  const std::string right = s.substr(bar + 1);
  for (std::size_t i = 0; i < left.size(); ++i)
    put(left[i], -static_cast<std::int64_t>(left.size() - i));
  for (std::size_t i = 0; i < right.size(); ++i) put(right[i], static_cast<std::int64_t>(i));
  return w;
}

std::string format_biword(const BiWord& w) {
  std::string out = "...0";
  for (std::int64_t n = std::min<std::int64_t>(w.lo(), 0); n < 0; ++n)
    out.push_back(w.get(n) ? '1' : '0');
  out.push_back('|');
  for (std::int64_t n = 0; n < std::max<std::int64_t>(w.hi(), 1); ++n)
    out.push_back(w.get(n) ? '1' : '0');
  out += "0...";
  return out;
}

}  // namespace tkft
