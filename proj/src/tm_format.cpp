#include "tkft/tm_format.hpp"

#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_words(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& w : split_words(s)) {
    try {
      out.push_back(std::stoi(w));
    } catch (const std::exception&) {
      throw MalformedInput("expected an integer list, got '" + s + "'");
    }
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

int parse_shift(const std::string& s) {
  if (s == "R" || s == "+1" || s == "1") return +1;
  if (s == "L" || s == "-1") return -1;
  throw MalformedInput("shift must be L or R, got '" + s + "'");
}

}  // namespace

std::string format_io(const IoConvention& io) {
  switch (io.kind) {
    case IoConvention::Kind::Unary:
      return "unary";
    case IoConvention::Kind::UnaryTuple:
      return io.arity > 0 ? "unary-tuple arity=" + std::to_string(io.arity) : "unary-tuple";
    case IoConvention::Kind::Tracks:
      return "tracks registers=" + std::to_string(io.registers) +
             " inputs=" + join_ints(io.inputs) + " outputs=" + join_ints(io.outputs);
  }
  return "unary";
}

IoConvention parse_io(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  IoConvention io;
  if (kind == "unary") return io;
  if (kind == "unary-tuple") {
    io.kind = IoConvention::Kind::UnaryTuple;
    for (std::string field; is >> field;) {
      if (field.rfind("arity=", 0) != 0) throw MalformedInput("bad io field '" + field + "'");
      auto v = parse_int_list(field.substr(6));
      if (v.size() != 1 || v[0] < 0) throw MalformedInput("arity takes one natural");
      io.arity = v[0];
    }
    return io;
  }
  if (kind != "tracks") throw MalformedInput("unknown io convention '" + kind + "'");
  io.kind = IoConvention::Kind::Tracks;
  for (std::string field; is >> field;) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw MalformedInput("bad io field '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "registers") {
      auto v = parse_int_list(value);
      if (v.size() != 1) throw MalformedInput("registers takes one integer");
      io.registers = v[0];
    } else if (key == "inputs") {
      io.inputs = parse_int_list(value);
    } else if (key == "outputs") {
      io.outputs = parse_int_list(value);
    } else {
      throw MalformedInput("unknown io field '" + key + "'");
    }
  }
  return io;
}

TuringMachine parse_machine(const std::string& text) {
  std::vector<std::string> states, halting, alphabet;
  std::string initial, blank;
  bool have_states = false, have_initial = false, have_halting = false, have_alphabet = false,
       have_blank = false;
  IoConvention io;
  std::vector<TuringMachine::Rule> rules;
  std::istringstream is(text);
  int line_no = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (split_words(line).empty()) continue;
    const auto arrow = line.find("->");
    const auto colon = line.find(':');
    if (arrow == std::string::npos && colon != std::string::npos) {
      std::string key = line.substr(0, colon);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      const std::string value = line.substr(colon + 1);
      auto words = split_words(value);
      if (key == "states") {
        states = words, have_states = true;
      } else if (key == "halting") {
        halting = words, have_halting = true;
      } else if (key == "alphabet") {
        alphabet = words, have_alphabet = true;
      } else if (key == "initial" || key == "blank") {
        if (words.size() != 1)
          throw MalformedInput("line " + std::to_string(line_no) + ": '" + key +
                               "' takes exactly one name");
        (key == "initial" ? initial : blank) = words[0];
        (key == "initial" ? have_initial : have_blank) = true;
      } else if (key == "io") {
        io = parse_io(value);
      } else {
        throw MalformedInput("line " + std::to_string(line_no) + ": unknown header '" + key + "'");
      }
      continue;
    }
    if (arrow == std::string::npos)
      throw MalformedInput("line " + std::to_string(line_no) + ": expected 'q a -> q' a' s'");
    auto lhs = split_words(line.substr(0, arrow));
    auto rhs = split_words(line.substr(arrow + 2));
    if (lhs.size() != 2 || rhs.size() != 3)
      throw MalformedInput("line " + std::to_string(line_no) + ": expected 'q a -> q' a' s'");
    rules.push_back({lhs[0], lhs[1], rhs[0], rhs[1], parse_shift(rhs[2])});
  }
  if (!have_states || !have_initial || !have_halting || !have_alphabet || !have_blank)
    throw MalformedInput("machine text needs states:, initial:, halting:, alphabet: and blank:");
  return TuringMachine(states, initial, halting, alphabet, blank, rules, io);
}

std::string format_machine(const TuringMachine& m) {
  std::ostringstream os;
  auto list = [&](auto&& names) {
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? " " : "") << names[i];
    os << '\n';
  };
  os << "states: ";
  list(m.state_names());
  os << "initial: " << m.state_name(m.initial()) << '\n';
  std::vector<std::string> halting;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_halting(q)) halting.push_back(m.state_name(q));
  os << "halting: ";
  list(halting);
  os << "alphabet: ";
  list(m.symbol_names());
  os << "blank: " << m.symbol_name(0) << '\n';
  os << "io: " << format_io(m.io()) << '\n';
  for (const auto& e : m.edges())
    os << m.state_name(e.from) << ' ' << m.symbol_name(e.read) << " -> "
       << m.state_name(e.to.target) << ' ' << m.symbol_name(e.to.write) << ' '
       << (e.to.shift > 0 ? 'R' : 'L') << '\n';
  return os.str();
}

nlohmann::json machine_to_json(const TuringMachine& m) {
  nlohmann::json j;
  j["states"] = std::vector<std::string>(m.state_names().begin(), m.state_names().end());
  j["initial"] = m.state_name(m.initial());
  std::vector<std::string> halting;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_halting(q)) halting.push_back(m.state_name(q));
  j["halting"] = halting;
  j["alphabet"] = std::vector<std::string>(m.symbol_names().begin(), m.symbol_names().end());
  j["blank"] = m.symbol_name(0);
  j["io"] = format_io(m.io());
  auto& ts = j["transitions"] = nlohmann::json::array();
  for (const auto& e : m.edges())
    ts.push_back({{"from", m.state_name(e.from)},
                  {"read", m.symbol_name(e.read)},
                  {"to", m.state_name(e.to.target)},
                  {"write", m.symbol_name(e.to.write)},
                  {"shift", e.to.shift > 0 ? "R" : "L"}});
  return j;
}

TuringMachine machine_from_json(const nlohmann::json& j) {
  try {
    std::vector<TuringMachine::Rule> rules;
    for (const auto& t : j.at("transitions"))
      rules.push_back({t.at("from").get<std::string>(), t.at("read").get<std::string>(),
                       t.at("to").get<std::string>(), t.at("write").get<std::string>(),
                       parse_shift(t.at("shift").get<std::string>())});
    IoConvention io;
    if (j.contains("io")) io = parse_io(j.at("io").get<std::string>());
    return TuringMachine(j.at("states").get<std::vector<std::string>>(),
                         j.at("initial").get<std::string>(),
                         j.at("halting").get<std::vector<std::string>>(),
                         j.at("alphabet").get<std::vector<std::string>>(),
                         j.at("blank").get<std::string>(), rules, io);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("machine JSON: ") + e.what());
  }
}

TuringMachine parse_machine_any(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedInput(std::string("machine JSON: ") + e.what());
    }
    return machine_from_json(j);
  }
  return parse_machine(text);
}

}  // namespace tkft
