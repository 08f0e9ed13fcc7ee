#pragma once

#include <string>

#include <json.hpp>

#include "tkft/tm.hpp"

namespace tkft {

// Line-oriented machine text:
//
//   states: q0 qh
//   initial: q0
//   halting: qh
//   alphabet: _ 1
//   blank: _
//   io: unary                      (optional; unary-tuple, tracks ...)
//   q0 1 -> q0 1 R
//   q0 _ -> qh 1 R
//
// `#` starts a comment. Throws MalformedInput / ConstructionError.
TuringMachine parse_machine(const std::string& text);
std::string format_machine(const TuringMachine& m);

nlohmann::json machine_to_json(const TuringMachine& m);
TuringMachine machine_from_json(const nlohmann::json& j);

// Accepts either form: a document starting with '{' is read as JSON.
TuringMachine parse_machine_any(const std::string& text);

std::string format_io(const IoConvention& io);
IoConvention parse_io(const std::string& text);

}  // namespace tkft
