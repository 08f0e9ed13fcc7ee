#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tkft/sequence.hpp"
#include "tkft/tm.hpp"

namespace tkft {

// Window words are stored as integers whose most significant of r bits is
// the digit at position 0.
using Window = std::uint64_t;

inline constexpr int kMaxWindow = 24;

// Moore's generalized shift (r, G, F): read w = t[0, r), write G(w) there,
// then relabel by F(w).
class GeneralizedShift {
 public:
  GeneralizedShift(int r, std::vector<Window> g, std::vector<std::int64_t> f);

  // The shift with G = id and F = 0 on every window of length r.
  static GeneralizedShift identity(int r);

  int r() const { return r_; }
  std::size_t size() const { return g_.size(); }
  Window G(Window w) const { return g_.at(w); }
  std::int64_t F(Window w) const { return f_.at(w); }

  friend bool operator==(const GeneralizedShift&, const GeneralizedShift&) = default;

 private:
  int r_;
  std::vector<Window> g_;
  std::vector<std::int64_t> f_;
};

BiWord apply(const GeneralizedShift& s, const BiWord& t);

// Binary codes for the states and symbols of one machine. The blank must
// have the all-zero symbol code and no state may have the all-zero code.
struct Encoding {
  int state_width = 0;
  int symbol_width = 0;
  std::vector<Window> state_codes;
  std::vector<Window> symbol_codes;

  // State i gets i+1 in bit_width(|Q|) bits; symbol i gets i in
  // max(1, bit_width(|A|-1)) bits.
  static Encoding standard(const TuringMachine& m);

  // Throws ConstructionError when the codes do not fit the machine.
  void validate(const TuringMachine& m) const;

  // Bits per shift window: t_{-1} code, state code, t_0 code.
  int window() const { return 2 * symbol_width + state_width; }
};

// Layout of phi*: the code of t_{-1} at [0, w_A), the state code at
// [w_A, w_A + w_Q), and t_j (j >= 0) at w_A + w_Q + j*w_A; t_{-j} for
// j >= 2 sits at [-(j-1)*w_A, -(j-2)*w_A).
BiWord encode_config(const TuringMachine& m, const Encoding& enc, const Configuration& c);
Configuration decode_config(const TuringMachine& m, const Encoding& enc, const BiWord& t);

GeneralizedShift compile_tm(const TuringMachine& m, const Encoding& enc);
inline GeneralizedShift compile_tm(const TuringMachine& m) {
  return compile_tm(m, Encoding::standard(m));
}

// The set of sequences with t[0, |u|) = u and t_{-1}, ..., t_{-|v|} = v.
struct Cylinder {
  std::vector<std::uint8_t> u;
  std::vector<std::uint8_t> v;

  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

bool intersects(const Cylinder& a, const Cylinder& b);
std::string format_cylinder(const Cylinder& c);  // "(u;v)"

// Some pair of indices whose cylinders intersect, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_overlap(std::span<const Cylinder> cs);

// One cylinder-to-cylinder correspondence of Lambda_S: on `source`, the
// shift rewrites the window and relabels by `shift`, landing exactly on
// `target`. Windows with F(w) > r or F(w) < 0 are split into several pieces
// so every piece acts affinely on the free digits.
struct ShiftPiece {
  Window window;
  Cylinder source;
  Cylinder target;
  std::int64_t shift;
};

std::vector<ShiftPiece> pieces(const GeneralizedShift& s);

struct BijectivityReport {
  bool bijective = true;
  std::optional<std::pair<Window, Window>> collision;

  std::string describe(int r) const;
};

// Lambda_S maps every piece measure-preservingly, and the sources tile B*,
// so it is a bijection exactly when the target cylinders are pairwise
// disjoint.
BijectivityReport is_bijective(const GeneralizedShift& s);

// The inverse of a bijective shift, built by inverting the piece
// correspondence. Throws Refused when the shift is not bijective.
class InverseShift {
 public:
  explicit InverseShift(const GeneralizedShift& s);
  BiWord operator()(const BiWord& t) const;

 private:
  int r_;
  std::vector<ShiftPiece> pieces_;
};

std::string format_window(Window w, int r);
Window parse_window(const std::string& bits);

// `r: N` followed by one `w -> G(w) F(w)` line per window.
std::string format_shift(const GeneralizedShift& s);
GeneralizedShift parse_shift(const std::string& text);
nlohmann::json shift_to_json(const GeneralizedShift& s);
GeneralizedShift shift_from_json(const nlohmann::json& j);
GeneralizedShift parse_shift_any(const std::string& text);

}  // namespace tkft
