#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tkft/gshift.hpp"
#include "tkft/numeric.hpp"
#include "tkft/sequence.hpp"

namespace tkft {

// A point of the square Cantor set with finite {0,2} ternary expansions.
struct CantorPoint {
  Rational x;
  Rational y;

  friend bool operator==(const CantorPoint&, const CantorPoint&) = default;
};

std::string format_point(const CantorPoint& p);

// x = sum 2 t_n 3^-(n+1) over n >= 0, y = sum 2 t_{-k} 3^-k over k >= 1.
CantorPoint kappa(const BiWord& t);
// Throws DomainGap when a coordinate is not a finite {0,2} ternary fraction.
BiWord kappa_inv(const CantorPoint& p);

// A Cantor block is the image of a cylinder: the rectangle
// [x_lo(u), x_lo(u) + 3^-|u|] x [y_lo(v), y_lo(v) + 3^-|v|].
using CantorBlock = Cylinder;

Rational x_lo(const CantorBlock& b);
Rational y_lo(const CantorBlock& b);
Rational area(const CantorBlock& b);
bool contains(const CantorBlock& b, const CantorPoint& p);

// x' = 3^a (x - x_lo(source)) + x_lo(target), y' = 3^b (y - y_lo(source)) + y_lo(target).
struct BlockPiece {
  CantorBlock source;
  CantorBlock target;
  std::int64_t a = 0;
  std::int64_t b = 0;

  Rational alpha() const { return pow3(a); }
  Rational gamma() const { return pow3(b); }
  Rational beta() const;
  Rational delta() const;
  CantorPoint map(const CantorPoint& p) const;
};

struct BlockMap {
  std::vector<BlockPiece> pieces;
};

// Throws Refused (with the colliding windows) when S is not bijective.
BlockMap gshift_to_blockmap(const GeneralizedShift& s);

// Throws DomainGap when p lies in no source block.
CantorPoint apply_blockmap(const BlockMap& f, const CantorPoint& p);

struct VolumeReport {
  struct Violation {
    std::size_t piece;
    std::string reason;
  };
  std::vector<Violation> violations;
  Rational source_area;
  Rational target_area;

  bool ok() const { return violations.empty() && source_area == target_area; }
  std::string describe() const;
};

// Checks alpha*gamma = 1 per piece, that each affine map carries its source
// rectangle onto its target rectangle, and that the area totals agree.
VolumeReport check_volume(const BlockMap& f);

struct DisjointnessReport {
  std::optional<std::pair<std::size_t, std::size_t>> sources;
  std::optional<std::pair<std::size_t, std::size_t>> targets;

  bool ok() const { return !sources && !targets; }
};

DisjointnessReport check_disjoint(const BlockMap& f);

// One piece per line: `source(u;v) -> target(u';v') scale(3^a, 3^b)`.
std::string format_blockmap(const BlockMap& f);
BlockMap parse_blockmap(const std::string& text);
nlohmann::json blockmap_to_json(const BlockMap& f);
BlockMap blockmap_from_json(const nlohmann::json& j);
BlockMap parse_blockmap_any(const std::string& text);

// Source and target blocks drawn side by side in two unit squares, one
// colour per piece.
std::string blockmap_svg(const BlockMap& f);

}  // namespace tkft
