#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tkft {

// A two-sided sequence over a cell type whose zero value is the blank, with
// finitely many non-blank cells. Stored canonically as the window between the
// first and last non-blank cell plus the index of the first one; the empty
// sequence has `lo() == 0` and no cells. Equality is canonical-form equality.
template <typename Cell>
class FiniteSupport {
 public:
  FiniteSupport() = default;

  // Builds a sequence whose cell at index `lo + i` is `cells[i]`.
  FiniteSupport(std::int64_t lo, std::vector<Cell> cells)
      : lo_(lo), cells_(std::move(cells)) {
    trim();
  }

  Cell get(std::int64_t n) const {
    if (n < lo_ || n >= hi()) return Cell{};
    return cells_[static_cast<std::size_t>(n - lo_)];
  }

  void set(std::int64_t n, Cell c) {
    if (c == Cell{}) {
      if (n < lo_ || n >= hi()) return;
      cells_[static_cast<std::size_t>(n - lo_)] = c;
      trim();
      return;
    }
    if (cells_.empty()) {
      lo_ = n;
      cells_.push_back(c);
      return;
    }
    if (n < lo_) {
      cells_.insert(cells_.begin(), static_cast<std::size_t>(lo_ - n), Cell{});
      lo_ = n;
    } else if (n >= hi()) {
      cells_.resize(static_cast<std::size_t>(n - lo_ + 1), Cell{});
    }
    cells_[static_cast<std::size_t>(n - lo_)] = c;
  }

  // Relabels in place: the new sequence t' satisfies t'_n = t_{n+s}.
  void relabel(std::int64_t s) {
    if (!cells_.empty()) lo_ -= s;
  }

  bool empty() const { return cells_.empty(); }
  // First index of the support (0 when empty).
  std::int64_t lo() const { return lo_; }
  // One past the last index of the support (0 when empty).
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(cells_.size()); }
  std::span<const Cell> cells() const { return cells_; }

  std::size_t count_nonblank() const {
    return static_cast<std::size_t>(std::count_if(
        cells_.begin(), cells_.end(), [](Cell c) { return c != Cell{}; }));
  }

  friend bool operator==(const FiniteSupport&, const FiniteSupport&) = default;

 private:
  void trim() {
    auto first = std::find_if(cells_.begin(), cells_.end(),
                              [](Cell c) { return c != Cell{}; });
    if (first == cells_.end()) {
      cells_.clear();
      lo_ = 0;
      return;
    }
    auto last = std::find_if(cells_.rbegin(), cells_.rend(),
                             [](Cell c) { return c != Cell{}; });
    cells_.erase(last.base(), cells_.end());
    lo_ += first - cells_.begin();
    cells_.erase(cells_.begin(), first);
  }

  std::int64_t lo_ = 0;
  std::vector<Cell> cells_;
};

// Index into a machine's alphabet; 0 is always the blank.
using Symbol = std::uint16_t;
using Tape = FiniteSupport<Symbol>;

// A compactly supported two-sided binary sequence (an element of B*).
using BiWord = FiniteSupport<std::uint8_t>;

// Literal syntax `...0110|1011...`: digits left of `|` end at index -1,
// digits right of it start at index 0. Leading/trailing "..." and
// whitespace are optional.
BiWord parse_biword(const std::string& text);
std::string format_biword(const BiWord& w);

// Reads `len` bits starting at `start` as an unsigned integer, first bit
// most significant.
inline std::uint64_t read_bits(const BiWord& w, std::int64_t start, int len) {
  std::uint64_t v = 0;
  for (int i = 0; i < len; ++i) v = (v << 1) | w.get(start + i);
  return v;
}

inline void write_bits(BiWord& w, std::int64_t start, int len, std::uint64_t v) {
  for (int i = 0; i < len; ++i)
    w.set(start + i, static_cast<std::uint8_t>((v >> (len - 1 - i)) & 1U));
}

}  // namespace tkft
