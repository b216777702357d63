#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wmix {

/// A finite subset of the integers together with the horizon that bounds all
/// analysis.  Most modules work with 1-based sets (subsets of [1, horizon]);
/// the symbolic module also admits 0 as an element.  Elements are kept
/// strictly increasing; a bitmap is attached for horizons up to 2^26 so that
/// membership and window counts are O(1)/O(len).
class FiniteIndexSet {
 public:
  FiniteIndexSet() = default;
  FiniteIndexSet(std::vector<std::int64_t> elements, std::int64_t horizon,
                 bool allow_zero = false);

  static FiniteIndexSet empty(std::int64_t horizon) { return FiniteIndexSet({}, horizon); }
  /// {p, 2p, 3p, ...} ∩ [1, horizon]
  static FiniteIndexSet multiples(std::int64_t p, std::int64_t horizon);
  /// union of [start_i, start_i + len_i - 1], clipped to [lo, horizon]
  static FiniteIndexSet blocks(const std::vector<std::int64_t>& starts,
                               const std::vector<std::int64_t>& lengths,
                               std::int64_t horizon, bool allow_zero = false);
  /// union over j = 1..jmax of [j!, j! + j], clipped to the horizon
  static FiniteIndexSet factorial_blocks(int jmax, std::int64_t horizon);
  /// {1, 4, 9, ...} ∩ [1, horizon]
  static FiniteIndexSet squares(std::int64_t horizon);
  static FiniteIndexSet full_range(std::int64_t horizon);

  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t size() const { return static_cast<std::int64_t>(elements_.size()); }
  bool empty_set() const { return elements_.empty(); }
  bool zero_based() const { return allow_zero_; }

  bool contains(std::int64_t k) const;
  /// card(A ∩ [1, n]); n may be 0
  std::int64_t count_prefix(std::int64_t n) const;
  /// card(A ∩ [a, b]) for any a <= b (values outside the horizon count as absent)
  std::int64_t count_window(std::int64_t a, std::int64_t b) const;

  FiniteIndexSet intersect(const FiniteIndexSet& other) const;
  FiniteIndexSet unite(const FiniteIndexSet& other) const;

  bool operator==(const FiniteIndexSet& other) const {
    return horizon_ == other.horizon_ && elements_ == other.elements_;
  }

 private:
  std::vector<std::int64_t> elements_;
  std::int64_t horizon_ = 0;
  bool allow_zero_ = false;
  std::vector<std::uint64_t> bitmap_;  // present when horizon_ <= kBitmapLimit
  std::vector<std::int32_t> prefix_;   // prefix_[i] = card(A ∩ [lo, i]), same condition

  static constexpr std::int64_t kBitmapLimit = std::int64_t(1) << 26;
  void build_index();
};

/// Parsed form of the CLI set-spec JSON; see cli module for the schema.
struct IndexSetSpec {
  std::string kind;  // multiples | blocks | explicit | factorial_blocks | squares | all
  std::int64_t p = 0;
  std::vector<std::int64_t> starts, lengths, elements;
  int jmax = 0;

  FiniteIndexSet build(std::int64_t horizon, bool allow_zero = false) const;
};

}  // namespace wmix
