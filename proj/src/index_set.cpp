#include "wmix/index_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace wmix {

FiniteIndexSet::FiniteIndexSet(std::vector<std::int64_t> elements, std::int64_t horizon,
                               bool allow_zero)
    : elements_(std::move(elements)), horizon_(horizon), allow_zero_(allow_zero) {
  if (horizon_ < 1) throw std::invalid_argument("FiniteIndexSet: horizon must be >= 1");
  const std::int64_t lo = allow_zero_ ? 0 : 1;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < lo || elements_[i] > horizon_)
      throw std::invalid_argument("FiniteIndexSet: element out of [" + std::to_string(lo) +
                                  ", horizon]");
    if (i > 0 && elements_[i] <= elements_[i - 1])
      throw std::invalid_argument("FiniteIndexSet: elements must be strictly increasing");
  }
  build_index();
}

void FiniteIndexSet::build_index() {
  if (horizon_ > kBitmapLimit) return;
  bitmap_.assign(static_cast<std::size_t>(horizon_ / 64 + 1), 0);
  prefix_.assign(static_cast<std::size_t>(horizon_ + 1), 0);
  for (std::int64_t e : elements_) bitmap_[e >> 6] |= std::uint64_t(1) << (e & 63);
  std::int32_t running = 0;
  for (std::int64_t i = 0; i <= horizon_; ++i) {
    if (i > 0 && (bitmap_[i >> 6] >> (i & 63) & 1)) ++running;
    prefix_[i] = running;
  }
  // prefix_[i] counts elements in [1, i]; a 0 element is handled separately.
}

FiniteIndexSet FiniteIndexSet::multiples(std::int64_t p, std::int64_t horizon) {
  if (p < 1) throw std::invalid_argument("multiples: p must be >= 1");
  std::vector<std::int64_t> e;
  for (std::int64_t v = p; v <= horizon; v += p) e.push_back(v);
  return FiniteIndexSet(std::move(e), horizon);
}

FiniteIndexSet FiniteIndexSet::blocks(const std::vector<std::int64_t>& starts,
                                      const std::vector<std::int64_t>& lengths,
                                      std::int64_t horizon, bool allow_zero) {
  if (starts.size() != lengths.size())
    throw std::invalid_argument("blocks: starts/lengths size mismatch");
  std::vector<std::int64_t> e;
  const std::int64_t lo = allow_zero ? 0 : 1;
  for (std::size_t i = 0; i < starts.size(); ++i)
    for (std::int64_t v = std::max(lo, starts[i]);
         v < starts[i] + lengths[i] && v <= horizon; ++v)
      e.push_back(v);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return FiniteIndexSet(std::move(e), horizon, allow_zero);
}

FiniteIndexSet FiniteIndexSet::factorial_blocks(int jmax, std::int64_t horizon) {
  std::vector<std::int64_t> starts, lengths;
  std::int64_t fact = 1;
  for (int j = 1; j <= jmax; ++j) {
    fact *= j;
    if (fact > horizon) break;
    starts.push_back(fact);
    lengths.push_back(j + 1);
  }
  return blocks(starts, lengths, horizon);
}

FiniteIndexSet FiniteIndexSet::squares(std::int64_t horizon) {
  std::vector<std::int64_t> e;
  for (std::int64_t r = 1; r * r <= horizon; ++r) e.push_back(r * r);
  return FiniteIndexSet(std::move(e), horizon);
}

FiniteIndexSet FiniteIndexSet::full_range(std::int64_t horizon) {
  std::vector<std::int64_t> e(static_cast<std::size_t>(horizon));
  for (std::int64_t i = 0; i < horizon; ++i) e[i] = i + 1;
  return FiniteIndexSet(std::move(e), horizon);
}

bool FiniteIndexSet::contains(std::int64_t k) const {
  if (k < (allow_zero_ ? 0 : 1) || k > horizon_) return false;
  if (!bitmap_.empty()) return bitmap_[k >> 6] >> (k & 63) & 1;
  return std::binary_search(elements_.begin(), elements_.end(), k);
}

std::int64_t FiniteIndexSet::count_prefix(std::int64_t n) const {
  if (n < 1) return 0;
  n = std::min(n, horizon_);
  if (!prefix_.empty()) return prefix_[n];
  return std::upper_bound(elements_.begin(), elements_.end(), n) -
         std::lower_bound(elements_.begin(), elements_.end(), std::int64_t(1));
}

std::int64_t FiniteIndexSet::count_window(std::int64_t a, std::int64_t b) const {
  if (b < a) return 0;
  std::int64_t cnt = count_prefix(b) - count_prefix(a - 1);
  if (a <= 0 && contains(0)) ++cnt;
  return cnt;
}

FiniteIndexSet FiniteIndexSet::intersect(const FiniteIndexSet& other) const {
  std::vector<std::int64_t> e;
  std::set_intersection(elements_.begin(), elements_.end(), other.elements_.begin(),
                        other.elements_.end(), std::back_inserter(e));
  return FiniteIndexSet(std::move(e), std::min(horizon_, other.horizon_),
                        allow_zero_ || other.allow_zero_);
}

FiniteIndexSet FiniteIndexSet::unite(const FiniteIndexSet& other) const {
  std::vector<std::int64_t> e;
  std::set_union(elements_.begin(), elements_.end(), other.elements_.begin(),
                 other.elements_.end(), std::back_inserter(e));
  return FiniteIndexSet(std::move(e), std::max(horizon_, other.horizon_),
                        allow_zero_ || other.allow_zero_);
}

FiniteIndexSet IndexSetSpec::build(std::int64_t horizon, bool allow_zero) const {
  if (kind == "multiples") return FiniteIndexSet::multiples(p, horizon);
  if (kind == "blocks") return FiniteIndexSet::blocks(starts, lengths, horizon, allow_zero);
  if (kind == "explicit") {
    auto e = elements;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return FiniteIndexSet(std::move(e), horizon, allow_zero);
  }
  if (kind == "factorial_blocks") return FiniteIndexSet::factorial_blocks(jmax, horizon);
  if (kind == "squares") return FiniteIndexSet::squares(horizon);
  if (kind == "all") return FiniteIndexSet::full_range(horizon);
  throw std::invalid_argument("IndexSetSpec: unknown kind '" + kind + "'");
}

}  // namespace wmix
