#include "wmix/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "wmix/kernels/scan.hpp"

namespace wmix {

std::string BinaryWord::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BinaryWord char_word(const FiniteIndexSet& b) {
  BinaryWord w;
  w.bits.assign(static_cast<std::size_t>(b.horizon() + 1), 0);
  for (std::int64_t e : b.elements()) w.bits[e] = 1;
  return w;
}

FiniteIndexSet decode_word(const BinaryWord& w) {
  std::vector<std::int64_t> e;
  for (std::size_t k = 0; k < w.bits.size(); ++k)
    if (w.bits[k]) e.push_back(std::int64_t(k));
  return FiniteIndexSet(std::move(e), w.horizon() < 1 ? 1 : w.horizon(), /*allow_zero=*/true);
}

BinaryWord shift_window(const BinaryWord& w, std::int64_t n, std::int64_t length) {
  if (n < 0 || length < 0 || n + length > std::int64_t(w.bits.size()))
    throw std::out_of_range("shift_window: range outside the word");
  BinaryWord out;
  out.bits.assign(w.bits.begin() + n, w.bits.begin() + n + length);
  return out;
}

EmpiricalMeasure empirical_measure(
    const FiniteIndexSet& b,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& windows,
    int max_cylinder_length) {
  if (max_cylinder_length < 0 || max_cylinder_length > 8)
    throw std::invalid_argument("empirical_measure: cylinder length cap is 8");
  const BinaryWord w = char_word(b);
  for (const auto& [a, bb] : windows)
    if (a < 0 || bb < a || bb + max_cylinder_length > w.horizon() + 1)
      throw std::invalid_argument("empirical_measure: window overflows the horizon");

  EmpiricalMeasure m;
  m.windows = windows;
  // Every pattern up to the cap, including the empty cylinder (frequency 1).
  std::vector<std::string> patterns = {""};
  for (int len = 1; len <= max_cylinder_length; ++len)
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      std::string p(len, '0');
      for (int i = 0; i < len; ++i)
        if (mask >> i & 1) p[i] = '1';
      patterns.push_back(p);
    }
  for (const auto& p : patterns) {
    std::vector<double>& freqs = m.cylinder_estimates[p];
    for (const auto& [a, bb] : windows) {
      std::int64_t hits = 0;
      for (std::int64_t n = a; n <= bb; ++n) {
        bool ok = true;
        for (std::size_t i = 0; i < p.size() && ok; ++i)
          ok = (w.bits[n + std::int64_t(i)] != 0) == (p[i] == '1');
        if (ok) ++hits;
      }
      freqs.push_back(double(hits) / double(bb - a + 1));
    }
  }
  return m;
}

std::optional<std::int64_t> detect_periodicity(const BinaryWord& w) {
  const std::int64_t len = std::int64_t(w.bits.size());
  if (len < 2) return std::nullopt;
  // Smallest period = len - (largest proper border), via the KMP failure table.
  std::vector<std::int64_t> pi(static_cast<std::size_t>(len), 0);
  for (std::int64_t i = 1; i < len; ++i) {
    std::int64_t j = pi[i - 1];
    while (j > 0 && w.bits[i] != w.bits[j]) j = pi[j - 1];
    if (w.bits[i] == w.bits[j]) ++j;
    pi[i] = j;
  }
  const std::int64_t period = len - pi[len - 1];
  if (period >= 1 && period <= w.horizon() / 2) return period;
  return std::nullopt;
}

namespace {

struct PatternCandidate {
  std::uint64_t code = 0;  // bits 0..len-1
  std::int64_t ones = 0;
  std::int64_t count = 0;
  std::int64_t first = 0;
};

// Distinct windows of `len` bits extending `prefix` (of plen bits), with
// occurrence counts; single pass over the word.
std::vector<PatternCandidate> enumerate_extensions(const std::vector<std::uint8_t>& bits,
                                                   std::uint64_t prefix, std::int64_t plen,
                                                   std::int64_t len) {
  std::unordered_map<std::uint64_t, PatternCandidate> seen;
  const std::int64_t last = std::int64_t(bits.size()) - len;
  const std::uint64_t pmask = plen == 0 ? 0 : ((plen >= 64 ? ~0ull : (1ull << plen) - 1));
  for (std::int64_t o = 0; o <= last; ++o) {
    std::uint64_t code = 0;
    for (std::int64_t i = 0; i < len; ++i) code |= std::uint64_t(bits[o + i]) << i;
    if (plen > 0 && (code & pmask) != prefix) continue;
    auto [it, inserted] = seen.try_emplace(code);
    if (inserted) {
      it->second.code = code;
      it->second.ones = __builtin_popcountll(code);
      it->second.first = o;
    }
    ++it->second.count;
    it->second.first = std::min(it->second.first, o);
  }
  std::vector<PatternCandidate> out;
  out.reserve(seen.size());
  for (auto& [_, c] : seen) out.push_back(c);
  // Densest pattern first (the witness chases the Banach density), then the
  // most recurrent, then the earliest occurrence.
  std::sort(out.begin(), out.end(), [](const PatternCandidate& x, const PatternCandidate& y) {
    if (x.ones != y.ones) return x.ones > y.ones;
    if (x.count != y.count) return x.count > y.count;
    if (x.first != y.first) return x.first < y.first;
    return x.code < y.code;
  });
  return out;
}

std::vector<std::uint8_t> code_to_pattern(std::uint64_t code, std::int64_t len) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) p[i] = (code >> i) & 1;
  return p;
}

}  // namespace

StructureWitness structure_search(const FiniteIndexSet& b,
                                  const std::vector<std::int64_t>& m_targets,
                                  std::int64_t min_recurrence) {
  if (m_targets.empty()) throw std::invalid_argument("structure_search: no m_targets");
  for (std::size_t j = 0; j < m_targets.size(); ++j) {
    if (m_targets[j] < 0 || (j > 0 && m_targets[j] <= m_targets[j - 1]))
      throw std::invalid_argument("structure_search: m_targets must strictly increase");
  }
  if (m_targets.back() > b.horizon() / 4)
    throw std::invalid_argument("structure_search: max m_target exceeds horizon/4");
  if (m_targets.back() + 1 > 64)
    throw std::invalid_argument("structure_search: window length capped at 64 bits");
  if (min_recurrence < 1)
    throw std::invalid_argument("structure_search: min_recurrence must be >= 1");

  const BinaryWord word = char_word(b);
  StructureWitness w;
  w.m_list = m_targets;

  // Case 2: an exactly periodic word yields the witness directly.
  if (auto period = detect_periodicity(word)) {
    w.found = true;
    w.periodic = period;
    w.a = decode_word(word);
    w.n_list.clear();
    std::int64_t j = 1;
    for (std::int64_t m : m_targets) {
      const std::int64_t nj = j * *period;
      if (m + nj > b.horizon()) break;
      w.n_list.push_back(nj);
      ++j;
    }
    w.m_list.resize(w.n_list.size());
    std::int64_t ones = 0;
    for (std::int64_t k = 0; k < *period; ++k)
      if (word.bits[k]) ++ones;
    w.a_density = double(ones) / double(*period);
    w.b_banach_estimate =
        banach_upper_density(b, std::min<std::int64_t>(*period, b.horizon()));
    return w;
  }

  // Case 1: chase a nested chain of recurring windows, densest first.
  const std::int64_t levels = std::int64_t(m_targets.size());
  std::vector<std::vector<PatternCandidate>> cands(static_cast<std::size_t>(levels));
  std::vector<std::size_t> pick(static_cast<std::size_t>(levels), 0);
  std::int64_t backtracks = 0;
  std::int64_t level = 0;
  std::int64_t best_chain = -1;
  std::vector<std::int64_t> best_ns;

  auto assign_ns = [&](std::int64_t upto) -> std::optional<std::vector<std::int64_t>> {
    // Greedy forward assignment; occurrences of deeper patterns are nested
    // inside shallower ones, so minimal feasible picks are optimal.
    std::vector<std::int64_t> ns;
    std::int64_t prev = -1;
    for (std::int64_t j = 0; j <= upto; ++j) {
      const auto pattern = code_to_pattern(cands[j][pick[j]].code, m_targets[j] + 1);
      const auto occ = kernels::find_occurrences_parallel(word.bits, pattern);
      std::int64_t chosen = -1;
      for (std::int64_t o : occ)
        if (o > prev) {
          chosen = o;
          break;
        }
      if (chosen < 0) return std::nullopt;
      ns.push_back(chosen);
      prev = chosen;
    }
    return ns;
  };

  cands[0] = enumerate_extensions(word.bits, 0, 0, m_targets[0] + 1);
  while (true) {
    // Drop candidates below the recurrence floor.
    auto& list = cands[level];
    while (pick[level] < list.size() && list[pick[level]].count < min_recurrence)
      ++pick[level];
    if (pick[level] >= list.size()) {
      // Exhausted this level; back up.
      if (level == 0 || ++backtracks > 32) break;
      pick[level] = 0;
      --level;
      ++pick[level];
      continue;
    }
    if (auto ns = assign_ns(level)) {
      if (level > best_chain) {
        best_chain = level;
        best_ns = *ns;
      }
      if (level + 1 == levels) {
        // Complete chain.
        w.found = true;
        w.n_list = *ns;
        const auto final_pattern =
            code_to_pattern(cands[level][pick[level]].code, m_targets[level] + 1);
        BinaryWord aw;
        aw.bits = final_pattern;
        w.a = decode_word(aw);
        for (std::int64_t j = 0; j < levels; ++j)
          w.recurrence_counts.push_back(cands[j][pick[j]].count);
        w.a_density = double(cands[level][pick[level]].ones) / double(m_targets[level] + 1);
        w.b_banach_estimate = banach_upper_density(
            b, std::min<std::int64_t>(m_targets[level] + 1, b.horizon()));
        return w;
      }
      // Descend: extensions of the current pattern.
      cands[level + 1] = enumerate_extensions(word.bits, cands[level][pick[level]].code,
                                              m_targets[level] + 1, m_targets[level + 1] + 1);
      ++level;
      pick[level] = 0;
      continue;
    }
    // No increasing occurrence assignment; try the next candidate here.
    ++pick[level];
    if (++backtracks > 32) break;
  }

  w.found = false;
  w.failure_reason = "search exhausted candidates (backtracks=" +
                     std::to_string(backtracks) + ")";
  w.longest_chain_ns = best_ns;
  return w;
}

bool verify_structure_witness(const FiniteIndexSet& b, const StructureWitness& w) {
  if (!w.found) return false;
  for (std::size_t j = 0; j < w.n_list.size(); ++j) {
    const std::int64_t m = w.m_list[j], n = w.n_list[j];
    if (m + n > b.horizon()) return false;
    for (std::int64_t k = 0; k <= m; ++k)
      if (w.a.contains(k) != b.contains(k + n)) return false;
  }
  return true;
}

TranslateReport positive_density_translates(const FiniteIndexSet& a_o,
                                            const FiniteIndexSet& b,
                                            const std::vector<std::int64_t>& m_targets,
                                            std::int64_t min_recurrence) {
  TranslateReport rep;
  rep.witness = structure_search(b, m_targets, min_recurrence);
  if (!rep.witness.found)
    throw std::runtime_error("positive_density_translates: structure search failed: " +
                             rep.witness.failure_reason);

  const std::int64_t span = rep.witness.periodic
                                ? std::min(a_o.horizon(), b.horizon())
                                : rep.witness.m_list.back();
  std::vector<std::int64_t> i_elems;
  for (std::int64_t k = 0; k <= span; ++k)
    if (rep.witness.a.contains(k) && a_o.contains(k)) i_elems.push_back(k);
  rep.i_set = FiniteIndexSet(i_elems, std::max<std::int64_t>(1, span), /*allow_zero=*/true);

  for (std::size_t j = 0; j < rep.witness.n_list.size(); ++j) {
    TranslateReport::PerLevel lvl;
    lvl.m = rep.witness.m_list[j];
    lvl.n = rep.witness.n_list[j];
    std::vector<std::int64_t> f;
    for (std::int64_t k : i_elems)
      if (k <= lvl.m) f.push_back(k);
    const FiniteIndexSet f_set(f, std::max<std::int64_t>(1, lvl.m), /*allow_zero=*/true);
    lvl.translates = translate_check(f_set, b);
    for (std::int64_t k : lvl.translates)
      if (k >= lvl.n) ++lvl.translates_at_least_n;
    const bool last = j + 1 == rep.witness.n_list.size();
    lvl.verified = lvl.translates_at_least_n >= (last ? 1 : 2);
    rep.levels.push_back(std::move(lvl));
  }

  const double a_dens = double(rep.witness.a.count_window(0, span)) / double(span + 1);
  const double ao_dens = double(a_o.count_window(0, span)) / double(span + 1);
  rep.i_density = double(rep.i_set.size()) / double(span + 1);
  rep.density_floor = a_dens + ao_dens - 1.0;
  return rep;
}

}  // namespace wmix
