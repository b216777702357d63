#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmix/density.hpp"
#include "wmix/index_set.hpp"

namespace wmix {

/// 0/1 word encoding a set: bit k = 1 iff k is an element.  This module
/// indexes from 0 (the other modules are 1-based); char_word/decode_word are
/// the explicit conversion boundary.
struct BinaryWord {
  std::vector<std::uint8_t> bits;  // indices 0..horizon
  std::int64_t horizon() const { return std::int64_t(bits.size()) - 1; }
  std::string to_string() const;
};

BinaryWord char_word(const FiniteIndexSet& b);
FiniteIndexSet decode_word(const BinaryWord& w);

/// bits n .. n+length-1 (the n-fold backward shift, truncated).
BinaryWord shift_window(const BinaryWord& w, std::int64_t n, std::int64_t length);

/// Window frequencies of cylinder patterns along the shift orbit.
struct EmpiricalMeasure {
  std::vector<std::pair<std::int64_t, std::int64_t>> windows;
  // pattern (as 0/1 string) -> frequency per window
  std::map<std::string, std::vector<double>> cylinder_estimates;
};

EmpiricalMeasure empirical_measure(const FiniteIndexSet& b,
                                   const std::vector<std::pair<std::int64_t, std::int64_t>>& windows,
                                   int max_cylinder_length);

/// Smallest period n_o <= horizon/2 with bit_{k+n_o} = bit_k for all feasible k.
std::optional<std::int64_t> detect_periodicity(const BinaryWord& w);

/// Finite-horizon witness of the recurring-window structure: the decoded set
/// A agrees with B shifted by n_j on [0, m_j], exactly, for every j.
struct StructureWitness {
  bool found = false;
  FiniteIndexSet a;  // decoded from the longest window (0-based)
  std::vector<std::int64_t> m_list;
  std::vector<std::int64_t> n_list;
  std::optional<std::int64_t> periodic;  // Case 2: the period n_o
  double a_density = 0.0;                // card(A ∩ [0, m_J]) / (m_J + 1)
  double b_banach_estimate = 0.0;
  std::vector<std::int64_t> recurrence_counts;  // occurrences of each chain pattern
  std::string failure_reason;                   // set when !found
  std::vector<std::int64_t> longest_chain_ns;   // best partial chain on failure
};

StructureWitness structure_search(const FiniteIndexSet& b,
                                  const std::vector<std::int64_t>& m_targets,
                                  std::int64_t min_recurrence);

/// Re-checks the witness equalities A ∩ [0, m_j] = {k <= m_j : k + n_j in B}
/// independently of the search path.
bool verify_structure_witness(const FiniteIndexSet& b, const StructureWitness& w);

struct TranslateReport {
  FiniteIndexSet i_set;  // I = A ∩ A_o
  StructureWitness witness;
  struct PerLevel {
    std::int64_t m = 0, n = 0;
    std::vector<std::int64_t> translates;  // all k with F + k ⊆ B
    std::int64_t translates_at_least_n = 0;
    bool verified = false;  // >= 2 translates >= n_j (>= 1 for the last level)
  };
  std::vector<PerLevel> levels;
  double i_density = 0.0;
  double density_floor = 0.0;  // D(A) + D*(A_o) - 1
};

/// Corollary-4.3-style composition: intersect the structure witness with a
/// full-density set and verify that each finite prefix of I has recurring
/// translates inside B.
TranslateReport positive_density_translates(const FiniteIndexSet& a_o, const FiniteIndexSet& b,
                                            const std::vector<std::int64_t>& m_targets,
                                            std::int64_t min_recurrence);

}  // namespace wmix
