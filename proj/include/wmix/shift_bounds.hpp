#pragma once

#include <cstdint>
#include <vector>

#include "wmix/rational.hpp"
#include "wmix/sequence.hpp"

namespace wmix {

enum class ShiftScheme { convex, zero_one };

struct ShiftSample {
  std::int64_t p = 0;
  std::vector<double> weights;  // over indices 1..p (zero entries allowed)
  std::int64_t shift = 0;
  double numerator = 0.0;    // || sum w_j x_{j+shift} ||
  double denominator = 0.0;  // || sum w_j x_j ||
  double ratio = 0.0;
};

/// Sampled certification of the domination constant c: the reported estimate
/// is a certified lower bound on the true constant; analytic upper bounds,
/// where a model has one, live with the model's tests.
struct ShiftBoundReport {
  ShiftScheme scheme = ShiftScheme::convex;
  double constant_estimate = 0.0;  // max ratio over recorded samples
  ShiftSample worst_case;
  std::int64_t samples_evaluated = 0;
  std::int64_t near_singular = 0;  // denominators below 1e-12, kept out of the max
  std::uint64_t seed = 0;
};

/// Ratios || sum_j w_j x_{j+k} || / || sum_j w_j x_j || over `weight_samples`
/// sampled weight vectors (Dirichlet-uniform for convex, stratified random
/// subsets for zero_one; p sampled uniformly in [1, p_max]) and every shift
/// k in [1, shift_max].
ShiftBoundReport shift_bound_scan(const VectorSequence& seq, ShiftScheme scheme,
                                  std::int64_t p_max, std::int64_t shift_max,
                                  std::int64_t weight_samples, std::uint64_t seed);

/// Re-evaluates a recorded sample against the sequence (replay check).
ShiftSample replay_shift_sample(const VectorSequence& seq, const ShiftSample& sample);

struct ConvexUnboundednessWitness {
  std::int64_t k = 0;
  double numerator = 0.0;    // || 2 u_{k+1} + 2 w_{k+1} || = 2 sqrt(2)
  double denominator = 0.0;  // || 2 u_k - 2 v_k || < 2/(k+3)
  double ratio = 0.0;        // > sqrt(2) (k+3)
};

/// Example 6.2's witness family against convex shift-boundedness: weights
/// (lambda_{3k+1}, lambda_{3k+2}) = (1, 2), shift 3, even k.
ConvexUnboundednessWitness convex_unboundedness_witness(const VectorSequence& seq_6_2,
                                                        std::int64_t k_even);

struct NonOrbitCertificate {
  std::int64_t k = 0;
  double lhs = 0.0;  // || f_{k+2} - f_{k+3} ||
  double rhs = 0.0;  // k || f_k - f_{k+1} ||
  bool holds_exactly = false;         // verified in exact rational arithmetic
  bool paper_bound_holds = false;     // || f_k - f_{k+1} ||^2 <= 1/(32 k^2 (k+2)^2 (2k+1))
  double implied_operator_norm = 0.0; // sqrt(k)
};

/// The growth certificates along k = 1 mod 4 showing the monomial sequence
/// is no operator orbit.
std::vector<NonOrbitCertificate> non_orbit_certificate(const VectorSequence& seq_3_3,
                                                       const std::vector<std::int64_t>& ks);

}  // namespace wmix
