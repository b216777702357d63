#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wmix/kernels/quad_max.hpp"
#include "wmix/rational.hpp"

namespace wmix {

enum class ModelKind { inner_product, continuous_function, operator_orbit };

/// A norm-one-or-less element of the dual, in one of the two concrete forms
/// the models support: a combination of sequence elements (inner-product
/// models pair through the Gram) or a signed point evaluation (continuous
/// model).
struct Functional {
  enum class Kind { combination, dirac };
  Kind kind = Kind::combination;
  std::vector<std::int64_t> indices;  // combination support
  std::vector<double> coeffs;
  double t = 0.0;      // dirac point in [0, 1]
  double sign = 1.0;   // dirac sign, |sign| = 1

  static Functional combination(std::vector<std::int64_t> idx, std::vector<double> c);
  static Functional dirac(double t, double sign = 1.0);
};

/// Read-only oracle surface shared by every sequence model.
class SequenceModel {
 public:
  virtual ~SequenceModel() = default;
  virtual ModelKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual std::int64_t horizon() const = 0;
  virtual double bound() const = 0;  // sup over k <= horizon of ||x_k||
  /// <x_j, x_k>; inner-product and orbit models only.
  virtual double gram(std::int64_t j, std::int64_t k) const;
  /// f_k(t); continuous model only.
  virtual double eval(std::int64_t k, double t) const;
  /// Points where piecewise-linear combinations attain their extrema.
  virtual const std::vector<double>& breakpoints() const;
  virtual bool nonnegative() const { return false; }
};

/// Value handle for a sequence model; cheap to copy, immutable.
class VectorSequence {
 public:
  VectorSequence() = default;
  explicit VectorSequence(std::shared_ptr<const SequenceModel> model)
      : model_(std::move(model)) {}

  const SequenceModel& model() const { return *model_; }
  ModelKind kind() const { return model_->kind(); }
  std::int64_t horizon() const { return model_->horizon(); }
  double bound() const { return model_->bound(); }

  double gram(std::int64_t j, std::int64_t k) const;
  double norm(std::int64_t k) const;
  double pairing(const Functional& f, std::int64_t k) const;
  /// || sum_i weights[i] x_{indices[i]} ||, exact for both model families.
  double combo_norm(std::span<const double> weights,
                    std::span<const std::int64_t> indices) const;
  /// ||f||_* for the concrete representations (combination or dirac).
  double dual_norm(const Functional& f) const;

  kernels::GramSection gram_section(std::int64_t lo, std::int64_t hi) const;
  kernels::GramSection gram_section(std::span<const std::int64_t> indices) const;

 private:
  std::shared_ptr<const SequenceModel> model_;
  void require_inner_product(const char* who) const;
};

/// Block layout shared by Examples 3.1/3.2: 1 = n_1 < n_2 < ... with the
/// exact ratio condition 2(n_j - 1) <= n_{j+1} - 1, and for the continuous
/// model a strictly decreasing knot ladder 1 > t_1 > t_2 > ... > 0.
struct BlockSchedule {
  std::vector<std::int64_t> block_starts;
  std::vector<double> knots;  // one more knot than the number of blocks used

  /// n_1 = 1, n_2 = 2, n_{j+1} = 2 n_j - 1 and t_j = 1/(j+1), extended to
  /// cover [1, horizon].
  static BlockSchedule standard(std::int64_t horizon);
  void validate(bool need_knots) const;
  std::int64_t block_of(std::int64_t k) const;  // 1-based block index
  std::int64_t blocks_within(std::int64_t horizon) const;
};

/// Exponent ladder for the monomial model; strictly increasing positive
/// rationals.
struct MonomialSchedule {
  std::vector<BigRational> exponents;
  void validate() const;
  /// The four-case rule: for k = 1 mod 4 the exponents are
  /// k, k + 1/(4(k+2)), k+1, k+1+1/2.
  static MonomialSchedule example_3_3(std::int64_t horizon);
};

VectorSequence make_example_3_1(const BlockSchedule& schedule, std::int64_t horizon);
VectorSequence make_example_3_1(std::int64_t horizon);
VectorSequence make_example_3_2(const BlockSchedule& schedule, std::int64_t horizon);
VectorSequence make_example_3_2(std::int64_t horizon);
VectorSequence make_example_3_3(std::int64_t horizon);
VectorSequence make_example_6_2(std::int64_t horizon);
VectorSequence make_operator_orbit(const std::vector<std::vector<double>>& u,
                                   const std::vector<double>& x, std::int64_t horizon);
VectorSequence make_orthonormal(std::int64_t horizon);
VectorSequence make_gram_explicit(kernels::GramSection gram);
VectorSequence make_zero_sequence(std::int64_t horizon);
VectorSequence make_constant_unit(std::int64_t horizon);

/// Extra oracles for the monomial model (exact rational arithmetic).
struct MonomialExact {
  const MonomialSchedule& schedule;
  BigRational gram(std::int64_t j, std::int64_t k) const;
  BigRational diff_norm_sq(std::int64_t j, std::int64_t k) const;  // ||x_j - x_k||^2
};
const MonomialSchedule& monomial_schedule_of(const VectorSequence& seq);

/// Extra oracles for Example 6.2: the seven-vector family V_k and the block
/// index of a sequence position.
std::vector<double> example_6_2_family_norms(const VectorSequence& seq, std::int64_t k);
std::int64_t example_6_2_block_of(std::int64_t n);  // k with x_n in V_k
double example_6_2_theta(std::int64_t k);

}  // namespace wmix
