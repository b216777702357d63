#include "wmix/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmix {

namespace {

void check_index(std::int64_t k, std::int64_t horizon, const char* who) {
  if (k < 1 || k > horizon)
    throw std::out_of_range(std::string(who) + ": index " + std::to_string(k) +
                            " outside [1, " + std::to_string(horizon) + "]");
}

}  // namespace

Functional Functional::combination(std::vector<std::int64_t> idx, std::vector<double> c) {
  if (idx.size() != c.size())
    throw std::invalid_argument("Functional: indices/coeffs size mismatch");
  Functional f;
  f.kind = Kind::combination;
  f.indices = std::move(idx);
  f.coeffs = std::move(c);
  return f;
}

Functional Functional::dirac(double t, double sign) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("Functional: dirac point outside [0,1]");
  if (sign != 1.0 && sign != -1.0)
    throw std::invalid_argument("Functional: dirac sign must be +-1");
  Functional f;
  f.kind = Kind::dirac;
  f.t = t;
  f.sign = sign;
  return f;
}

double SequenceModel::gram(std::int64_t, std::int64_t) const {
  throw std::logic_error(name() + ": gram oracle not available for this model");
}
double SequenceModel::eval(std::int64_t, double) const {
  throw std::logic_error(name() + ": point evaluation not available for this model");
}
const std::vector<double>& SequenceModel::breakpoints() const {
  throw std::logic_error(name() + ": breakpoints not available for this model");
}

// ---------------------------------------------------------------------------
// BlockSchedule

BlockSchedule BlockSchedule::standard(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("BlockSchedule: horizon must be >= 1");
  BlockSchedule s;
  s.block_starts = {1};
  if (horizon >= 2) {
    s.block_starts.push_back(2);
    while (s.block_starts.back() <= horizon)
      s.block_starts.push_back(2 * s.block_starts.back() - 1);
  }
  for (std::size_t j = 1; j <= s.block_starts.size() + 1; ++j)
    s.knots.push_back(1.0 / double(j + 1));
  s.validate(true);
  return s;
}

void BlockSchedule::validate(bool need_knots) const {
  if (block_starts.empty() || block_starts.front() != 1)
    throw std::invalid_argument("BlockSchedule: block starts must begin with n_1 = 1");
  for (std::size_t j = 0; j + 1 < block_starts.size(); ++j) {
    if (block_starts[j + 1] <= block_starts[j])
      throw std::invalid_argument("BlockSchedule: block starts must increase");
    if (2 * (block_starts[j] - 1) > block_starts[j + 1] - 1)
      throw std::invalid_argument(
          "BlockSchedule: ratio condition violated at pair (n_" + std::to_string(j + 1) +
          ", n_" + std::to_string(j + 2) + ") = (" + std::to_string(block_starts[j]) + ", " +
          std::to_string(block_starts[j + 1]) + ")");
  }
  if (!need_knots) return;
  if (knots.size() < block_starts.size() + 1)
    throw std::invalid_argument("BlockSchedule: need one more knot than blocks");
  double prev = 1.0;
  for (double t : knots) {
    if (!(t > 0.0) || !(t < prev))
      throw std::invalid_argument("BlockSchedule: knots must satisfy 1 > t_1 > t_2 > ... > 0");
    prev = t;
  }
}

std::int64_t BlockSchedule::block_of(std::int64_t k) const {
  auto it = std::upper_bound(block_starts.begin(), block_starts.end(), k);
  return std::int64_t(it - block_starts.begin());  // 1-based
}

std::int64_t BlockSchedule::blocks_within(std::int64_t horizon) const {
  return block_of(horizon);
}

// ---------------------------------------------------------------------------
// MonomialSchedule

void MonomialSchedule::validate() const {
  if (exponents.empty()) throw std::invalid_argument("MonomialSchedule: empty");
  if (!(exponents.front() > 0))
    throw std::invalid_argument("MonomialSchedule: exponents must be positive");
  for (std::size_t i = 1; i < exponents.size(); ++i)
    if (!(exponents[i] > exponents[i - 1]))
      throw std::invalid_argument("MonomialSchedule: exponents must strictly increase");
}

MonomialSchedule MonomialSchedule::example_3_3(std::int64_t horizon) {
  if (horizon < 4) throw std::invalid_argument("example_3_3: horizon must be >= 4");
  MonomialSchedule s;
  s.exponents.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t k = 1; std::int64_t(s.exponents.size()) < horizon; k += 4) {
    s.exponents.push_back(rat(k));
    s.exponents.push_back(rat(k) + BigRational(1, 4 * (k + 2)));
    s.exponents.push_back(rat(k + 1));
    s.exponents.push_back(rat(k + 1) + BigRational(1, 2));
  }
  s.exponents.resize(static_cast<std::size_t>(horizon));
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Models

namespace {

class OrthonormalModel final : public SequenceModel {
 public:
  explicit OrthonormalModel(std::int64_t horizon) : horizon_(horizon) {
    if (horizon < 1) throw std::invalid_argument("orthonormal: horizon must be >= 1");
  }
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "orthonormal"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return 1.0; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, horizon_, "orthonormal");
    check_index(k, horizon_, "orthonormal");
    return j == k ? 1.0 : 0.0;
  }

 private:
  std::int64_t horizon_;
};

class BlockOrthonormalModel final : public SequenceModel {
 public:
  BlockOrthonormalModel(BlockSchedule schedule, std::int64_t horizon)
      : schedule_(std::move(schedule)), horizon_(horizon) {
    schedule_.validate(false);
    if (horizon < 1) throw std::invalid_argument("example_3_2: horizon must be >= 1");
  }
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "example_3_2"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return 1.0; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, horizon_, "example_3_2");
    check_index(k, horizon_, "example_3_2");
    return schedule_.block_of(j) == schedule_.block_of(k) ? 1.0 : 0.0;
  }
  const BlockSchedule& schedule() const { return schedule_; }

 private:
  BlockSchedule schedule_;
  std::int64_t horizon_;
};

class TentFunctionModel final : public SequenceModel {
 public:
  TentFunctionModel(BlockSchedule schedule, std::int64_t horizon)
      : schedule_(std::move(schedule)), horizon_(horizon) {
    schedule_.validate(true);
    if (horizon < 1) throw std::invalid_argument("example_3_1: horizon must be >= 1");
    const std::int64_t blocks = schedule_.blocks_within(horizon_);
    breakpoints_ = {0.0, 1.0};
    for (std::int64_t j = 1; j <= blocks; ++j) {
      breakpoints_.push_back(support_lo(j));
      breakpoints_.push_back(apex(j));
      breakpoints_.push_back(support_hi(j));
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                       breakpoints_.end());
  }
  ModelKind kind() const override { return ModelKind::continuous_function; }
  std::string name() const override { return "example_3_1"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return 1.0; }
  bool nonnegative() const override { return true; }
  double eval(std::int64_t k, double t) const override {
    check_index(k, horizon_, "example_3_1");
    const std::int64_t j = schedule_.block_of(k);
    const double lo = support_lo(j), hi = support_hi(j), m = apex(j);
    if (t <= lo || t >= hi) return 0.0;
    return t < m ? (t - lo) / (m - lo) : (hi - t) / (hi - m);
  }
  const std::vector<double>& breakpoints() const override { return breakpoints_; }
  const BlockSchedule& schedule() const { return schedule_; }

 private:
  BlockSchedule schedule_;
  std::int64_t horizon_;
  std::vector<double> breakpoints_;
  // supp(g_j) = [t_{j+1}, t_j], apex in the middle with value 1
  double support_lo(std::int64_t j) const { return schedule_.knots[j]; }
  double support_hi(std::int64_t j) const { return schedule_.knots[j - 1]; }
  double apex(std::int64_t j) const { return 0.5 * (support_lo(j) + support_hi(j)); }
};

class MonomialModel final : public SequenceModel {
 public:
  MonomialModel(MonomialSchedule schedule, std::int64_t horizon)
      : schedule_(std::move(schedule)), horizon_(horizon) {
    schedule_.validate();
    if (std::int64_t(schedule_.exponents.size()) < horizon)
      throw std::invalid_argument("monomial: schedule shorter than horizon");
    if (horizon > 4096)
      throw std::invalid_argument("monomial: horizon capped at 4096 (dense Gram cache)");
    cache_.assign(static_cast<std::size_t>(horizon * horizon), 0.0);
    for (std::int64_t j = 0; j < horizon; ++j)
      for (std::int64_t k = j; k < horizon; ++k) {
        const double v = to_double(
            BigRational(1) / (schedule_.exponents[j] + schedule_.exponents[k] + 1));
        cache_[j * horizon + k] = v;
        cache_[k * horizon + j] = v;
      }
    double b = 0.0;
    for (std::int64_t k = 0; k < horizon; ++k)
      b = std::max(b, std::sqrt(cache_[k * horizon + k]));
    bound_ = b;
  }
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "example_3_3"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return bound_; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, horizon_, "example_3_3");
    check_index(k, horizon_, "example_3_3");
    return cache_[(j - 1) * horizon_ + (k - 1)];
  }
  const MonomialSchedule& schedule() const { return schedule_; }

 private:
  MonomialSchedule schedule_;
  std::int64_t horizon_;
  std::vector<double> cache_;
  double bound_ = 0.0;
};

// Example 6.2 concretized: u_k, v_k span a plane at angle theta_k = 1/(k+4),
// w_k orthogonal to it, all families mutually orthogonal across k.
class Example62Model final : public SequenceModel {
 public:
  explicit Example62Model(std::int64_t horizon) : horizon_(horizon) {
    if (horizon < 6) throw std::invalid_argument("example_6_2: horizon must be >= 6");
  }
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "example_6_2"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return 2.0; }
  double gram(std::int64_t a, std::int64_t b) const override {
    check_index(a, horizon_, "example_6_2");
    check_index(b, horizon_, "example_6_2");
    const Part pa = part_of(a), pb = part_of(b);
    if (pa.family != pb.family) return 0.0;
    return pa.scale * pb.scale * base_inner(pa, pb);
  }

  struct Part {
    std::int64_t family;  // k
    int base;             // 0 = u, 1 = v, 2 = w
    double scale;
  };
  static Part part_of(std::int64_t n) {
    const std::int64_t k = (n - 1) / 3;
    const int r = int((n - 1) % 3);
    const bool even = (k % 2) == 0;
    if (r == 0) return {k, 0, 2.0};
    if (r == 1) return even ? Part{k, 1, -1.0} : Part{k, 2, 1.0};
    return even ? Part{k, 2, 1.0} : Part{k, 1, -1.0};
  }
  static double theta(std::int64_t k) { return 1.0 / double(k + 4); }

 private:
  std::int64_t horizon_;
  static double base_inner(const Part& a, const Part& b) {
    if (a.base == b.base) return 1.0;
    const int lo = std::min(a.base, b.base), hi = std::max(a.base, b.base);
    if (lo == 0 && hi == 1) return std::cos(theta(a.family));
    return 0.0;  // w is orthogonal to both u and v
  }
};

class OperatorOrbitModel final : public SequenceModel {
 public:
  OperatorOrbitModel(const std::vector<std::vector<double>>& u, const std::vector<double>& x,
                     std::int64_t horizon)
      : horizon_(horizon), dim_(std::int64_t(x.size())) {
    if (horizon < 1) throw std::invalid_argument("operator_orbit: horizon must be >= 1");
    if (dim_ < 1) throw std::invalid_argument("operator_orbit: empty vector");
    if (std::int64_t(u.size()) != dim_)
      throw std::invalid_argument("operator_orbit: dimension mismatch between U and x");
    for (const auto& row : u)
      if (std::int64_t(row.size()) != dim_)
        throw std::invalid_argument("operator_orbit: U is not square");
    orbit_.resize(static_cast<std::size_t>(horizon * dim_));
    std::vector<double> cur = x, next(static_cast<std::size_t>(dim_));
    double b = 0.0;
    for (std::int64_t k = 1; k <= horizon; ++k) {
      for (std::int64_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (std::int64_t j = 0; j < dim_; ++j) s += u[i][j] * cur[j];
        next[i] = s;
      }
      cur = next;
      double nsq = 0.0;
      for (std::int64_t i = 0; i < dim_; ++i) {
        orbit_[(k - 1) * dim_ + i] = cur[i];
        nsq += cur[i] * cur[i];
      }
      b = std::max(b, std::sqrt(nsq));
    }
    bound_ = b;
  }
  ModelKind kind() const override { return ModelKind::operator_orbit; }
  std::string name() const override { return "operator_orbit"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return bound_; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, horizon_, "operator_orbit");
    check_index(k, horizon_, "operator_orbit");
    double s = 0.0;
    for (std::int64_t i = 0; i < dim_; ++i)
      s += orbit_[(j - 1) * dim_ + i] * orbit_[(k - 1) * dim_ + i];
    return s;
  }

 private:
  std::int64_t horizon_;
  std::int64_t dim_;
  std::vector<double> orbit_;
  double bound_ = 0.0;
};

class GramExplicitModel final : public SequenceModel {
 public:
  explicit GramExplicitModel(kernels::GramSection g) : gram_(std::move(g)) {
    if (gram_.n < 1) throw std::invalid_argument("gram_explicit: empty section");
    double maxdiag = 0.0;
    for (std::int64_t i = 0; i < gram_.n; ++i) {
      maxdiag = std::max(maxdiag, std::abs(gram_.at(i, i)));
      for (std::int64_t j = 0; j < i; ++j)
        if (std::abs(gram_.at(i, j) - gram_.at(j, i)) > 1e-12)
          throw std::invalid_argument("gram_explicit: section is not symmetric");
    }
    double b = 0.0;
    for (std::int64_t i = 0; i < gram_.n; ++i) {
      if (gram_.at(i, i) < -1e-9)
        throw std::invalid_argument("gram_explicit: negative diagonal entry");
      b = std::max(b, std::sqrt(std::max(0.0, gram_.at(i, i))));
    }
    bound_ = b;
  }
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "gram_explicit"; }
  std::int64_t horizon() const override { return gram_.n; }
  double bound() const override { return bound_; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, gram_.n, "gram_explicit");
    check_index(k, gram_.n, "gram_explicit");
    return gram_.at(j - 1, k - 1);
  }

 private:
  kernels::GramSection gram_;
  double bound_ = 0.0;
};

class ZeroModel final : public SequenceModel {
 public:
  explicit ZeroModel(std::int64_t horizon) : horizon_(horizon) {}
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "zero"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return 0.0; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, horizon_, "zero");
    check_index(k, horizon_, "zero");
    return 0.0;
  }

 private:
  std::int64_t horizon_;
};

class ConstantUnitModel final : public SequenceModel {
 public:
  explicit ConstantUnitModel(std::int64_t horizon) : horizon_(horizon) {}
  ModelKind kind() const override { return ModelKind::inner_product; }
  std::string name() const override { return "constant_unit"; }
  std::int64_t horizon() const override { return horizon_; }
  double bound() const override { return 1.0; }
  double gram(std::int64_t j, std::int64_t k) const override {
    check_index(j, horizon_, "constant_unit");
    check_index(k, horizon_, "constant_unit");
    return 1.0;
  }

 private:
  std::int64_t horizon_;
};

}  // namespace

// ---------------------------------------------------------------------------
// VectorSequence oracles

void VectorSequence::require_inner_product(const char* who) const {
  if (kind() == ModelKind::continuous_function)
    throw std::logic_error(std::string(who) + ": needs an inner-product model");
}

double VectorSequence::gram(std::int64_t j, std::int64_t k) const {
  require_inner_product("gram");
  return model_->gram(j, k);
}

double VectorSequence::norm(std::int64_t k) const {
  if (kind() == ModelKind::continuous_function) {
    double m = 0.0;
    for (double t : model_->breakpoints()) m = std::max(m, std::abs(model_->eval(k, t)));
    return m;
  }
  return std::sqrt(std::max(0.0, model_->gram(k, k)));
}

double VectorSequence::pairing(const Functional& f, std::int64_t k) const {
  if (f.kind == Functional::Kind::dirac) {
    if (kind() != ModelKind::continuous_function)
      throw std::logic_error("pairing: dirac functional against a non-continuous model");
    return f.sign * model_->eval(k, f.t);
  }
  require_inner_product("pairing");
  double s = 0.0;
  for (std::size_t i = 0; i < f.indices.size(); ++i)
    s += f.coeffs[i] * model_->gram(f.indices[i], k);
  return s;
}

double VectorSequence::combo_norm(std::span<const double> weights,
                                  std::span<const std::int64_t> indices) const {
  if (weights.size() != indices.size())
    throw std::invalid_argument("combo_norm: weights/indices size mismatch");
  if (indices.empty()) return 0.0;
  for (std::int64_t k : indices) check_index(k, horizon(), "combo_norm");
  if (kind() == ModelKind::continuous_function) {
    double best = 0.0;
    for (double t : model_->breakpoints()) {
      double s = 0.0;
      for (std::size_t i = 0; i < indices.size(); ++i)
        s += weights[i] * model_->eval(indices[i], t);
      best = std::max(best, std::abs(s));
    }
    return best;
  }
  double q = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    q += weights[i] * weights[i] * model_->gram(indices[i], indices[i]);
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      q += 2.0 * weights[i] * weights[j] * model_->gram(indices[i], indices[j]);
  }
  return std::sqrt(std::max(0.0, q));
}

double VectorSequence::dual_norm(const Functional& f) const {
  if (f.kind == Functional::Kind::dirac) return std::abs(f.sign);
  return combo_norm(f.coeffs, f.indices);
}

kernels::GramSection VectorSequence::gram_section(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> idx;
  for (std::int64_t k = lo; k <= hi; ++k) idx.push_back(k);
  return gram_section(idx);
}

kernels::GramSection VectorSequence::gram_section(std::span<const std::int64_t> indices) const {
  require_inner_product("gram_section");
  kernels::GramSection g;
  g.n = std::int64_t(indices.size());
  g.m.resize(indices.size() * indices.size());
  for (std::int64_t i = 0; i < g.n; ++i)
    for (std::int64_t j = i; j < g.n; ++j) {
      const double v = model_->gram(indices[i], indices[j]);
      g.at(i, j) = v;
      g.at(j, i) = v;
    }
  return g;
}

// ---------------------------------------------------------------------------
// Factories and model-specific oracles

VectorSequence make_example_3_1(const BlockSchedule& schedule, std::int64_t horizon) {
  return VectorSequence(std::make_shared<TentFunctionModel>(schedule, horizon));
}
VectorSequence make_example_3_1(std::int64_t horizon) {
  return make_example_3_1(BlockSchedule::standard(horizon), horizon);
}
VectorSequence make_example_3_2(const BlockSchedule& schedule, std::int64_t horizon) {
  return VectorSequence(std::make_shared<BlockOrthonormalModel>(schedule, horizon));
}
VectorSequence make_example_3_2(std::int64_t horizon) {
  return make_example_3_2(BlockSchedule::standard(horizon), horizon);
}
VectorSequence make_example_3_3(std::int64_t horizon) {
  return VectorSequence(
      std::make_shared<MonomialModel>(MonomialSchedule::example_3_3(horizon), horizon));
}
VectorSequence make_example_6_2(std::int64_t horizon) {
  return VectorSequence(std::make_shared<Example62Model>(horizon));
}
VectorSequence make_operator_orbit(const std::vector<std::vector<double>>& u,
                                   const std::vector<double>& x, std::int64_t horizon) {
  return VectorSequence(std::make_shared<OperatorOrbitModel>(u, x, horizon));
}
VectorSequence make_orthonormal(std::int64_t horizon) {
  return VectorSequence(std::make_shared<OrthonormalModel>(horizon));
}
VectorSequence make_gram_explicit(kernels::GramSection gram) {
  return VectorSequence(std::make_shared<GramExplicitModel>(std::move(gram)));
}
VectorSequence make_zero_sequence(std::int64_t horizon) {
  return VectorSequence(std::make_shared<ZeroModel>(horizon));
}
VectorSequence make_constant_unit(std::int64_t horizon) {
  return VectorSequence(std::make_shared<ConstantUnitModel>(horizon));
}

BigRational MonomialExact::gram(std::int64_t j, std::int64_t k) const {
  return BigRational(1) / (schedule.exponents[j - 1] + schedule.exponents[k - 1] + 1);
}

BigRational MonomialExact::diff_norm_sq(std::int64_t j, std::int64_t k) const {
  return gram(j, j) + gram(k, k) - BigRational(2) * gram(j, k);
}

const MonomialSchedule& monomial_schedule_of(const VectorSequence& seq) {
  const auto* m = dynamic_cast<const MonomialModel*>(&seq.model());
  if (!m) throw std::logic_error("monomial_schedule_of: not a monomial model");
  return m->schedule();
}

std::vector<double> example_6_2_family_norms(const VectorSequence& seq, std::int64_t k) {
  const std::int64_t n1 = 3 * k + 1;
  if (n1 + 2 > seq.horizon())
    throw std::out_of_range("example_6_2_family_norms: family beyond horizon");
  const std::vector<std::vector<std::int64_t>> combos = {
      {n1}, {n1 + 1}, {n1 + 2}, {n1, n1 + 1}, {n1, n1 + 2}, {n1 + 1, n1 + 2},
      {n1, n1 + 1, n1 + 2}};
  std::vector<double> out;
  for (const auto& idx : combos) {
    std::vector<double> w(idx.size(), 1.0);
    out.push_back(seq.combo_norm(w, idx));
  }
  return out;
}

std::int64_t example_6_2_block_of(std::int64_t n) { return (n - 1) / 3; }
double example_6_2_theta(std::int64_t k) { return Example62Model::theta(k); }

}  // namespace wmix
