#include "wmix/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmix/kernels/quad_max.hpp"

namespace wmix {

double HullCertificate::certified_lower() const {
  if (achieved_norm <= 0.0) return 0.0;
  return std::max(0.0, achieved_norm - gap / achieved_norm);
}

HullCertificate min_norm_in_hull(const VectorSequence& seq,
                                 const std::vector<std::int64_t>& indices, double tol,
                                 std::int64_t max_iter) {
  if (seq.kind() == ModelKind::continuous_function)
    throw std::logic_error("min_norm_in_hull: unsupported model (needs inner products)");
  if (indices.empty()) throw std::invalid_argument("min_norm_in_hull: no indices");
  const std::int64_t m = std::int64_t(indices.size());
  const auto g = seq.gram_section(indices);

  // State: simplex weights, grad/2 = G lambda, objective f = lambda^T G lambda.
  std::vector<double> lambda(static_cast<std::size_t>(m), 0.0);
  std::vector<double> glam(static_cast<std::size_t>(m));
  // Start at the smallest-norm vertex.
  std::int64_t start = 0;
  for (std::int64_t i = 1; i < m; ++i)
    if (g.at(i, i) < g.at(start, start)) start = i;
  lambda[start] = 1.0;
  for (std::int64_t i = 0; i < m; ++i) glam[i] = g.at(i, start);
  double f = g.at(start, start);

  HullCertificate cert;
  cert.indices = indices;
  double gap = 0.0;
  std::int64_t it = 0;
  for (; it < max_iter; ++it) {
    // FW vertex: most-decreasing coordinate; away vertex: worst active one.
    std::int64_t s = 0, v = -1;
    for (std::int64_t i = 1; i < m; ++i)
      if (glam[i] < glam[s]) s = i;
    for (std::int64_t i = 0; i < m; ++i)
      if (lambda[i] > 0.0 && (v < 0 || glam[i] > glam[v])) v = i;
    gap = 2.0 * (f - glam[s]);
    if (gap <= tol) {
      cert.converged = true;
      break;
    }

    const double fw_improve = f - glam[s];        // -<grad, d_fw>/2
    const double away_improve = glam[v] - f;      // -<grad, d_away>/2
    if (fw_improve >= away_improve) {
      // d = e_s - lambda, step gamma in [0, 1]
      const double dgd = f - 2.0 * glam[s] + g.at(s, s);  // d^T G d
      double gamma = dgd <= 0.0 ? 1.0 : std::min(1.0, fw_improve / dgd);
      if (gamma <= 0.0) break;
      for (std::int64_t i = 0; i < m; ++i) {
        lambda[i] *= (1.0 - gamma);
        glam[i] = (1.0 - gamma) * glam[i] + gamma * g.at(i, s);
      }
      lambda[s] += gamma;
      f = 0.0;
      for (std::int64_t i = 0; i < m; ++i) f += lambda[i] * glam[i];
    } else {
      // d = lambda - e_v, step gamma in [0, alpha_v / (1 - alpha_v)]
      const double alpha_v = lambda[v];
      const double gamma_max = alpha_v >= 1.0 ? 1e18 : alpha_v / (1.0 - alpha_v);
      const double dgd = f - 2.0 * glam[v] + g.at(v, v);
      if (dgd <= 0.0 || away_improve <= 0.0) break;  // flat direction; gap rules
      const double gamma = std::min(gamma_max, away_improve / dgd);
      if (gamma <= 0.0) break;
      for (std::int64_t i = 0; i < m; ++i) {
        lambda[i] *= (1.0 + gamma);
        glam[i] = (1.0 + gamma) * glam[i] - gamma * g.at(i, v);
      }
      lambda[v] -= gamma;
      if (lambda[v] < 1e-15) lambda[v] = 0.0;
      f = 0.0;
      for (std::int64_t i = 0; i < m; ++i) f += lambda[i] * glam[i];
    }
  }
  // Final tidy: clamp tiny negatives and renormalize the simplex weights.
  double total = 0.0;
  for (double& x : lambda) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  for (double& x : lambda) x /= total;
  // Recompute the objective and gap from scratch for an honest certificate.
  double f2 = 0.0;
  std::vector<double> glam2(static_cast<std::size_t>(m), 0.0);
  for (std::int64_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::int64_t j = 0; j < m; ++j) s += g.at(i, j) * lambda[j];
    glam2[i] = s;
  }
  for (std::int64_t i = 0; i < m; ++i) f2 += lambda[i] * glam2[i];
  double min_lin = glam2[0];
  for (std::int64_t i = 1; i < m; ++i) min_lin = std::min(min_lin, glam2[i]);
  cert.weights = lambda;
  cert.achieved_norm = std::sqrt(std::max(0.0, f2));
  cert.gap = std::max(0.0, 2.0 * (f2 - min_lin));
  cert.iterations = it;
  cert.converged = cert.converged || cert.gap <= tol;
  return cert;
}

HullCertificate min_norm_in_hull(const VectorSequence& seq, const FiniteIndexSet& indices,
                                 double tol, std::int64_t max_iter) {
  return min_norm_in_hull(seq, indices.elements(), tol, max_iter);
}

std::optional<SeparationWitness> separation_witness(const VectorSequence& seq,
                                                    const std::vector<std::int64_t>& indices,
                                                    double delta) {
  if (delta <= 0.0) throw std::invalid_argument("separation_witness: delta must be > 0");
  const double tol = delta * delta / 4.0;
  HullCertificate cert = min_norm_in_hull(seq, indices, tol);
  if (cert.achieved_norm < delta || cert.gap > tol) return std::nullopt;

  SeparationWitness w;
  w.pairing_floor = cert.achieved_norm - cert.gap / cert.achieved_norm;
  std::vector<double> coeffs = cert.weights;
  for (double& c : coeffs) c /= cert.achieved_norm;
  w.functional = Functional::combination(cert.indices, std::move(coeffs));
  w.certificate = std::move(cert);
  // Per-element guarantee; a violation would falsify the gap certificate.
  for (std::int64_t k : w.certificate.indices)
    if (seq.pairing(w.functional, k) < w.pairing_floor - 1e-9)
      throw std::logic_error("separation_witness: certificate violated (solver defect)");
  return w;
}

BanachSaksSelection banach_saks_select(const VectorSequence& seq,
                                       const std::vector<std::int64_t>& candidates,
                                       std::int64_t target_count) {
  if (seq.kind() == ModelKind::continuous_function)
    throw std::logic_error("banach_saks_select: unsupported model (needs inner products)");
  if (target_count < 1) throw std::invalid_argument("banach_saks_select: target_count < 1");
  BanachSaksSelection out;
  // h[i] = <S_m, x_{candidates[i]}> for the running partial sum S_m.
  std::vector<double> h(candidates.size(), 0.0);
  std::size_t cursor = 0;
  while (std::int64_t(out.selected.size()) < target_count) {
    const double threshold = 1.0 / double(out.selected.size() + 1);
    std::size_t pick = candidates.size();
    for (std::size_t i = cursor; i < candidates.size(); ++i) {
      if (std::abs(h[i]) <= threshold) {
        pick = i;
        break;
      }
    }
    if (pick == candidates.size()) {
      out.stalled = true;
      out.stalled_after = std::int64_t(out.selected.size());
      return out;
    }
    const std::int64_t y = candidates[pick];
    out.selected.push_back(y);
    cursor = pick + 1;
    for (std::size_t i = cursor; i < candidates.size(); ++i)
      h[i] += seq.gram(y, candidates[i]);
  }
  return out;
}

std::vector<PrefixBound> banach_saks_prefix_bounds(const VectorSequence& seq,
                                                   const std::vector<std::int64_t>& selected) {
  std::vector<PrefixBound> out;
  const double m2 = seq.bound() * seq.bound();
  for (std::size_t n = 1; n <= selected.size(); ++n) {
    std::vector<std::int64_t> idx(selected.begin(), selected.begin() + n);
    std::vector<double> w(n, 1.0 / double(n));
    const double mean = seq.combo_norm(w, idx);
    out.push_back({std::int64_t(n), mean * mean, (m2 + 2.0) / double(n)});
  }
  return out;
}

}  // namespace wmix
