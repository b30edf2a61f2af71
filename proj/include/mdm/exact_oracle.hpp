#pragma once

// Exact mean of rho^{(x)m} for rho = U diag(e) U^dagger with U Haar and e
// Dirichlet distributed.
//
// The mean commutes with every W^{(x)m}, so it is a combination of the
// permutation operators V_sigma. Conjugating by V_tau shows the coefficients
// can be taken constant on conjugacy classes, which shrinks the linear system
// from m! unknowns to p(m). The right-hand side is
//   tr(M V_tau) = E[ prod over cycles c of tau of p_{|c|}(e) ],
// with p_k the power sums of the eigenvalues.

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mdm/errors.hpp"
#include "mdm/permutation.hpp"
#include "mdm/rational.hpp"
#include "mdm/tensor_core.hpp"

namespace mdm {

inline constexpr int kOracleMaxPower = 8;

namespace detail {

/// x (x+1) ... (x+k-1)
inline Rational rising(const Rational& x, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= x + i;
  return out;
}

inline void check_q(const std::vector<Rational>& q) {
  if (q.empty()) throw DomainError("Dirichlet parameters: empty");
  for (const auto& v : q)
    if (!(v < 1)) throw DomainError("Dirichlet parameters: every q must be < 1");
}

}  // namespace detail

/// E[prod e_i^{k_i}] for e ~ Dirichlet(1 - q_1, ..., 1 - q_N).
inline Rational dirichlet_moment(const std::vector<Rational>& q, const std::vector<int>& k) {
  detail::check_q(q);
  if (k.size() != q.size()) throw DimensionError("dirichlet_moment: exponent vector length differs from N");
  Rational num = 1, alpha_sum = 0;
  int k_sum = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (k[i] < 0) throw DomainError("dirichlet_moment: negative exponent");
    const Rational alpha = 1 - q[i];
    num *= detail::rising(alpha, k[i]);
    alpha_sum += alpha;
    k_sum += k[i];
  }
  return num / detail::rising(alpha_sum, k_sum);
}

inline Rational dirichlet_moment(std::size_t n, const Rational& q, const std::vector<int>& k) {
  return dirichlet_moment(std::vector<Rational>(n, q), k);
}

/// E[prod_j p_{lambda_j}(e)], expanding each power sum over the N eigenvalues.
inline Rational power_sum_moment(const std::vector<Rational>& q, const std::vector<int>& cycle_type) {
  detail::check_q(q);
  const std::size_t n = q.size();
  for (int part : cycle_type)
    if (part < 1) throw DomainError("power_sum_moment: parts must be positive");
  const std::size_t len = cycle_type.size();
  std::map<std::vector<int>, int> exponent_counts;
  std::vector<std::size_t> assign(len, 0);
  for (;;) {
    std::vector<int> k(n, 0);
    for (std::size_t j = 0; j < len; ++j) k[assign[j]] += cycle_type[j];
    ++exponent_counts[k];
    std::size_t j = len;
    while (j > 0) {
      if (++assign[j - 1] < n) break;
      assign[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
  }
  Rational total = 0;
  for (const auto& [k, count] : exponent_counts) total += count * dirichlet_moment(q, k);
  return total;
}

inline Rational power_sum_moment(std::size_t n, const Rational& q, const std::vector<int>& cycle_type) {
  return power_sum_moment(std::vector<Rational>(n, q), cycle_type);
}

struct OracleResult {
  RationalMatrix mean;
  // sigma -> c_sigma; empty for composite scenarios, whose mean lives in a
  // product of group algebras.
  std::vector<std::pair<Permutation, Rational>> coefficients;
  std::size_t n = 0;
  int m = 0;
  std::vector<Rational> q;
};

/// E[rho^{(x)m}] exactly, for U Haar on U(N) and eigenvalues Dirichlet(1 - q_i).
/// When N < m the permutation operators are linearly dependent; the mean is
/// still unique and one valid coefficient vector is returned.
inline OracleResult haar_mean(const std::vector<Rational>& q, int m, std::size_t cap = kDefaultDimensionCap) {
  detail::check_q(q);
  const std::size_t n = q.size();
  if (n < 2) throw DomainError("haar_mean: N must be >= 2");
  if (m < 1) throw DomainError("haar_mean: m must be >= 1");
  if (m > kOracleMaxPower) throw DomainError("haar_mean: m > " + std::to_string(kOracleMaxPower) + " is not supported");
  const auto dim = detail::checked_power(n, m, cap, "haar_mean");

  const auto classes = partitions(m);
  auto class_of = [&](const Permutation& p) {
    const auto t = p.cycle_type();
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (classes[c] == t) return c;
    throw Error("haar_mean: unknown cycle type");
  };
  const auto perms = all_permutations(m);
  std::vector<std::size_t> perm_class(perms.size());
  std::vector<std::size_t> representative(classes.size(), perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    perm_class[i] = class_of(perms[i]);
    if (representative[perm_class[i]] == perms.size()) representative[perm_class[i]] = i;
  }

  // Row mu: tr(M V_{tau_mu}) = sum_lambda c_lambda sum_{sigma in C_lambda} N^{cycles(sigma tau_mu)}.
  const std::size_t k = classes.size();
  std::vector<BigInt> npow(static_cast<std::size_t>(m) + 1, 1);
  for (int i = 1; i <= m; ++i) npow[i] = npow[i - 1] * n;
  std::vector<std::vector<BigInt>> a(k, std::vector<BigInt>(k, 0));
  std::vector<Rational> t(k);
  for (std::size_t mu = 0; mu < k; ++mu) {
    const Permutation& tau = perms[representative[mu]];
    for (std::size_t i = 0; i < perms.size(); ++i) a[mu][perm_class[i]] += npow[(perms[i] * tau).cycle_count()];
    t[mu] = power_sum_moment(q, classes[mu]);
  }
  const auto c = bareiss_solve(a, t);
  if (!c) throw Error("haar_mean: inconsistent moment system");

  // Per entry, count how many permutations of each class land there.
  std::vector<int> counts(dim * dim * k, 0);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto action = permutation_action(perms[i], n, cap);
    for (std::size_t col = 0; col < dim; ++col) ++counts[(action[col] * dim + col) * k + perm_class[i]];
  }
  OracleResult out;
  out.mean = RationalMatrix(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t col = 0; col < dim; ++col) {
      Rational v = 0;
      for (std::size_t cl = 0; cl < k; ++cl)
        if (int cnt = counts[(r * dim + col) * k + cl]) v += cnt * (*c)[cl];
      out.mean(static_cast<Index>(r), static_cast<Index>(col)) = v;
    }
  for (std::size_t i = 0; i < perms.size(); ++i) out.coefficients.emplace_back(perms[i], (*c)[perm_class[i]]);
  out.n = n;
  out.m = m;
  out.q = q;

  // Self-checks: unit trace and the moment equations, tr(M V_tau) = sum_i M(i, tau.i).
  if (out.mean.trace() != 1) throw Error("haar_mean: trace check failed");
  for (std::size_t mu = 0; mu < k; ++mu) {
    const auto action = permutation_action(perms[representative[mu]], n, cap);
    Rational tr = 0;
    for (std::size_t i = 0; i < dim; ++i) tr += out.mean(static_cast<Index>(i), static_cast<Index>(action[i]));
    if (tr != t[mu]) throw Error("haar_mean: moment check failed");
  }
  return out;
}

inline OracleResult haar_mean(std::size_t n, int m, const Rational& q = 0, std::size_t cap = kDefaultDimensionCap) {
  return haar_mean(std::vector<Rational>(n, q), m, cap);
}

/// Subsystem order for grouping a product of m-fold powers by tensor slot:
/// (A_1..A_m, B_1..B_m, ...) -> (A_1 B_1 ..., A_2 B_2 ..., ...).
inline std::vector<std::size_t> slot_major_order(std::size_t n_factors, int m) {
  std::vector<std::size_t> perm;
  for (int s = 0; s < m; ++s)
    for (std::size_t f = 0; f < n_factors; ++f) perm.push_back(f * static_cast<std::size_t>(m) + static_cast<std::size_t>(s));
  return perm;
}

/// Mean of (rho_1 (x) ... (x) rho_k)^{(x)m} for independent factors: the
/// tensor product of per-factor means, regrouped by tensor slot.
inline OracleResult composite_haar_mean(const Scenario& scenario, const std::vector<std::vector<Rational>>& qs,
                                        std::size_t cap = kDefaultDimensionCap) {
  scenario.validate(cap);
  if (qs.size() != scenario.factors.size()) throw DimensionError("composite_haar_mean: one q vector per factor");
  const int m = scenario.power;
  if (scenario.factors.size() == 1) {
    if (qs[0].size() != scenario.factors[0]) throw DimensionError("composite_haar_mean: q length differs from N");
    return haar_mean(qs[0], m, cap);
  }
  RationalMatrix product;
  std::vector<std::size_t> dims;
  for (std::size_t f = 0; f < scenario.factors.size(); ++f) {
    if (qs[f].size() != scenario.factors[f]) throw DimensionError("composite_haar_mean: q length differs from N");
    const auto part = haar_mean(qs[f], m, cap).mean;
    product = f == 0 ? part : tensor_product(product, part, cap);
    for (int s = 0; s < m; ++s) dims.push_back(scenario.factors[f]);
  }
  OracleResult out;
  out.mean = reorder_subsystems(product, dims, slot_major_order(scenario.factors.size(), m));
  out.n = scenario.local_dimension();
  out.m = m;
  for (const auto& v : qs) out.q.insert(out.q.end(), v.begin(), v.end());
  return out;
}

inline OracleResult composite_haar_mean(const Scenario& scenario, const std::vector<Rational>& q_per_factor,
                                        std::size_t cap = kDefaultDimensionCap) {
  if (q_per_factor.size() != scenario.factors.size()) throw DimensionError("composite_haar_mean: one q per factor");
  std::vector<std::vector<Rational>> qs;
  for (std::size_t f = 0; f < scenario.factors.size(); ++f) qs.emplace_back(scenario.factors[f], q_per_factor[f]);
  return composite_haar_mean(scenario, qs, cap);
}

}  // namespace mdm
