#pragma once

// Tensor-power model of A_u(I_N): the vectors u_{ik} of p_{gamma^n} H are the
// rank-one operators e_i e_k^* on (C^N)^{(x)n} with the normalized
// Hilbert-Schmidt norm Tr(a^* a) / N^n.  q_l keeps the components whose last
// traceless leg is leg l (l = 0: all legs scalar).

#include <cstdint>
#include <string>
#include <vector>

#include "qcayley/errors.hpp"
#include "qcayley/scalar.hpp"

namespace qcayley {

/// A multi-index (i_1, ..., i_n) with entries in [1, N].
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::vector<int> entries, int N) : entries_(std::move(entries)) {
    for (int e : entries_) {
      if (e < 1 || e > N) throw DomainError("multi-index entry " + std::to_string(e) + " outside [1, " + std::to_string(N) + "]");
    }
  }
  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t p) const { return entries_[p]; }
  const std::vector<int>& entries() const { return entries_; }

 private:
  std::vector<int> entries_;
};

/// Per-leg split of e_i e_k^* into scalar part (Tr x / m) id and traceless part.
struct LegDecomposition {
  Rational scalar_part_sq;
  Rational traceless_part_sq;
};

inline LegDecomposition leg_decomposition(int i, int k, int N) {
  const Rational m(N);
  const Rational delta = i == k ? 1 : 0;
  return {delta / (m * m), 1 / m - delta / (m * m)};
}

namespace detail {

inline void require_unitary_dimension(int N, const char* op) {
  if (N < 3) {
    throw GateError(std::string(op) + ": refused for N = " + std::to_string(N) +
                    "; the path cocycle needs a direction of quantum dimension different from 2 "
                    "(dim_q = 2 for A_u(I_2), dim_q = 1 for A_u(I_1))");
  }
}

}  // namespace detail

/// ||q_l(u_{ik})||^2 = prod_{p<l} (1/m) * (1/m - delta_l/m^2) * prod_{p>l} delta_p/m^2,
/// and prod_p delta_p/m^2 for l = 0.
inline Rational ql_norm_sq(const MultiIndex& i, const MultiIndex& k, int l, int N) {
  if (i.size() != k.size()) throw DomainError("ql_norm_sq: multi-index length mismatch");
  const int n = static_cast<int>(i.size());
  if (l < 0 || l > n) throw DomainError("ql_norm_sq: l must lie in [0, n]");
  if (N < 1) throw DomainError("ql_norm_sq: N must be >= 1");
  Rational result = 1;
  for (int p = 1; p <= n; ++p) {
    const LegDecomposition leg = leg_decomposition(i[p - 1], k[p - 1], N);
    if (p < l) result *= leg.scalar_part_sq + leg.traceless_part_sq;
    else if (p == l) result *= leg.traceless_part_sq;
    else result *= leg.scalar_part_sq;
    if (sgn(result) == 0) break;
  }
  return result;
}

/// Squared norms ||eta_i||^2 = m^{2(i-1)} (per unit ||zeta||^2) of the
/// preimage chain E2 eta_1 = zeta, E2 eta_i = O eta_{i-1}, i = 1..n-l+1.
struct EtaChain {
  int n = 0;
  int l = 0;
  std::vector<Rational> norms_sq;
};

inline EtaChain eta_chain(int n, int l, int N) {
  detail::require_unitary_dimension(N, "eta_chain");
  if (l < 0 || l > n) throw DomainError("eta_chain: need 0 <= l <= n");
  EtaChain c{n, l, {}};
  Rational m2(N * N);
  Rational power = 1;
  for (int i = 1; i <= n - l + 1; ++i) {
    c.norms_sq.push_back(power);
    power *= m2;
  }
  return c;
}

struct CgBounds {
  Rational lower;
  Rational upper;
};

/// Bracket for ||c_g(zeta)||^2 / ||zeta||^2 on q_l p_{gamma^n} H: the
/// quasi-classical terms eta_1..eta_{n-l} contribute half their norm, the last
/// term eta_{n-l+1} contributes between 0 and its full norm.
inline CgBounds cg_bounds(int n, int l, int N) {
  const EtaChain chain = eta_chain(n, l, N);
  CgBounds b;
  b.lower = 0;
  for (int i = 0; i < n - l; ++i) b.lower += chain.norms_sq[static_cast<std::size_t>(i)] / 2;
  b.upper = b.lower + chain.norms_sq.back();
  return b;
}

/// Lower bound for min_i ||C_n(e_i)||^2: sum over all k and l of
/// cg_lower(n, l) ||q_l(u_{ik})||^2, by exhaustive enumeration of k, for the
/// multi-index i = (1, ..., 1) unless given.
inline Rational cn_lower(int n, int N, const MultiIndex* fixed_i = nullptr) {
  detail::require_unitary_dimension(N, "cn_lower");
  if (n < 1) throw DomainError("cn_lower: n must be >= 1");
  const MultiIndex ones(std::vector<int>(static_cast<std::size_t>(n), 1), N);
  const MultiIndex& i = fixed_i != nullptr ? *fixed_i : ones;
  if (static_cast<int>(i.size()) != n) throw DomainError("cn_lower: multi-index length mismatch");
  std::vector<Rational> lower(static_cast<std::size_t>(n) + 1);
  for (int l = 0; l <= n; ++l) lower[static_cast<std::size_t>(l)] = cg_bounds(n, l, N).lower;

  Rational total = 0;
  std::vector<int> k(static_cast<std::size_t>(n), 1);
  while (true) {
    const MultiIndex ki(k, N);
    for (int l = 0; l <= n; ++l) {
      if (sgn(lower[static_cast<std::size_t>(l)]) == 0) continue;
      total += lower[static_cast<std::size_t>(l)] * ql_norm_sq(i, ki, l, N);
    }
    std::size_t p = 0;
    while (p < k.size() && k[p] == N) k[p++] = 1;
    if (p == k.size()) break;
    ++k[p];
  }
  return total;
}

/// Closed form of cn_lower: summing ||q_l(u_{ik})||^2 over k gives N^{-2n} for
/// l = 0 and (1 - N^{-2}) N^{-2(n-l)} for l >= 1.
inline Rational cn_lower_closed_form(int n, int N) {
  detail::require_unitary_dimension(N, "cn_lower_closed_form");
  if (n < 1) throw DomainError("cn_lower_closed_form: n must be >= 1");
  const Rational inv_m2 = Rational(1, N * N);
  Rational total = 0;
  for (int l = 0; l <= n; ++l) {
    const Rational summed = l == 0 ? pow(inv_m2, static_cast<unsigned>(n))
                                   : Rational((1 - inv_m2) * pow(inv_m2, static_cast<unsigned>(n - l)));
    total += cg_bounds(n, l, N).lower * summed;
  }
  return total;
}

/// Number of k with k_l != i_l and k_p = i_p for p > l: (N-1) N^{l-1}.
inline Integer admissible_count(int l, int N) {
  if (l < 1) return 0;
  Integer c;
  mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(l - 1));
  return c * (N - 1);
}

}  // namespace qcayley
