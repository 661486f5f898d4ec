#pragma once

// Reference computations written independently of the library, mostly plain
// recursions and explicit Kronecker products.  Tests compare the library
// against these.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using Q = mpq_class;

/// Fibonacci numbers F_0 = 0, F_1 = 1, ...
inline std::vector<mpz_class> fibonacci(int count) {
  std::vector<mpz_class> f{0, 1};
  while (static_cast<int>(f.size()) < count) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  f.resize(static_cast<std::size_t>(count));
  return f;
}

/// Ao(3) dimensions via m_k = F_{2k+2}.
inline std::vector<Q> ao3_dims(int count) {
  const auto f = fibonacci(2 * count + 3);
  std::vector<Q> m;
  for (int k = 0; k < count; ++k) m.emplace_back(f[static_cast<std::size_t>(2 * k + 2)]);
  return m;
}

/// Generic A_o dimensions by the recursion, in long double.
inline std::vector<long double> ao_dims_ld(long double d, int count) {
  std::vector<long double> m{1.0L, d};
  while (static_cast<int>(m.size()) < count) m.push_back(d * m[m.size() - 1] - m[m.size() - 2]);
  m.resize(static_cast<std::size_t>(count));
  return m;
}

/// Root a >= 1 of a + 1/a = d by bisection in long double.
inline long double growth_a(long double d) {
  long double lo = 1.0L, hi = d;
  for (int it = 0; it < 200; ++it) {
    const long double mid = (lo + hi) / 2;
    if (mid + 1 / mid < d) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

/// Gram entry (2 m_k m_l / 3) sum_{i>=j} 1/(m_i m_{i+1}) for Ao(3), j = max(k, l),
/// using the telescoping sum_{i>=j} 1/(m_i m_{i+1}) = 1/a - m_{j-1}/m_j.
inline long double gram_ao3(int k, int l) {
  const auto m = ao3_dims(std::max(k, l) + 2);
  const int j = std::max(k, l);
  const long double a = growth_a(3.0L);
  const long double mk = m[static_cast<std::size_t>(k)].get_d();
  const long double ml = m[static_cast<std::size_t>(l)].get_d();
  // Evaluate 1/a - m_{j-1}/m_j without cancellation: (m_j - a m_{j-1}) / (a m_j)
  // and m_j - a m_{j-1} = a^{-j} (exact for A_o with a + 1/a = m_1).
  const long double diff = std::pow(a, -static_cast<long double>(j)) / (a * m[static_cast<std::size_t>(j)].get_d());
  return 2.0L * mk * ml / 3.0L * diff;
}

/// Dense complex-free matrices (all entries are rational here).
struct Matrix {
  int n = 0;
  std::vector<Q> a;
  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {}
  Q& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  const Q& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  }
};

inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix r(x.n * y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      for (int k = 0; k < y.n; ++k)
        for (int l = 0; l < y.n; ++l) r(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return r;
}

/// ||q_l(e_i e_k^*)||^2 in B(C^N)^{(x)n} with Tr(a^* a)/N^n, computed by
/// building the full N^n x N^n matrix of the projected tensor.
inline Q ql_norm_sq_matrix(const std::vector<int>& i, const std::vector<int>& k, int l, int N) {
  const int n = static_cast<int>(i.size());
  Matrix acc(1);
  acc(0, 0) = 1;
  for (int p = 1; p <= n; ++p) {
    Matrix leg(N);
    leg(i[static_cast<std::size_t>(p - 1)] - 1, k[static_cast<std::size_t>(p - 1)] - 1) = 1;
    Q trace = 0;
    for (int d = 0; d < N; ++d) trace += leg(d, d);
    Matrix scalar(N);
    for (int d = 0; d < N; ++d) scalar(d, d) = trace / N;
    Matrix out(N);
    if (p < l) {
      out = leg;
    } else if (p == l) {
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) out(r, c) = leg(r, c) - scalar(r, c);
    } else {
      out = scalar;
    }
    acc = kron(acc, out);
  }
  Q hs = 0;
  for (const auto& x : acc.a) hs += x * x;
  Q dim = 1;
  for (int p = 0; p < n; ++p) dim *= N;
  return hs / dim;
}

/// The per-level lower bound sum_{i=1}^{n-l} m^{2(i-1)}/2 in closed form.
inline Q cg_lower_closed(int n, int l, int N) {
  Q m2 = N * N;
  Q p = 1;
  for (int e = 0; e < n - l; ++e) p *= m2;
  return (p - 1) / (2 * (m2 - 1));
}

}  // namespace oracle
