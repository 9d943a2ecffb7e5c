#pragma once

// Small independent reference computations over prime fields, written without the library.

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;
using Matrix = std::vector<Vec>;

inline int mod(long a, int p) { return static_cast<int>(((a % p) + p) % p); }

inline int inv_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (mod(long(a) * x, p) == 1) return x;
  return 0;
}

inline int rank_mod(Matrix m, int p) {
  int r = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c]) piv = i;
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    const int s = inv_mod(m[r][c], p);
    for (auto& x : m[r]) x = mod(long(x) * s, p);
    for (int i = 0; i < rows; ++i)
      if (i != r && m[i][c]) {
        const int f = m[i][c];
        for (int j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - long(f) * m[r][j], p);
      }
    ++r;
  }
  return r;
}

// Visits every vector of F_p^n.
inline void each_vector(int p, int n, const std::function<void(const Vec&)>& fn) {
  Vec v(n, 0);
  for (;;) {
    fn(v);
    int i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) return;
  }
}

// Number of k-dimensional subspaces of F_p^n: ordered independent k-tuples over |GL_k|.
inline std::uint64_t count_subspaces(int p, int n, int k) {
  std::function<std::uint64_t(Matrix&)> tuples = [&](Matrix& chosen) -> std::uint64_t {
    if (static_cast<int>(chosen.size()) == k) return 1;
    std::uint64_t total = 0;
    each_vector(p, n, [&](const Vec& v) {
      chosen.push_back(v);
      if (rank_mod(chosen, p) == static_cast<int>(chosen.size())) total += tuples(chosen);
      chosen.pop_back();
    });
    return total;
  };
  Matrix c;
  const std::uint64_t ordered_n = tuples(c);
  std::uint64_t glk = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t pk = 1, pi = 1;
    for (int j = 0; j < k; ++j) pk *= p;
    for (int j = 0; j < i; ++j) pi *= p;
    glk *= pk - pi;
  }
  return ordered_n / glk;
}

// All invertible n x n matrices over F_p.
inline std::vector<Matrix> gl_mod(int p, int n) {
  std::vector<Matrix> out;
  std::function<void(Matrix&)> rec = [&](Matrix& rows) {
    if (static_cast<int>(rows.size()) == n) {
      out.push_back(rows);
      return;
    }
    each_vector(p, n, [&](const Vec& v) {
      rows.push_back(v);
      if (rank_mod(rows, p) == static_cast<int>(rows.size())) rec(rows);
      rows.pop_back();
    });
  };
  Matrix r;
  rec(r);
  return out;
}

inline Matrix mul_mod(const Matrix& a, const Matrix& b, int p) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Matrix c(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long s = 0;
      for (std::size_t t = 0; t < k; ++t) s += long(a[i][t]) * b[t][j];
      c[i][j] = mod(s, p);
    }
  return c;
}

}  // namespace oracle
