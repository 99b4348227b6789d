#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "kms/arith.hpp"

namespace kms {

using IntMatrix = std::vector<std::vector<i64>>;

// Row-style Hermite normal form: rows generate the same lattice, zero rows dropped,
// pivots positive, entries above a pivot reduced into [0, pivot).
inline IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const size_t cols = rows[0].size();
  size_t pr = 0;
  for (size_t c = 0; c < cols && pr < rows.size(); ++c) {
    while (true) {
      size_t best = rows.size();
      for (size_t i = pr; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[pr], rows[best]);
      bool done = true;
      for (size_t i = pr + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        i64 q = rows[i][c] / rows[pr][c];
        for (size_t j = 0; j < cols; ++j) rows[i][j] = checked_add(rows[i][j], -checked_mul(q, rows[pr][j]));
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pr][c] == 0) continue;
    if (rows[pr][c] < 0)
      for (auto& x : rows[pr]) x = -x;
    for (size_t i = 0; i < pr; ++i) {
      i64 q = rows[i][c] / rows[pr][c];
      if (mod(rows[i][c], rows[pr][c]) != rows[i][c] - q * rows[pr][c]) q -= 1;
      for (size_t j = 0; j < cols; ++j) rows[i][j] = checked_add(rows[i][j], -checked_mul(q, rows[pr][j]));
    }
    ++pr;
  }
  rows.resize(pr);
  return rows;
}

// Fraction-free (Bareiss) determinant of a square integer matrix.
inline i64 bareiss_det(IntMatrix m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  i64 sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(m[i][j]) * m[k][k] - static_cast<__int128>(m[i][k]) * m[k][j];
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::Overflow, "determinant overflow");
        m[i][j] = static_cast<i64>(v);
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Basis of the integer kernel {x : M x = 0} via unimodular column reduction.
inline IntMatrix integer_kernel(const IntMatrix& M, size_t cols) {
  IntMatrix A = M;
  IntMatrix U(cols, std::vector<i64>(cols, 0));
  for (size_t i = 0; i < cols; ++i) U[i][i] = 1;
  auto col_op = [&](size_t dst, size_t src, i64 q) {  // col dst -= q * col src
    for (auto& row : A) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
    for (auto& row : U) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
  };
  auto col_swap = [&](size_t a, size_t b) {
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : U) std::swap(row[a], row[b]);
  };
  size_t p = 0;
  for (size_t r = 0; r < A.size() && p < cols; ++r) {
    while (true) {
      size_t best = cols;
      for (size_t c = p; c < cols; ++c)
        if (A[r][c] != 0 && (best == cols || std::llabs(A[r][c]) < std::llabs(A[r][best]))) best = c;
      if (best == cols) break;
      col_swap(p, best);
      bool done = true;
      for (size_t c = p + 1; c < cols; ++c) {
        if (A[r][c] == 0) continue;
        col_op(c, p, A[r][c] / A[r][p]);
        if (A[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (A[r][p] != 0) ++p;
  }
  IntMatrix ker;
  for (size_t c = p; c < cols; ++c) {
    std::vector<i64> v(cols);
    for (size_t i = 0; i < cols; ++i) v[i] = U[i][c];
    ker.push_back(v);
  }
  return ker;
}

// Lattice {n in Z^L : rows[j] . n = 0 mod moduli[j]} as an HNF basis.
inline IntMatrix congruence_lattice(size_t L, const IntMatrix& rows, const std::vector<i64>& moduli) {
  const size_t r = rows.size();
  IntMatrix M(r, std::vector<i64>(L + r, 0));
  for (size_t j = 0; j < r; ++j) {
    for (size_t i = 0; i < L; ++i) M[j][i] = rows[j][i];
    M[j][L + j] = moduli[j];
  }
  IntMatrix gens;
  if (r == 0) {
    for (size_t i = 0; i < L; ++i) {
      std::vector<i64> e(L, 0);
      e[i] = 1;
      gens.push_back(e);
    }
  } else {
    for (const auto& v : integer_kernel(M, L + r)) gens.emplace_back(v.begin(), v.begin() + static_cast<long>(L));
  }
  return hermite_normal_form(gens);
}

inline i64 hnf_determinant(const IntMatrix& hnf) {
  i64 d = 1;
  for (size_t i = 0; i < hnf.size(); ++i) {
    size_t c = 0;
    while (c < hnf[i].size() && hnf[i][c] == 0) ++c;
    d = checked_mul(d, hnf[i][c]);
  }
  return d;
}

}  // namespace kms
