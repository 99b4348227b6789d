#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "kms/arith.hpp"

namespace kms {

using Rational = boost::multiprecision::cpp_rational;

// Integer coefficients of the k-th cyclotomic polynomial, lowest degree first.
inline std::vector<i64> cyclotomic_polynomial(int k) {
  std::vector<i64> num(k + 1, 0);
  num[0] = -1;
  num[k] = 1;
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    std::vector<i64> den = cyclotomic_polynomial(d);
    // exact division by a monic polynomial
    std::vector<i64> q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
      i64 c = num[i];
      int shift = i - (static_cast<int>(den.size()) - 1);
      q[shift] = c;
      for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
    }
    num = q;
  }
  return num;
}

// The field Q(zeta_k) with basis 1, zeta, ..., zeta^{phi(k)-1}.
class CyclotomicField {
 public:
  using Element = std::vector<Rational>;

  explicit CyclotomicField(int k) : k_(k), phi_(cyclotomic_polynomial(k)) { deg_ = static_cast<int>(phi_.size()) - 1; }

  int k() const { return k_; }
  int degree() const { return deg_; }

  Element zero() const { return Element(deg_, Rational(0)); }

  Element zeta_power(i64 j) const {
    j = mod(j, k_);
    std::vector<Rational> poly(j + 1, Rational(0));
    poly[j] = 1;
    return reduce(poly);
  }

  Element reduce(std::vector<Rational> poly) const {
    for (int i = static_cast<int>(poly.size()) - 1; i >= deg_; --i) {
      Rational c = poly[i];
      if (c == 0) continue;
      for (int j = 0; j <= deg_; ++j) poly[i - deg_ + j] -= c * phi_[j];
    }
    poly.resize(deg_, Rational(0));
    return poly;
  }

  Element add(const Element& a, const Element& b) const {
    Element r(deg_);
    for (int i = 0; i < deg_; ++i) r[i] = a[i] + b[i];
    return r;
  }

  Element mul(const Element& a, const Element& b) const {
    std::vector<Rational> p(2 * deg_, Rational(0));
    for (int i = 0; i < deg_; ++i)
      for (int j = 0; j < deg_; ++j) p[i + j] += a[i] * b[j];
    return reduce(p);
  }

  // Matrix of multiplication by a in the power basis (companion-matrix polynomial).
  std::vector<std::vector<Rational>> multiplication_matrix(const Element& a) const {
    std::vector<std::vector<Rational>> M(deg_, std::vector<Rational>(deg_));
    for (int j = 0; j < deg_; ++j) {
      Element col = mul(a, zeta_power(j));
      for (int i = 0; i < deg_; ++i) M[i][j] = col[i];
    }
    return M;
  }

 private:
  int k_;
  int deg_;
  std::vector<i64> phi_;
};

inline int rational_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Rank over Q(zeta) of a matrix with entries in the field, via the rational blow-up.
inline int field_rank(const CyclotomicField& F, const std::vector<std::vector<CyclotomicField::Element>>& rows, size_t cols) {
  if (rows.empty() || cols == 0) return 0;
  const int d = F.degree();
  std::vector<std::vector<Rational>> big(rows.size() * d, std::vector<Rational>(cols * d, Rational(0)));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) {
      auto M = F.multiplication_matrix(rows[i][j]);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) big[i * d + a][j * d + b] = M[a][b];
    }
  int r = rational_rank(big);
  if (r % d != 0) fail(ErrorCode::Inconsistent, "blow-up rank not divisible by the field degree");
  return r / d;
}

}  // namespace kms
