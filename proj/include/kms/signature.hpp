#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "kms/arith.hpp"
#include "kms/error.hpp"

namespace kms {

// Type (k, g, mu) of a stratum of k-differentials.
struct Signature {
  int k = 1;
  int g = 0;
  std::vector<int> mu;
  bool finite_area = true;

  int n() const { return static_cast<int>(mu.size()); }
  bool operator==(const Signature& o) const { return k == o.k && g == o.g && mu == o.mu; }
};

struct CoverSignature {
  std::vector<int> mu_hat;
  int g_hat = 0;
  int n_hat = 0;
  std::vector<int> fiber_sizes;
};

inline Signature validate_signature(int k, int g, std::vector<int> mu) {
  if (k < 1) fail(ErrorCode::InvalidSignature, "k must be positive, got " + std::to_string(k));
  if (g < 0) fail(ErrorCode::InvalidSignature, "genus must be non-negative, got " + std::to_string(g));
  if (mu.empty()) fail(ErrorCode::EmptySignature, "mu must contain at least one point");
  i64 sum = 0;
  for (int m : mu) sum += m;
  i64 expected = static_cast<i64>(k) * (2 * static_cast<i64>(g) - 2);
  if (sum != expected)
    fail(ErrorCode::SumMismatch,
         "sum of orders " + std::to_string(sum) + " != k(2g-2) = " + std::to_string(expected));
  Signature s;
  s.k = k;
  s.g = g;
  s.mu = std::move(mu);
  s.finite_area = true;
  for (int m : s.mu)
    if (m <= -k) s.finite_area = false;
  return s;
}

inline Signature validate_signature(const Signature& s) { return validate_signature(s.k, s.g, s.mu); }

// Order of a preimage point on the canonical cover over a point of order m.
inline int lifted_order(int k, int m) {
  int f = static_cast<int>(gcd0(k, m));
  return (k + m) / f - 1;
}

inline int fiber_size(int k, int m) { return static_cast<int>(gcd0(k, m)); }

inline CoverSignature cover_signature(const Signature& sig) {
  CoverSignature c;
  i64 sum = 0;
  for (int m : sig.mu) {
    int f = fiber_size(sig.k, m);
    int mh = lifted_order(sig.k, m);
    c.fiber_sizes.push_back(f);
    for (int j = 0; j < f; ++j) c.mu_hat.push_back(mh);
    c.n_hat += f;
    sum += static_cast<i64>(f) * mh;
  }
  if (sum % 2 != 0)
    fail(ErrorCode::NonIntegralGenus, "sum of lifted orders " + std::to_string(sum) + " is odd");
  i64 gh = (sum + 2) / 2;
  if (gh < 0) fail(ErrorCode::NonIntegralGenus, "lifted orders force negative genus");
  c.g_hat = static_cast<int>(gh);
  return c;
}

inline std::vector<int> power_divisors(const Signature& sig) {
  std::vector<int> out;
  for (int d = 1; d <= sig.k; ++d) {
    if (sig.k % d != 0) continue;
    bool ok = true;
    for (int m : sig.mu)
      if (m % d != 0) ok = false;
    if (ok) out.push_back(d);
  }
  return out;
}

// Reduced (k/d)-signature of a d-th root.
inline Signature reduce_by(const Signature& sig, int d) {
  std::vector<int> mu;
  for (int m : sig.mu) mu.push_back(m / d);
  return validate_signature(sig.k / d, sig.g, mu);
}

// Dimension of the locus of k-differentials with connected canonical cover.
// Abelian strata with poles lose the one trivial-character relation.
inline int stratum_dimension(const Signature& sig) {
  if (sig.k == 1) {
    int p = 0;
    for (int m : sig.mu)
      if (m < 0) ++p;
    int z = sig.n() - p;
    return 2 * sig.g + std::max(p - 1, 0) + std::max(z - 1, 0);
  }
  try {
    (void)cover_signature(sig);
  } catch (const Error&) {
    fail(ErrorCode::NotPrimitive, "no connected canonical cover exists for this signature");
  }
  return 2 * sig.g - 2 + sig.n();
}

}  // namespace kms
