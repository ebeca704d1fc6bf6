#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational and big-integer arithmetic for coefficient identities.
 *
 * Backed by Boost.Multiprecision's cpp_int / cpp_rational (header-only),
 * which keep values reduced with a positive denominator.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace flatblend::numerics {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

inline BigInt pow_int(BigInt base, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// sum_{j=0}^{m} (-1)^(m-j) (2j+1)^(2k-1) C(2m+1, m-j), exactly.
inline BigInt binomial_identity_sum(unsigned m, unsigned k) {
  if (k == 0) throw std::invalid_argument("binomial_identity_sum: k must be >= 1");
  BigInt s = 0;
  for (unsigned j = 0; j <= m; ++j) {
    BigInt term = pow_int(BigInt(2 * j + 1), 2 * k - 1) * binomial(2 * m + 1, m - j);
    if ((m - j) % 2 == 1) term = -term;
    s += term;
  }
  return s;
}

struct BinomialIdentityReport {
  unsigned m = 0;
  std::vector<BigInt> sums;  // sums[k-1] for k = 1..m
  bool all_zero() const {
    for (const auto& s : sums) {
      if (s != 0) return false;
    }
    return true;
  }
};

/// Exact evaluation of the odd-power binomial sums for k = 1..m.
inline BinomialIdentityReport binomial_identity_check(unsigned m) {
  if (m < 1) throw std::invalid_argument("binomial_identity_check: m must be >= 1");
  BinomialIdentityReport r;
  r.m = m;
  for (unsigned k = 1; k <= m; ++k) r.sums.push_back(binomial_identity_sum(m, k));
  return r;
}

}  // namespace flatblend::numerics
