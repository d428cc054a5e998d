#pragma once

// Independent reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "hurwitz/polycore.hpp"

namespace oracle {

using hurwitz::BigInt;
using hurwitz::IntPolynomial;
using hurwitz::Rational;

/// Leading principal minors of the Hurwitz matrix by exact Gaussian elimination.
/// `asc` holds a_0..a_n. Returns Delta_1..Delta_n.
inline std::vector<Rational> hurwitz_minors(const std::vector<Rational>& asc) {
  const int n = static_cast<int>(asc.size()) - 1;
  auto a = [&](int k) -> Rational {
    // coefficient a_k in the convention p = a_0 z^n + a_1 z^{n-1} + ... + a_n
    if (k < 0 || k > n) return 0;
    return asc[static_cast<std::size_t>(n - k)];
  };
  std::vector<std::vector<Rational>> h(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h[i][j] = a(2 * (j + 1) - (i + 1));
  }
  // H[i][j] = a_{2j - i} with 1-based indices.
  std::vector<Rational> minors;
  Rational det = 1;
  for (int k = 0; k < n; ++k) {
    if (h[k][k] == 0) {
      // A zero pivot makes this and the remaining minors unusable; report zero.
      for (int r = k; r < n; ++r) minors.push_back(0);
      return minors;
    }
    det *= h[k][k];
    minors.push_back(det);
    for (int i = k + 1; i < n; ++i) {
      const Rational f = h[i][k] / h[k][k];
      if (f == 0) continue;
      for (int j = k; j < n; ++j) h[i][j] -= f * h[k][j];
    }
  }
  return minors;
}

/// Hurwitz criterion: with a positive leading coefficient, stable iff every minor is positive.
inline bool is_stable(const std::vector<Rational>& asc) {
  if (asc.back() <= 0) return false;
  for (const auto& d : hurwitz_minors(asc)) {
    if (d <= 0) return false;
  }
  return true;
}

inline bool is_stable(const IntPolynomial& p) {
  std::vector<Rational> asc;
  for (const auto& c : p.coeffs()) asc.emplace_back(c);
  return is_stable(asc);
}

inline bool is_stable_desc(const std::vector<std::int64_t>& desc) {
  std::vector<Rational> asc;
  for (auto it = desc.rbegin(); it != desc.rend(); ++it) asc.emplace_back(static_cast<long>(*it));
  return is_stable(asc);
}

/// Every stable polynomial with coefficients in {1..m}, descending, lexicographic order.
inline std::vector<std::vector<std::int64_t>> stable_in_box(int degree, std::int64_t m) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree + 1), 1);
  for (;;) {
    if (is_stable_desc(c)) out.push_back(c);
    int i = degree;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == m) c[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

/// Every stable polynomial with positive coefficients summing to s.
inline std::vector<std::vector<std::int64_t>> stable_with_sum(int degree, std::int64_t s) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree + 1), 1);
  auto rec = [&](auto&& self, int pos, std::int64_t left) -> void {
    if (pos == degree) {
      c[static_cast<std::size_t>(pos)] = left;
      if (is_stable_desc(c)) out.push_back(c);
      return;
    }
    const std::int64_t slots_after = degree - pos;
    for (std::int64_t v = 1; v <= left - slots_after; ++v) {
      c[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, s);
  return out;
}

/// Value of an integer polynomial at a rational point by summing powers directly.
inline Rational value_at(const IntPolynomial& p, const Rational& z) {
  Rational sum = 0, zp = 1;
  for (const auto& c : p.coeffs()) {
    sum += Rational(c) * zp;
    zp *= z;
  }
  return sum;
}

inline std::complex<double> value_at(const std::vector<double>& asc, std::complex<double> z) {
  std::complex<double> sum = 0, zp = 1;
  for (double c : asc) {
    sum += c * zp;
    zp *= z;
  }
  return sum;
}

inline IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, int max_coeff, bool allow_nonpositive = false) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<int> coef(allow_nonpositive ? -max_coeff : 1, max_coeff);
  std::uniform_int_distribution<int> lead(1, max_coeff);
  const int n = deg(rng);
  std::vector<BigInt> c;
  for (int j = 0; j < n; ++j) c.emplace_back(coef(rng));
  c.emplace_back(lead(rng));
  return IntPolynomial(std::move(c));
}

}  // namespace oracle
