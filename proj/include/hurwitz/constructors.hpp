#pragma once

/**
 * @file constructors.hpp
 * @brief Explicit Hurwitz stable families: the Moebius-transform polynomials,
 *        doubling z^N q(z + 1/z) and its inverse, and the a_{2^n} chain.
 */

#include <vector>

#include "hurwitz/polycore.hpp"

namespace hurwitz {

namespace detail {

inline std::vector<BigInt> binomial_row(unsigned n) {
  std::vector<BigInt> row(n + 1);
  for (unsigned k = 0; k <= n; ++k) mpz_bin_uiui(row[k].get_mpz_t(), n, k);
  return row;
}

}  // namespace detail

/**
 * ((1+z)^{N+1} - (1-z)^{N+1}) / (2z) + (1+z)^N, i.e. (1+z)^N u((1-z)/(1+z))
 * with u(z) = 2 + z + ... + z^N. For even N every coefficient is even and the
 * result is halved.
 */
inline IntPolynomial mobius_ell(int degree) {
  if (degree < 1) throw error("mobius_ell requires degree >= 1");
  const auto n = static_cast<unsigned>(degree);
  const auto up = detail::binomial_row(n + 1);
  const auto cur = detail::binomial_row(n);
  std::vector<BigInt> c(n + 1);
  for (unsigned j = 0; j <= n; ++j) {
    // coefficient of z^{j+1} in (1+z)^{n+1} - (1-z)^{n+1} is C(n+1, j+1)(1 - (-1)^{j+1})
    BigInt odd_part = (j % 2 == 0) ? BigInt(up[j + 1]) : BigInt(0);
    c[j] = odd_part + cur[j];
  }
  if (n % 2 == 0) {
    for (auto& x : c) {
      if (!mpz_even_p(x.get_mpz_t())) throw error("internal: odd coefficient in even-degree mobius_ell");
      x /= 2;
    }
  }
  return IntPolynomial(std::move(c));
}

/// z^N q(z + 1/z) = sum_j q_j z^{N-j} (z^2 + 1)^j.
inline IntPolynomial double_transform(const IntPolynomial& q) {
  const int n = q.degree();
  if (n < 1) throw error("doubling requires degree >= 1");
  std::vector<BigInt> out(static_cast<std::size_t>(2 * n + 1), BigInt(0));
  for (int j = 0; j <= n; ++j) {
    if (sgn(q[j]) == 0) continue;
    const auto binom = detail::binomial_row(static_cast<unsigned>(j));
    // (z^2+1)^j = sum_i C(j,i) z^{2i}, shifted by z^{n-j}
    for (int i = 0; i <= j; ++i) out[static_cast<std::size_t>(n - j + 2 * i)] += q[j] * binom[i];
  }
  return IntPolynomial(std::move(out));
}

/// Unique q with p(z) = z^{N/2} q(z + 1/z); p symmetric of even degree >= 2.
inline IntPolynomial undouble(const IntPolynomial& p) {
  if (p.degree() < 2 || !is_symmetric(p)) throw error("not symmetric");
  const int n = p.degree() / 2;
  std::vector<BigInt> rest(p.coeffs().begin(), p.coeffs().end());
  std::vector<BigInt> q(static_cast<std::size_t>(n + 1));
  // The basis element for q_j has top term z^{n+j} with coefficient 1.
  for (int j = n; j >= 0; --j) {
    q[j] = rest[static_cast<std::size_t>(n + j)];
    if (sgn(q[j]) == 0) continue;
    const auto binom = detail::binomial_row(static_cast<unsigned>(j));
    for (int i = 0; i <= j; ++i) rest[static_cast<std::size_t>(n - j + 2 * i)] -= q[j] * binom[i];
  }
  for (const auto& r : rest) {
    if (sgn(r) != 0) throw error("internal: nonzero residual in undouble");
  }
  return IntPolynomial(std::move(q));
}

/// Result of repeatedly doubling a base polynomial.
struct DoublingChain {
  IntPolynomial base;
  int steps = 0;
  IntPolynomial result;
  std::vector<IntPolynomial> stages;  // stages[i] = base after i doublings
  std::vector<BigInt> sums;           // sums[i] = coefficient sum of stages[i]
};

inline DoublingChain doubling_chain(const IntPolynomial& base, int steps) {
  if (steps < 0) throw error("doubling steps must be nonnegative");
  DoublingChain chain{base, steps, base, {base}, {coeff_stats(base).sigma}};
  for (int i = 0; i < steps; ++i) {
    chain.result = double_transform(chain.result);
    chain.stages.push_back(chain.result);
    chain.sums.push_back(coeff_stats(chain.result).sigma);
  }
  return chain;
}

/// a_{2^n}: n doublings of z + 1.
inline DoublingChain a_family(int n) { return doubling_chain(int_poly({1, 1}), n); }

/// Number of successive undoublings through symmetric even-degree polynomials.
inline int kfold_symmetry_order(const IntPolynomial& p) {
  int k = 0;
  IntPolynomial cur = p;
  while (cur.degree() >= 2 && is_symmetric(cur)) {
    cur = undouble(cur);
    ++k;
  }
  return k;
}

}  // namespace hurwitz
