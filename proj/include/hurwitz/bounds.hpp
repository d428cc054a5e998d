#pragma once

/**
 * @file bounds.hpp
 * @brief Growth bounds for minimal Hurwitz polynomials with integer coefficients.
 *
 * Inequalities with irrational sides are decided in exact rational arithmetic
 * (squared or raised to integer powers). Floating point appears only in the
 * gamma limit, whose truncation is bracketed by an explicit error bar, and in
 * displayed roots.
 */

#include <cmath>
#include <cstdint>
#include <vector>

#include "hurwitz/constructors.hpp"
#include "hurwitz/polycore.hpp"
#include "hurwitz/real.hpp"
#include "hurwitz/stability.hpp"

namespace hurwitz {

// ---------------------------------------------------------------------------
// Beauzamy inequality and its corollary

struct BeauzamyResult {
  bool holds = false;
  Rational margin;  // p(v)^2 - (v^2 + 1)^N
};

/// p(v)^2 >= (v^2 + 1)^N for a stable p of even degree with p_N, p_0 >= 1 and v >= 1.
inline BeauzamyResult beauzamy_check(const IntPolynomial& p, const Rational& v) {
  if (p.degree() % 2 != 0) throw error("beauzamy_check requires even degree");
  if (p.degree() < 2) throw error("beauzamy_check requires degree >= 2");
  if (p.leading() < 1 || p.constant() < 1) throw error("beauzamy_check requires p_N >= 1 and p_0 >= 1");
  if (v < 1) throw error("beauzamy_check requires v >= 1");
  if (!is_stable(p)) throw error("beauzamy_check requires a Hurwitz stable polynomial");
  const Rational pv = evaluate_at_rational(p, v);
  Rational base = v * v + 1;
  Rational rhs;
  mpz_pow_ui(mpq_numref(rhs.get_mpq_t()), base.get_num().get_mpz_t(), static_cast<unsigned long>(p.degree()));
  mpz_pow_ui(mpq_denref(rhs.get_mpq_t()), base.get_den().get_mpz_t(), static_cast<unsigned long>(p.degree()));
  rhs.canonicalize();
  BeauzamyResult r;
  r.margin = pv * pv - rhs;
  r.holds = sgn(r.margin) >= 0;
  return r;
}

/// 2^{N/2} / (N + 1): lower bound for the largest coefficient relative to p_N.
inline Rational corollary_pmax_floor(int degree) {
  if (degree < 2 || degree % 2 != 0) throw error("corollary_pmax_floor requires even N >= 2");
  BigInt num;
  mpz_ui_pow_ui(num.get_mpz_t(), 2, static_cast<unsigned long>(degree / 2));
  Rational r(num, BigInt(degree + 1));
  r.canonicalize();
  return r;
}

/// First even N whose corollary floor exceeds `threshold`.
inline int first_even_degree_with_floor_above(const Rational& threshold) {
  for (int n = 2;; n += 2) {
    if (corollary_pmax_floor(n) > threshold) return n;
  }
}

// ---------------------------------------------------------------------------
// v_0 = 1, v_{n+1} = v_n + 1/v_n

/// Closed rational interval [lo, hi].
struct RationalInterval {
  Rational lo, hi;
};

/**
 * Exact terms are kept while they are small (the bit length doubles per step);
 * every term also carries a certified dyadic enclosure, which is what the
 * inequality checks use beyond the exact range.
 */
struct VSequence {
  std::vector<Rational> exact;               // v_0 .. v_{exact.size()-1}
  std::vector<RationalInterval> enclosures;  // v_0 .. v_n
  [[nodiscard]] int size() const { return static_cast<int>(enclosures.size()); }
};

inline constexpr int kVExactTerms = 21;        // v_20 has about 10^6 bits
inline constexpr unsigned kVEnclosureBits = 512;

namespace detail {

inline Rational dyadic_round(const Rational& x, unsigned bits, bool up) {
  BigInt scaled = x.get_num() << bits;
  BigInt q;
  if (up) {
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  } else {
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  }
  BigInt den = BigInt(1) << bits;
  Rational r(q, den);
  r.canonicalize();
  return r;
}

inline bool square_greater(const Rational& x, const Rational& bound) { return x * x > bound; }

}  // namespace detail

inline VSequence v_sequence(int n) {
  if (n < 0 || n > 64) throw error("v_sequence supports 0 <= n <= 64");
  VSequence seq;
  Rational v = 1;
  seq.exact.push_back(v);
  seq.enclosures.push_back({Rational(1), Rational(1)});
  for (int j = 1; j <= n; ++j) {
    if (j < kVExactTerms) {
      v = v + 1 / v;
      v.canonicalize();
      seq.exact.push_back(v);
      seq.enclosures.push_back({v, v});
      continue;
    }
    // x + 1/x is increasing for x >= 1, so the enclosure maps endpoint-wise.
    const auto& prev = seq.enclosures.back();
    Rational lo = prev.lo + 1 / prev.lo;
    Rational hi = prev.hi + 1 / prev.hi;
    seq.enclosures.push_back(
        {detail::dyadic_round(lo, kVEnclosureBits, false), detail::dyadic_round(hi, kVEnclosureBits, true)});
  }
  return seq;
}

struct VLemmaRow {
  int n = 0;
  bool above_sqrt_n_plus_1 = false;  // v_n^2 > n + 1
  bool below_two_sqrt_n = false;     // v_n^2 < 4n
  bool above_sqrt_2n = false;        // v_n^2 > 2n
};

/// The v_n inequalities for 2 <= n <= n_max, decided exactly on the enclosures.
inline std::vector<VLemmaRow> verify_v_lemma(int n_max) {
  const auto seq = v_sequence(n_max);
  std::vector<VLemmaRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    const auto& e = seq.enclosures[static_cast<std::size_t>(n)];
    VLemmaRow r;
    r.n = n;
    r.above_sqrt_n_plus_1 = detail::square_greater(e.lo, Rational(n + 1));
    r.below_two_sqrt_n = e.hi * e.hi < Rational(4 * n);
    r.above_sqrt_2n = detail::square_greater(e.lo, Rational(2 * n));
    rows.push_back(r);
  }
  return rows;
}

inline HighReal v_value(const VSequence& seq, int n) {
  const auto& e = seq.enclosures.at(static_cast<std::size_t>(n));
  const Rational lo = detail::dyadic_round(e.lo, kVEnclosureBits, false);
  const Rational hi = detail::dyadic_round(e.hi, kVEnclosureBits, true);
  return (to_high(lo) + to_high(hi)) / 2;
}

/// (v_n / sqrt(2n) - 1) * n / log n; bounded if v_n = sqrt(2n)(1 + O(log n / n)).
inline double v_asymptotic_ratio(const VSequence& seq, int n) {
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  if (n < 2) throw error("v_asymptotic_ratio requires n >= 2");
  const HighReal hn(n);
  return to_double((v_value(seq, n) / sqrt(2 * hn) - 1) * hn / log(hn));
}

// ---------------------------------------------------------------------------
// gamma_k = sum_{j<k} log(v_j) / 2^{j+1}

struct GammaTable {
  int k_max = 0;
  std::vector<HighReal> partials;    // partials[k-1] = gamma_k, k = 1..k_max
  std::vector<HighReal> exp_partials;
  HighReal gamma_lower, gamma_upper;  // bracket of the limit
  HighReal gamma;                     // midpoint of the bracket
  HighReal error_bar;                 // half-width of the bracket
  HighReal exp_gamma, exp_gamma_lower, exp_gamma_upper;
};

/// Exact rational R_k with exp(2^k gamma_k) = R_k, i.e. prod_{j<k} v_j^{2^{k-1-j}}.
inline Rational gamma_power_product(int k) {
  if (k < 1 || k >= kVExactTerms) throw error("gamma_power_product supports 1 <= k < 21");
  const auto seq = v_sequence(k);
  Rational r = 1;
  for (int j = 0; j < k; ++j) {
    const unsigned long e = 1UL << static_cast<unsigned>(k - 1 - j);
    const Rational& vj = seq.exact[static_cast<std::size_t>(j)];
    Rational f;
    mpz_pow_ui(mpq_numref(f.get_mpq_t()), vj.get_num().get_mpz_t(), e);
    mpz_pow_ui(mpq_denref(f.get_mpq_t()), vj.get_den().get_mpz_t(), e);
    r *= f;
  }
  r.canonicalize();
  return r;
}

/**
 * Partial sums gamma_1..gamma_{k_max} and a bracket for the limit: beyond k_max
 * each log v_j lies between log sqrt(2j) and log(2 sqrt j).
 */
inline GammaTable gamma_table(int k_max, int precision_bits = kHighRealBits) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  if (k_max < 1 || k_max > 64) throw error("gamma_table supports 1 <= k_max <= 64");
  if (precision_bits < 1 || precision_bits > kHighRealBits) {
    throw error("gamma_table precision is limited to " + std::to_string(kHighRealBits) + " bits");
  }
  const auto seq = v_sequence(k_max);
  GammaTable t;
  t.k_max = k_max;
  HighReal acc = 0;
  HighReal weight = HighReal(1) / 2;
  for (int j = 0; j < k_max; ++j) {
    acc += log(v_value(seq, j)) * weight;
    weight /= 2;
    t.partials.push_back(acc);
    t.exp_partials.push_back(exp(acc));
  }
  HighReal tail_lo = 0, tail_hi = 0;
  const HighReal log2 = log(HighReal(2));
  for (int j = k_max; j < k_max + 400; ++j) {
    const HighReal lj = log(HighReal(j));
    tail_lo += (log2 + lj) / 2 * weight;  // log sqrt(2j)
    tail_hi += (log2 + lj / 2) * weight;  // log (2 sqrt j)
    weight /= 2;
  }
  t.gamma_lower = acc + tail_lo;
  t.gamma_upper = acc + tail_hi;
  t.gamma = (t.gamma_lower + t.gamma_upper) / 2;
  t.error_bar = (t.gamma_upper - t.gamma_lower) / 2;
  t.exp_gamma = exp(t.gamma);
  t.exp_gamma_lower = exp(t.gamma_lower);
  t.exp_gamma_upper = exp(t.gamma_upper);
  return t;
}

/// a_{2^n}(1) == (v_n + 1) prod_{j<n} v_j^{2^{n-1-j}}, compared exactly.
inline bool a_family_identity_check(int n) {
  if (n < 0 || n > 6) throw error("a_family_identity_check supports 0 <= n <= 6");
  const auto seq = v_sequence(n);
  const Rational lhs(coeff_stats(a_family(n).result).sigma);
  Rational rhs = seq.exact[static_cast<std::size_t>(n)] + 1;
  if (n >= 1) rhs *= gamma_power_product(n);
  rhs.canonicalize();
  return lhs == rhs;
}

/**
 * a_N(1) / ((1 + (2n)^{-1/2}) e^{gamma N}) for N = 2^n.
 *
 * Since log v_j = (1/2) log(2j) + O(log j / j), the tail 2^n (gamma - gamma_n)
 * equals (1/2) log(2n) + O(log n / n), and a_N(1) = (v_n + 1) e^{gamma_n N}
 * becomes (1 + (2n)^{-1/2}) e^{gamma N} (1 + O(log n / n)).
 */
inline double a_family_asymptotic_ratio(int n, const GammaTable& gamma) {
  using boost::multiprecision::exp;
  using boost::multiprecision::sqrt;
  if (n < 1 || n > 6) throw error("a_family_asymptotic_ratio supports 1 <= n <= 6");
  const HighReal big_n = HighReal(1U << static_cast<unsigned>(n));
  const HighReal model = (1 + 1 / sqrt(HighReal(2 * n))) * exp(gamma.gamma * big_n);
  return to_double(to_high(coeff_stats(a_family(n).result).sigma) / model);
}

/// Same ratio against the model ((2n)^{1/4} + (2n)^{-1/4}) e^{gamma N}; drifts like (2n)^{-1/4}.
inline double a_family_quartic_model_ratio(int n, const GammaTable& gamma) {
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  if (n < 1 || n > 6) throw error("a_family_quartic_model_ratio supports 1 <= n <= 6");
  const HighReal big_n = HighReal(1U << static_cast<unsigned>(n));
  const HighReal q = pow(HighReal(2 * n), HighReal(1) / 4);
  return to_double(to_high(coeff_stats(a_family(n).result).sigma) / ((q + 1 / q) * exp(gamma.gamma * big_n)));
}

/// a_N(1) < (2 sqrt(n) + 1) e^{gamma N}.
inline bool a_family_upper_bound_check(int n, const GammaTable& gamma) {
  using boost::multiprecision::exp;
  using boost::multiprecision::sqrt;
  if (n < 0 || n > 6) throw error("a_family_upper_bound_check supports 0 <= n <= 6");
  const HighReal big_n = HighReal(1U << static_cast<unsigned>(n));
  const HighReal bound = (2 * sqrt(HighReal(n)) + 1) * exp(gamma.gamma_lower * big_n);
  return to_high(coeff_stats(a_family(n).result).sigma) < bound;
}

// ---------------------------------------------------------------------------
// beta bounds

/// x^{1/index} with the radicand kept exact.
struct Radical {
  Rational radicand;
  unsigned index = 1;
  [[nodiscard]] HighReal value() const { return nth_root(radicand, index); }
};

/// k-fold symmetric bounds: lower <= sigma_k(N)^{1/N} <= upper.
struct KfoldRow {
  int k = 0;
  Radical lower;  // ((v_k^2 + 1) R_k^2)^{1/2^{k+1}}
  Radical upper;  // ((v_k + 1) R_k)^{1/2^k}
};

struct BoundsTable {
  Radical beta_lower;             // sqrt 2
  HighReal beta_upper;            // e^gamma (upper end of its bracket)
  Radical beta_upper_a32;         // a_32(1)^{1/32}
  std::vector<KfoldRow> kfold;    // k = 0..k_max
  GammaTable gamma;
};

inline KfoldRow kfold_row(int k) {
  if (k < 0 || k >= kVExactTerms - 1) throw error("kfold_row supports 0 <= k < 20");
  const auto seq = v_sequence(k);
  const Rational vk = seq.exact[static_cast<std::size_t>(k)];
  const Rational rk = (k == 0) ? Rational(1) : gamma_power_product(k);
  KfoldRow row;
  row.k = k;
  row.lower = {Rational((vk * vk + 1) * rk * rk), 1U << static_cast<unsigned>(k + 1)};
  row.upper = {Rational((vk + 1) * rk), 1U << static_cast<unsigned>(k)};
  row.lower.radicand.canonicalize();
  row.upper.radicand.canonicalize();
  return row;
}

inline BoundsTable beta_bounds(int k_max, int gamma_terms = 40) {
  if (k_max < 0 || k_max > 8) throw error("beta_bounds supports 0 <= k_max <= 8");
  BoundsTable t;
  t.gamma = gamma_table(gamma_terms);
  t.beta_lower = {Rational(2), 2};
  t.beta_upper = t.gamma.exp_gamma_upper;
  t.beta_upper_a32 = {Rational(coeff_stats(a_family(5).result).sigma), 32};
  for (int k = 0; k <= k_max; ++k) t.kfold.push_back(kfold_row(k));
  return t;
}

/// sigma(N) <= (p(1)^{1/k})^N for every N divisible by k = deg p.
struct WuEntry {
  int k = 0;
  BigInt sigma;
  HighReal root;
};

inline WuEntry wu_bound(const IntPolynomial& p) {
  if (!is_stable(p)) throw error("wu_bound requires a stable polynomial");
  const BigInt s = coeff_stats(p).sigma;
  return {p.degree(), s, nth_root(Rational(s), static_cast<unsigned>(p.degree()))};
}

}  // namespace hurwitz
