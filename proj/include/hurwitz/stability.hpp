#pragma once

/**
 * @file stability.hpp
 * @brief Hurwitz stability: exact Routh test and numeric zero location.
 *
 * The exact test never touches floating point. The numeric path (Aberth-Ehrlich
 * simultaneous iteration in double precision) supplies the spectral abscissa
 * and the number of zeros in the open right half-plane.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hurwitz/polycore.hpp"

namespace hurwitz {

enum class Verdict { Stable, Unstable, Boundary };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    case Verdict::Boundary: return "boundary";
  }
  return "unknown";
}

struct StabilityReport {
  Verdict verdict = Verdict::Unstable;
  std::optional<double> abscissa;
  std::optional<int> rhp_zero_count;
  std::optional<std::vector<std::complex<double>>> zeros;
};

inline nlohmann::json to_json(const StabilityReport& r) {
  nlohmann::json j{{"verdict", to_string(r.verdict)}};
  if (r.abscissa) j["abscissa"] = *r.abscissa;
  if (r.rhp_zero_count) j["rhp_zeros"] = *r.rhp_zero_count;
  return j;
}

// ---------------------------------------------------------------------------
// Exact Routh test

/// Routh array over the rationals; `ascending` holds p_0..p_N with p_N > 0.
inline Verdict routh_verdict(std::span<const Rational> ascending) {
  const int n = static_cast<int>(ascending.size()) - 1;
  if (n < 1) throw error("constant polynomial");
  if (sgn(ascending[n]) <= 0) throw error("leading coefficient must be positive");
  for (const auto& c : ascending) {
    if (sgn(c) <= 0) return Verdict::Unstable;
  }

  const std::size_t width = static_cast<std::size_t>(n) / 2 + 1;
  std::vector<Rational> prev(width, Rational(0));
  std::vector<Rational> cur(width, Rational(0));
  // a_i = p_{n-i}
  for (int i = 0; i <= n; ++i) {
    auto& row = (i % 2 == 0) ? prev : cur;
    row[static_cast<std::size_t>(i / 2)] = ascending[static_cast<std::size_t>(n - i)];
  }

  bool negative_seen = false;
  std::vector<Rational> next(width, Rational(0));
  for (int k = 2; k <= n; ++k) {
    const Rational& pivot = cur[0];
    for (std::size_t j = 0; j < width; ++j) {
      Rational a = (j + 1 < width) ? prev[j + 1] : Rational(0);
      Rational b = (j + 1 < width) ? cur[j + 1] : Rational(0);
      next[j] = (pivot * a - prev[0] * b) / pivot;
    }
    if (sgn(next[0]) == 0) return negative_seen ? Verdict::Unstable : Verdict::Boundary;
    if (sgn(next[0]) < 0) negative_seen = true;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return negative_seen ? Verdict::Unstable : Verdict::Stable;
}

inline StabilityReport is_hurwitz_exact(const RatPolynomial& p) {
  if (p.degree() < 1) throw error("constant polynomial");
  return StabilityReport{routh_verdict(p.coeffs()), {}, {}, {}};
}

inline StabilityReport is_hurwitz_exact(const IntPolynomial& p) {
  if (p.degree() < 1) throw error("constant polynomial");
  return is_hurwitz_exact(to_rational(p));
}

/// Shorthand for the common yes/no question.
template <class Coeff>
bool is_stable(const Polynomial<Coeff>& p) {
  return is_hurwitz_exact(p).verdict == Verdict::Stable;
}

/**
 * Fraction-free Routh scheme on machine integers.
 *
 * Row k is the rational Routh row scaled by the Hurwitz minor of order k-1, so
 * the first column carries the Hurwitz minors themselves and every division is
 * exact. Returns nullopt when an intermediate leaves the 128-bit range (or a
 * division is inexact, which would indicate a bug); callers then fall back to
 * routh_verdict. Verdicts agree with the rational scheme whenever a value is
 * returned.
 */
inline std::optional<Verdict> routh_verdict_fixed(std::span<const std::int64_t> ascending) {
  using wide = __int128;
  constexpr int kMaxDegree = 64;
  const int n = static_cast<int>(ascending.size()) - 1;
  if (n < 1) throw error("constant polynomial");
  if (n > kMaxDegree) return std::nullopt;
  if (ascending[n] <= 0) throw error("leading coefficient must be positive");
  for (auto c : ascending) {
    if (c <= 0) return Verdict::Unstable;
  }

  const int width = n / 2 + 1;
  wide buf[3][kMaxDegree / 2 + 2] = {};
  wide* prev = buf[0];
  wide* cur = buf[1];
  wide* next = buf[2];
  for (int i = 0; i <= n; ++i) ((i % 2 == 0) ? prev : cur)[i / 2] = ascending[n - i];

  wide divisor_lag[2] = {1, 1};  // first-column entries of rows k-2 and k-1 used as divisors
  bool negative_seen = false;
  for (int k = 2; k <= n; ++k) {
    // Row k divides by the pivot of row k-3 (rows 2 and 3 divide by 1).
    const wide divisor = (k >= 4) ? divisor_lag[0] : wide(1);
    for (int j = 0; j < width; ++j) {
      wide a = (j + 1 < width) ? prev[j + 1] : 0;
      wide b = (j + 1 < width) ? cur[j + 1] : 0;
      wide t1, t2, num;
      if (__builtin_mul_overflow(cur[0], a, &t1)) return std::nullopt;
      if (__builtin_mul_overflow(prev[0], b, &t2)) return std::nullopt;
      if (__builtin_sub_overflow(t1, t2, &num)) return std::nullopt;
      if (divisor != 1) {
        if (num % divisor != 0) return std::nullopt;
        num /= divisor;
      }
      next[j] = num;
    }
    if (next[0] == 0) return negative_seen ? Verdict::Unstable : Verdict::Boundary;
    if (next[0] < 0) negative_seen = true;
    divisor_lag[0] = divisor_lag[1];
    divisor_lag[1] = cur[0];
    wide* t = prev;
    prev = cur;
    cur = next;
    next = t;
  }
  return negative_seen ? Verdict::Unstable : Verdict::Stable;
}

/// Fast path with exact fallback; identical verdicts to routh_verdict.
inline Verdict routh_verdict_small(std::span<const std::int64_t> ascending) {
  if (auto v = routh_verdict_fixed(ascending)) return *v;
  std::vector<Rational> q(ascending.begin(), ascending.end());
  return routh_verdict(q);
}

// ---------------------------------------------------------------------------
// Numeric zeros

namespace detail {

struct HornerPair {
  std::complex<double> ratio;  // p(z) / p'(z)
  double backward_error;       // |p(z)| / sum |p_j| |z|^j
};

/// Newton ratio and backward error; evaluates the reversed polynomial when |z| > 1.
inline HornerPair newton_ratio(std::span<const double> a, std::complex<double> z) {
  const int n = static_cast<int>(a.size()) - 1;
  if (std::abs(z) <= 1.0) {
    std::complex<double> p = a[n], dp = 0.0;
    double mag = std::abs(a[n]);
    const double az = std::abs(z);
    for (int j = n - 1; j >= 0; --j) {
      dp = dp * z + p;
      p = p * z + a[j];
      mag = mag * az + std::abs(a[j]);
    }
    return {p / dp, std::abs(p) / mag};
  }
  // p(z) = z^n R(w), w = 1/z, R(w) = sum_j a_{n-j} w^j
  const std::complex<double> w = 1.0 / z;
  const double aw = std::abs(w);
  std::complex<double> r = a[0], dr = 0.0;
  double mag = std::abs(a[0]);
  for (int j = 1; j <= n; ++j) {
    dr = dr * w + r;
    r = r * w + a[j];
    mag = mag * aw + std::abs(a[j]);
  }
  // p'(z) = z^{n-1} (n R(w) - w R'(w))
  return {z * r / (static_cast<double>(n) * r - w * dr), std::abs(r) / mag};
}

/// Unique positive root of |a_n| x^n - sum_{j<n} |a_j| x^j.
inline double cauchy_radius(std::span<const double> a) {
  const int n = static_cast<int>(a.size()) - 1;
  // |a_n| - sum_{j<n} |a_j| x^{j-n}, increasing in x
  auto h = [&](double x) {
    const double y = 1.0 / x;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s = (s + std::abs(a[j])) * y;
    return std::abs(a[n]) - s;
  };
  double hi = 1.0;
  while (h(hi) < 0.0) hi *= 2.0;
  double lo = hi == 1.0 ? 1e-300 : hi / 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace detail

struct AberthOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-13;
  double residual_limit = 1e-10;
};

/**
 * All zeros of a real polynomial by Aberth-Ehrlich iteration.
 * `ascending` holds p_0..p_N in double precision, p_N != 0.
 * Throws error("root finder failed") when the iteration cap is hit.
 */
inline std::vector<std::complex<double>> find_zeros(std::span<const double> ascending,
                                                    const AberthOptions& opt = {}) {
  const int n = static_cast<int>(ascending.size()) - 1;
  if (n < 1) throw error("constant polynomial");
  double scale = 0.0;
  for (double c : ascending) scale = std::max(scale, std::abs(c));
  if (ascending[n] == 0.0 || !std::isfinite(scale)) throw error("invalid coefficients for root finder");
  std::vector<double> a(ascending.begin(), ascending.end());
  for (double& c : a) c /= scale;

  if (n == 1) return {std::complex<double>(-a[0] / a[1], 0.0)};

  const double radius = std::max(1.0, detail::cauchy_radius(a));
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = std::polar(radius, theta);
  }

  const double floor_error = 8.0 * (n + 1) * std::numeric_limits<double>::epsilon();
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  int remaining = n;
  for (int iter = 0; iter < opt.max_iterations && remaining > 0; ++iter) {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      auto [ratio, berr] = detail::newton_ratio(a, z[i]);
      std::complex<double> sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const std::complex<double> step = ratio / (1.0 - ratio * sum);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
      if (berr <= floor_error || std::abs(step) < opt.relative_tolerance * radius) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  if (remaining > 0) throw error("root finder failed");
  for (const auto& zi : z) {
    if (!std::isfinite(zi.real()) || !std::isfinite(zi.imag()) ||
        detail::newton_ratio(a, zi).backward_error > opt.residual_limit) {
      throw error("root finder failed");
    }
  }
  return z;
}

template <class Coeff>
std::vector<double> to_doubles(const Polynomial<Coeff>& p) {
  // Scale by the largest magnitude first so huge exact coefficients stay finite.
  Rational big = 0;
  for (const auto& c : p.coeffs()) {
    Rational m = abs(Rational(c));
    if (m > big) big = m;
  }
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    Rational q = Rational(c) / big;
    out.push_back(q.get_d());
  }
  return out;
}

/// Zeros, spectral abscissa and right half-plane count. Verdict here is numeric
/// (Stable iff every real part is negative); Boundary never comes from this path.
template <class Coeff>
StabilityReport spectral_abscissa(const Polynomial<Coeff>& p, const AberthOptions& opt = {}) {
  if (p.degree() < 1) throw error("constant polynomial");
  auto coeffs = to_doubles(p);
  auto zeros = find_zeros(coeffs, opt);
  double alpha = -std::numeric_limits<double>::infinity();
  int rhp = 0;
  for (const auto& z : zeros) {
    alpha = std::max(alpha, z.real());
    if (z.real() > 0.0) ++rhp;
  }
  StabilityReport r;
  r.verdict = alpha < 0.0 ? Verdict::Stable : Verdict::Unstable;
  r.abscissa = alpha;
  r.rhp_zero_count = rhp;
  r.zeros = std::move(zeros);
  return r;
}

// ---------------------------------------------------------------------------
// Cross-validation of the two routes

struct OracleDiscrepancy {
  IntPolynomial poly;
  Verdict exact;
  double abscissa;
};

struct OracleReport {
  std::uint64_t trials = 0;
  std::uint64_t skipped_ambiguous = 0;
  std::uint64_t root_failures = 0;
  std::uint64_t stable_count = 0;
  std::vector<OracleDiscrepancy> discrepancies;
};

namespace detail {

inline IntPolynomial random_positive_polynomial(std::uint64_t seed, std::uint64_t trial, int max_degree,
                                                int max_coeff) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<int> coef(1, max_coeff);
  const int n = deg(rng);
  std::vector<BigInt> c;
  for (int j = 0; j <= n; ++j) c.emplace_back(coef(rng));
  return IntPolynomial(std::move(c));
}

}  // namespace detail

/**
 * Compares the exact verdict with the sign of the numeric abscissa on random
 * positive-coefficient polynomials. Trials whose |abscissa| < 1e-6 are skipped.
 * The report depends only on the arguments, not on `threads`.
 */
inline OracleReport stability_oracle_check(std::uint64_t trials, int max_degree, int max_coeff,
                                           std::uint64_t seed, unsigned threads = 1) {
  if (trials < 1) throw error("trials must be >= 1");
  if (max_degree < 1 || max_coeff < 1) throw error("max_degree and max_coeff must be >= 1");
  threads = std::max(1U, threads);

  struct Outcome {
    bool skipped = false, failed = false, stable = false, mismatch = false;
    double alpha = 0.0;
    Verdict exact = Verdict::Unstable;
  };
  std::vector<Outcome> out(trials);
  auto work = [&](unsigned worker) {
    for (std::uint64_t t = worker; t < trials; t += threads) {
      auto p = detail::random_positive_polynomial(seed, t, max_degree, max_coeff);
      Outcome& o = out[t];
      o.exact = is_hurwitz_exact(p).verdict;
      o.stable = o.exact == Verdict::Stable;
      try {
        o.alpha = *spectral_abscissa(p).abscissa;
      } catch (const error&) {
        o.failed = true;
        continue;
      }
      if (std::abs(o.alpha) < 1e-6) {
        o.skipped = true;
        continue;
      }
      o.mismatch = o.stable != (o.alpha < 0.0);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  OracleReport rep;
  rep.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto& o = out[t];
    if (o.stable) ++rep.stable_count;
    if (o.failed) ++rep.root_failures;
    if (o.skipped) ++rep.skipped_ambiguous;
    if (o.mismatch) {
      rep.discrepancies.push_back(
          {detail::random_positive_polynomial(seed, t, max_degree, max_coeff), o.exact, o.alpha});
    }
  }
  return rep;
}

}  // namespace hurwitz
