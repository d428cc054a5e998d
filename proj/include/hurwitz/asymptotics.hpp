#pragma once

/**
 * @file asymptotics.hpp
 * @brief Coefficients of powers of symmetric polynomials and their Laplace asymptotics.
 *
 * A symmetric p of degree 2M is z^M f with
 *     f(x) = h_0 + 2 sum_{d=1}^{M} h_d cos(d x),  h_d = p_{M+d},
 * evaluated on the unit circle z = e^{ix}. The coefficients of p^k are the
 * Fourier coefficients of f^k, and near x = 0
 *     f(x) / sigma = 1 - tau x^2 + O(x^4),  tau = (1/sigma) sum_d d^2 h_d.
 */

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "hurwitz/constructors.hpp"
#include "hurwitz/polycore.hpp"
#include "hurwitz/real.hpp"

namespace hurwitz {

struct SymbolProfile {
  IntPolynomial base;
  std::vector<BigInt> half_coeffs;  // h_0 (middle) .. h_M (outermost)
  BigInt sigma;
  Rational tau;
  std::vector<std::pair<double, double>> samples;  // (x, f(x)/sigma) on [-pi, pi]

  /// f(x)/sigma in double precision.
  [[nodiscard]] double normalized(double x) const {
    const double c1 = std::cos(x);
    double prev = 1.0, cur = c1;  // cos(0 x), cos(1 x)
    double acc = weights_[0];
    for (std::size_t d = 1; d < weights_.size(); ++d) {
      acc += weights_[d] * cur;
      const double next = 2.0 * c1 * cur - prev;
      prev = cur;
      cur = next;
    }
    return acc;
  }

  std::vector<double> weights_;  // h_0/sigma, 2 h_d/sigma
};

/// The c_20 polynomial: b_5 = [1 1 4 3 2 1] doubled twice.
inline IntPolynomial c20_polynomial() { return double_transform(double_transform(int_poly({1, 1, 4, 3, 2, 1}))); }

inline SymbolProfile symbol_profile(const IntPolynomial& p, int grid_points = 0) {
  if (!is_symmetric(p)) throw error("symbol_profile requires a symmetric polynomial of even degree");
  if (grid_points < 0) throw error("grid_points must be nonnegative");
  const int m = p.degree() / 2;
  SymbolProfile s{p, {}, coeff_stats(p).sigma, 0, {}, {}};
  BigInt weighted = 0;
  for (int d = 0; d <= m; ++d) {
    const BigInt& h = p[static_cast<std::size_t>(m + d)];
    s.half_coeffs.push_back(h);
    weighted += BigInt(d) * d * h;
  }
  if (sgn(s.sigma) == 0) throw error("symbol_profile requires a nonzero coefficient sum");
  s.tau = Rational(weighted, s.sigma);
  s.tau.canonicalize();
  for (int d = 0; d <= m; ++d) {
    Rational w(s.half_coeffs[static_cast<std::size_t>(d)] * (d == 0 ? 1 : 2), s.sigma);
    s.weights_.push_back(w.get_d());
  }
  if (grid_points == 1) {
    s.samples.emplace_back(0.0, s.normalized(0.0));
  } else if (grid_points > 1) {
    for (int i = 0; i < grid_points; ++i) {
      const double x = -std::numbers::pi + 2.0 * std::numbers::pi * i / (grid_points - 1);
      s.samples.emplace_back(x, s.normalized(x));
    }
  }
  return s;
}

/// Grid verification of the envelope used for the max-coefficient bound (not a certificate).
struct EnvelopeCheck {
  bool inner_positive = true;       // f/sigma > 0 on |x| < 1
  bool inner_below_gaussian = true; // f/sigma <= e^{-rate x^2} on |x| < 1
  bool outer_small = true;          // |f/sigma| < 1/2 on 1 <= |x| <= pi
  bool positive_everywhere = true;  // f > 0 on [-pi, pi]
  double max_outer = 0.0;
  double min_value = 1.0;
  double min_gaussian_margin = 1.0;  // min of e^{-rate x^2} - f/sigma over |x| < 1
  int points = 0;
};

inline EnvelopeCheck envelope_check(const SymbolProfile& s, int grid_points = 100000, double rate = 3.5) {
  if (grid_points < 2) throw error("envelope_check needs at least two grid points");
  EnvelopeCheck e;
  e.points = grid_points;
  for (int i = 0; i < grid_points; ++i) {
    const double x = -std::numbers::pi + 2.0 * std::numbers::pi * i / (grid_points - 1);
    const double v = s.normalized(x);
    e.min_value = std::min(e.min_value, v);
    if (v <= 0.0) e.positive_everywhere = false;
    if (std::abs(x) < 1.0) {
      if (v <= 0.0) e.inner_positive = false;
      const double margin = std::exp(-rate * x * x) - v;
      e.min_gaussian_margin = std::min(e.min_gaussian_margin, margin);
      // at x = 0 both sides are 1; allow rounding of the normalized sum there
      if (margin < -1e-12) e.inner_below_gaussian = false;
    } else {
      e.max_outer = std::max(e.max_outer, std::abs(v));
      if (std::abs(v) >= 0.5) e.outer_small = false;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Exact powers versus the Laplace estimate

struct PowerMaximum {
  unsigned k = 0;
  BigInt exact_max;
  HighReal laplace;  // sigma^k / sqrt(4 pi tau k)
  double ratio = 0.0;
};

namespace detail {

inline HighReal laplace_estimate(const BigInt& sigma, const Rational& tau, unsigned k) {
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const HighReal pi = boost::math::constants::pi<HighReal>();
  return pow(to_high(sigma), HighReal(k)) / sqrt(4 * pi * to_high(tau) * HighReal(k));
}

inline BigInt max_coefficient(const IntPolynomial& p) { return coeff_stats(p).pmax; }

}  // namespace detail

inline PowerMaximum max_coefficient_of_power(const IntPolynomial& p, unsigned k) {
  if (k < 1) throw error("k must be >= 1");
  const auto prof = symbol_profile(p);
  PowerMaximum r;
  r.k = k;
  r.exact_max = detail::max_coefficient(power(p, k));
  r.laplace = detail::laplace_estimate(prof.sigma, prof.tau, k);
  r.ratio = to_double(to_high(r.exact_max) / r.laplace);
  return r;
}

/// Max coefficients of p^1 .. p^{k_max}, built incrementally.
inline std::vector<PowerMaximum> power_maxima(const IntPolynomial& p, unsigned k_max) {
  const auto prof = symbol_profile(p);
  std::vector<PowerMaximum> out;
  IntPolynomial cur = p;
  for (unsigned k = 1; k <= k_max; ++k) {
    if (k > 1) cur = multiply(cur, p);
    PowerMaximum r;
    r.k = k;
    r.exact_max = detail::max_coefficient(cur);
    r.laplace = detail::laplace_estimate(prof.sigma, prof.tau, k);
    r.ratio = to_double(to_high(r.exact_max) / r.laplace);
    out.push_back(std::move(r));
  }
  return out;
}

struct Theorem52Report {
  int degree = 0;
  BigInt witness_max;  // largest coefficient of c_20^{N/20}
  HighReal upper;      // 1.56^N (0.68/sqrt(N) + 0.97^N)
  HighReal lower;      // 1.41^N / N, a bound for the unknown p_max(N)
  bool holds = false;  // witness_max < upper
  double ratio = 0.0;  // witness_max / upper
};

inline Theorem52Report theorem52_bound_check(int degree) {
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  if (degree <= 0 || degree % 20 != 0) throw error("theorem52_bound_check requires N divisible by 20");
  if (degree > 800) throw error("theorem52_bound_check supports N <= 800");
  const HighReal n(degree);
  Theorem52Report r;
  r.degree = degree;
  r.witness_max = detail::max_coefficient(power(c20_polynomial(), static_cast<unsigned>(degree / 20)));
  r.upper = pow(HighReal("1.56"), n) * (HighReal("0.68") / sqrt(n) + pow(HighReal("0.97"), n));
  r.lower = pow(HighReal("1.41"), n) / n;
  const HighReal w = to_high(r.witness_max);
  r.holds = w < r.upper;
  r.ratio = to_double(w / r.upper);
  return r;
}

// ---------------------------------------------------------------------------
// Fourier side

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int max_depth = 40) {
  struct Rec {
    const std::function<double(double)>& f;
    int max_depth;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) + run(m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
    }
  };
  Rec rec{f, max_depth};
  // Start from a few panels so periodic integrands cannot fool the first estimate.
  constexpr int panels = 16;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    total += rec.run(lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), tol / panels, 0);
  }
  return total;
}

/// (1/2pi) int_{-pi}^{pi} (f/sigma)^k cos(j x) dx, i.e. c_j(k) / sigma^k.
inline double fourier_coefficient_normalized(const SymbolProfile& s, unsigned k, int j, double tol = 1e-10) {
  auto g = [&](double x) { return std::pow(s.normalized(x), static_cast<double>(k)) * std::cos(j * x); };
  return adaptive_simpson(g, 0.0, std::numbers::pi, tol * std::numbers::pi) / std::numbers::pi;
}

struct FourierBound {
  BigInt exact;             // c_j(k)
  double exact_normalized;  // c_j(k) / sigma^k
  double bound_normalized;  // (1/2pi) int |f/sigma|^k
  bool holds = false;       // exact <= bound (1 + 1e-9)
};

/// Exact coefficient c_j(k) of p^k (offset j from the middle) and the |f|^k integral bound.
inline FourierBound fourier_coefficient_bound(const IntPolynomial& p, unsigned k, int j) {
  if (k < 1) throw error("k must be >= 1");
  const auto s = symbol_profile(p);
  const int half = static_cast<int>(k) * p.degree() / 2;
  if (std::abs(j) > half) throw error("|j| exceeds k * deg(p) / 2");
  const auto pk = power(p, k);
  FourierBound r;
  r.exact = pk[static_cast<std::size_t>(half + j)];
  BigInt sk;
  mpz_pow_ui(sk.get_mpz_t(), s.sigma.get_mpz_t(), k);
  r.exact_normalized = Rational(r.exact, sk).get_d();
  auto g = [&](double x) { return std::pow(std::abs(s.normalized(x)), static_cast<double>(k)); };
  r.bound_normalized = adaptive_simpson(g, 0.0, std::numbers::pi, 1e-10 * std::numbers::pi) / std::numbers::pi;
  r.holds = r.exact_normalized <= r.bound_normalized * (1.0 + 1e-9);
  return r;
}

}  // namespace hurwitz
