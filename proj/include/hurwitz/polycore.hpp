#pragma once

/**
 * @file polycore.hpp
 * @brief Exact univariate polynomials over big integers and rationals.
 *
 * Coefficients are stored ascending (index j holds the coefficient of z^j).
 * Text I/O follows the Matlab convention of listing the leading coefficient
 * first, e.g. z^4 + z^3 + 3z^2 + z + 1 is written "[1 1 3 1 1]".
 */

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hurwitz {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised for contract violations and computational failures.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_zero(const BigInt& x) { return sgn(x) == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline Rational canonical(Rational x) {
  x.canonicalize();
  return x;
}
inline BigInt canonical(BigInt x) { return x; }

}  // namespace detail

/// Polynomial with exact coefficients. The zero polynomial is not representable.
template <class Coeff>
class Polynomial {
 public:
  using coeff_type = Coeff;

  explicit Polynomial(std::vector<Coeff> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.empty()) throw error("empty coefficient list");
    for (auto& c : coeffs_) c = detail::canonical(std::move(c));
    if (detail::is_zero(coeffs_.back())) throw error("leading coefficient is zero");
  }

  Polynomial(std::initializer_list<Coeff> ascending)
      : Polynomial(std::vector<Coeff>(ascending)) {}

  /// Builds from the display order [p_N ... p_0].
  static Polynomial from_descending(std::vector<Coeff> desc) {
    std::reverse(desc.begin(), desc.end());
    return Polynomial(std::move(desc));
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
  [[nodiscard]] const Coeff& operator[](std::size_t j) const { return coeffs_[j]; }
  [[nodiscard]] std::span<const Coeff> coeffs() const { return coeffs_; }
  [[nodiscard]] const Coeff& leading() const { return coeffs_.back(); }
  [[nodiscard]] const Coeff& constant() const { return coeffs_.front(); }

  [[nodiscard]] std::vector<Coeff> descending() const {
    return {coeffs_.rbegin(), coeffs_.rend()};
  }

  [[nodiscard]] bool all_positive() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coeff& c) { return sgn(c) > 0; });
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Coeff> coeffs_;
};

using IntPolynomial = Polynomial<BigInt>;
using RatPolynomial = Polynomial<Rational>;

/// Convenience for literals written in display order.
inline IntPolynomial int_poly(std::initializer_list<long> desc) {
  std::vector<BigInt> c;
  c.reserve(desc.size());
  for (long v : desc) c.emplace_back(v);
  return IntPolynomial::from_descending(std::move(c));
}

inline RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

/// Schoolbook convolution.
template <class Coeff>
Polynomial<Coeff> multiply(const Polynomial<Coeff>& a, const Polynomial<Coeff>& b) {
  std::vector<Coeff> out(a.size() + b.size() - 1, Coeff(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Polynomial<Coeff>(std::move(out));
}

template <class Coeff>
Polynomial<Coeff> power(const Polynomial<Coeff>& p, unsigned k) {
  Polynomial<Coeff> result({Coeff(1)});
  Polynomial<Coeff> base = p;
  while (k > 0) {
    if (k & 1U) result = multiply(result, base);
    k >>= 1U;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

inline BigInt evaluate_at_integer(const IntPolynomial& p, const BigInt& v) {
  BigInt acc = 0;
  for (int j = p.degree(); j >= 0; --j) acc = acc * v + p[j];
  return acc;
}

template <class Coeff>
Rational evaluate_at_rational(const Polynomial<Coeff>& p, const Rational& v) {
  Rational acc = 0;
  for (int j = p.degree(); j >= 0; --j) {
    acc = acc * v + Rational(p[j]);
  }
  acc.canonicalize();
  return acc;
}

/// z^N p(1/z). Requires a nonzero constant term so the degree is kept.
template <class Coeff>
Polynomial<Coeff> reverse(const Polynomial<Coeff>& p) {
  if (detail::is_zero(p.constant())) throw error("degree-dropping reverse");
  std::vector<Coeff> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Polynomial<Coeff>(std::move(c));
}

template <class Coeff>
bool is_symmetric(const Polynomial<Coeff>& p) {
  if (p.degree() % 2 != 0) return false;
  auto c = p.coeffs();
  return std::equal(c.begin(), c.begin() + c.size() / 2, c.rbegin());
}

struct CoeffStats {
  BigInt pmax;
  BigInt sigma;
};

inline CoeffStats coeff_stats(const IntPolynomial& p) {
  CoeffStats s{p[0], 0};
  for (const auto& c : p.coeffs()) {
    if (c > s.pmax) s.pmax = c;
    s.sigma += c;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Text and JSON forms

namespace detail {

inline std::string to_text(const BigInt& x) { return x.get_str(); }
inline std::string to_text(const Rational& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_str();
}

inline std::vector<std::string> split_tokens(std::string_view text) {
  std::string body(text);
  auto first = body.find_first_not_of(" \t\r\n");
  auto last = body.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw error("empty polynomial text");
  body = body.substr(first, last - first + 1);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw error("unbalanced brackets in polynomial text");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : body) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  if (tokens.empty()) throw error("empty polynomial text");
  return tokens;
}

inline bool is_integer_token(std::string_view t) {
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) return false;
  return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

inline BigInt parse_integer(std::string_view t) {
  if (!is_integer_token(t)) throw error("not an integer: '" + std::string(t) + "'");
  std::string s(t);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

/// Integer, decimal ("59.7360") or fraction ("7/2") token.
inline Rational parse_rational(std::string_view t) {
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(t.substr(0, slash));
    BigInt den = parse_integer(t.substr(slash + 1));
    if (den == 0) throw error("zero denominator: '" + std::string(t) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view whole = t.substr(0, dot);
    std::string_view frac = t.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits(whole.substr((!whole.empty() && (whole[0] == '-' || whole[0] == '+')) ? 1 : 0));
    if (digits.empty()) digits = "0";
    if (!is_integer_token(digits) || (!frac.empty() && !is_integer_token(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
      throw error("not a decimal: '" + std::string(t) + "'");
    }
    BigInt num(digits + std::string(frac), 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(neg ? BigInt(-num) : num, den);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(t));
}

}  // namespace detail

/// Canonical display "[p_N ... p_0]".
template <class Coeff>
std::string format(const Polynomial<Coeff>& p) {
  std::string out = "[";
  for (int j = p.degree(); j >= 0; --j) {
    out += detail::to_text(p[j]);
    if (j > 0) out += ' ';
  }
  out += ']';
  return out;
}

/// Accepts optional brackets and whitespace- or comma-separated integers, leading first.
inline IntPolynomial parse_int_polynomial(std::string_view text) {
  std::vector<BigInt> desc;
  for (const auto& t : detail::split_tokens(text)) desc.push_back(detail::parse_integer(t));
  return IntPolynomial::from_descending(std::move(desc));
}

/// Like parse_int_polynomial but also accepts decimals and fractions.
inline RatPolynomial parse_rat_polynomial(std::string_view text) {
  std::vector<Rational> desc;
  for (const auto& t : detail::split_tokens(text)) desc.push_back(detail::parse_rational(t));
  return RatPolynomial::from_descending(std::move(desc));
}

/// True when every token is a plain integer.
inline bool is_integer_text(std::string_view text) {
  auto tokens = detail::split_tokens(text);
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const std::string& t) { return detail::is_integer_token(t); });
}

template <class Coeff>
nlohmann::json to_json(const Polynomial<Coeff>& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (int j = p.degree(); j >= 0; --j) arr.push_back(detail::to_text(p[j]));
  return nlohmann::json{{"coeffs_desc", std::move(arr)}};
}

inline IntPolynomial int_polynomial_from_json(const nlohmann::json& j) {
  std::vector<BigInt> desc;
  for (const auto& c : j.at("coeffs_desc")) desc.push_back(detail::parse_integer(c.get<std::string>()));
  return IntPolynomial::from_descending(std::move(desc));
}

inline RatPolynomial rat_polynomial_from_json(const nlohmann::json& j) {
  std::vector<Rational> desc;
  for (const auto& c : j.at("coeffs_desc")) desc.push_back(detail::parse_rational(c.get<std::string>()));
  return RatPolynomial::from_descending(std::move(desc));
}

/// Nearest double of an exact rational.
inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(const BigInt& x) { return x.get_d(); }

}  // namespace hurwitz
