#pragma once

// 256-bit software floating point for logarithms, roots and bounds.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

#include "hurwitz/polycore.hpp"

namespace hurwitz {

using HighReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

inline constexpr int kHighRealBits = 256;

inline HighReal to_high(const BigInt& x) { return HighReal(x.get_str()); }

inline HighReal to_high(const Rational& x) { return to_high(x.get_num()) / to_high(x.get_den()); }

/// x^(1/n) for an exact positive rational.
inline HighReal nth_root(const Rational& x, unsigned n) {
  using boost::multiprecision::pow;
  return pow(to_high(x), HighReal(1) / HighReal(n));
}

inline double to_double(const HighReal& x) { return x.convert_to<double>(); }

inline std::string to_fixed(const HighReal& x, int digits) {
  return x.str(digits, std::ios_base::fixed);
}

}  // namespace hurwitz
