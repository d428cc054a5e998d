#pragma once

// Reference tables: published coefficient lists, abscissas and bounds.

#include <optional>
#include <string_view>
#include <vector>

#include "hurwitz/polycore.hpp"

namespace hurwitz::golden {

struct EllEntry {
  int degree;
  std::string_view coeffs;
};

inline const std::vector<EllEntry>& ell_table() {
  static const std::vector<EllEntry> t = {
      {1, "[1 3]"},
      {2, "[1 1 2]"},
      {3, "[1 7 3 5]"},
      {4, "[1 2 8 2 3]"},
      {6, "[1 3 18 10 25 3 4]"},
      {10, "[1 5 50 60 270 126 336 60 105 5 6]"},
      {16, "[1 8 128 280 2100 2184 10192 5720 18590 5720 13728 2184 4004 280 400 8 9]"},
      {20,
       "[1 10 200 570 5415 7752 46512 38760 164730 83980 268736 83980 209950 38760 77520 7752 12597 570 760 "
       "10 11]"},
  };
  return t;
}

struct NamedPoly {
  std::string_view name;
  std::string_view coeffs;
  std::optional<double> alpha;  // printed to 4 decimals
  long sigma;
};

inline IntPolynomial poly(const NamedPoly& p) { return parse_int_polynomial(p.coeffs); }

/// Full list of c-optimal polynomials for degree N, in printed order.
inline const std::vector<NamedPoly>& c_optimal(int degree) {
  static const std::vector<std::vector<NamedPoly>> t = {
      {},
      {{"a_1", "[1 1]", -1.0, 2}},
      {{"a_2", "[1 1 1]", -0.5, 3}},
      {{"b_3", "[1 1 2 1]", -0.2151, 5},
       {"c_3", "[1 2 1 1]", -0.1226, 5},
       {"d_3", "[1 2 2 1]", -0.5000, 6},
       {"e_3", "[1 2 2 2]", -0.2282, 7},
       {"f_3", "[2 2 2 1]", -0.1761, 7}},
      {{"a_4", "[1 1 3 1 1]", -0.1484, 7},
       {"c_4", "[1 1 3 2 1]", -0.1049, 8},
       {"d_4", "[1 2 3 1 1]", -0.0433, 8},
       {"e_4", "[1 2 3 2 1]", -0.5000, 9},
       {"f_4", "[1 2 3 3 1]", -0.2151, 10},
       {"g_4", "[1 3 3 2 1]", -0.1226, 10},
       {"h_4", "[1 2 3 3 2]", -0.0433, 11},
       {"i_4", "[1 3 3 3 1]", -0.1910, 11},
       {"j_4", "[2 3 3 2 1]", -0.0287, 11}},
      {{"b_5", "[1 1 4 3 2 1]", -0.0835, 12},
       {"c_5", "[1 2 3 4 1 1]", -0.0320, 12},
       {"d_5", "[1 1 4 3 3 1]", -0.0582, 13},
       {"e_5", "[1 2 3 4 2 1]", -0.0354, 13},
       {"f_5", "[1 2 4 3 2 1]", -0.0204, 13},
       {"g_5", "[1 3 3 4 1 1]", -0.0203, 13},
       {"h_5", "[1 2 4 4 2 1]", -0.1484, 14},
       {"i_5", "[1 2 4 4 3 1]", -0.2151, 15},
       {"j_5", "[1 3 4 4 2 1]", -0.1226, 15}},
      {{"b_6", "[1 1 5 3 5 1 1]", -0.0485, 17},
       {"c_6", "[1 1 5 4 5 2 1]", -0.0393, 19},
       {"d_6", "[1 2 4 5 4 2 1]", -0.0399, 19},
       {"e_6", "[1 2 5 4 5 1 1]", -0.0108, 19},
       {"f_6", "[1 2 5 5 5 2 1]", -0.1484, 21}},
      {{"b_7", "[1 2 5 7 7 6 2 1]", -0.0175, 31},
       {"c_7", "[1 2 6 7 7 5 2 1]", -0.0077, 31}},
  };
  if (degree < 1 || degree >= static_cast<int>(t.size())) throw error("no c-optimal table for this degree");
  return t[static_cast<std::size_t>(degree)];
}

inline const std::vector<int>& published_sigma() {
  static const std::vector<int> s = {2, 3, 5, 7, 12, 17};  // N = 1..6
  return s;
}

/// Names of the sigma-optimal polynomials among c_optimal(N).
inline std::vector<std::string_view> sigma_optimal_names(int degree) {
  switch (degree) {
    case 1: return {"a_1"};
    case 2: return {"a_2"};
    case 3: return {"b_3", "c_3"};
    case 4: return {"a_4"};
    case 5: return {"b_5", "c_5"};
    case 6: return {"b_6"};
    default: throw error("no sigma-optimal list for this degree");
  }
}

/// Other stable polynomials with printed data.
inline const std::vector<NamedPoly>& other_stable() {
  static const std::vector<NamedPoly> t = {
      {"d_7", "[1 2 5 8 5 6 1 1]", -0.0131, 29},
      {"e_7", "[1 3 4 9 4 6 1 1]", -0.0526, 29},
      {"b_8", "[1 2 7 8 13 8 7 2 1]", -0.1484, 49},
      {"a_8", "[1 1 7 4 13 4 7 1 1]", -0.0518, 39},
      {"c_8", "[1 2 6 9 11 10 7 2 1]", -0.0171, 49},
      {"d_8", "[1 2 6 9 11 11 7 3 1]", -0.0075, 51},
      {"e_8", "[1 2 7 11 11 11 6 3 1]", -0.0135, 53},
      {"b_10", "[1 2 8 12 20 21 20 12 8 2 1]", -0.0117, 107},
      {"b_12", "[1 2 10 15 35 37 53 37 35 15 10 2 1]", -0.0134, 253},
      {"b_14", "[1 2 12 20 51 68 101 101 101 68 51 20 12 2 1]", -0.0050, 611},
      {"b_16", "[1 2 14 23 75 97 197 192 271 192 197 97 75 23 14 2 1]", -0.0042, 1473},
      {"b_18", "[1 2 16 27 98 139 303 353 523 479 523 353 303 139 98 27 16 2 1]", -0.0046, 3403},
      {"b_10^2",
       "[1 4 20 56 152 314 588 920 1288 1548 1667 1548 1288 920 588 314 152 56 20 4 1]", -0.0117, 11449},
      {"a_2 b_18",
       "[1 3 19 45 141 264 540 795 1179 1355 1525 1355 1179 795 540 264 141 45 19 3 1]", -0.0046, 10209},
      {"c_10", "[1 1 9 7 24 13 24 7 9 1 1]", std::nullopt, 97},
      {"c_20",
       "[1 1 19 16 141 98 540 303 1179 523 1525 523 1179 303 540 98 141 16 19 1 1]", -0.0067, 7167},
      {"b_20",
       "[1 2 18 30 129 177 484 537 1046 920 1349 920 1046 537 484 177 129 30 18 2 1]", -0.0038, 8037},
  };
  return t;
}

/// Doubling sources: doubling the first gives the second.
inline const std::vector<std::pair<std::string_view, std::string_view>>& doubling_pairs() {
  static const std::vector<std::pair<std::string_view, std::string_view>> t = {
      {"c_5", "b_10"}, {"d_6", "b_12"}, {"d_7", "b_14"}, {"c_8", "b_16"},
      {"b_5", "c_10"}, {"c_10", "c_20"}, {"b_10", "b_20"}, {"a_4", "a_8"},
  };
  return t;
}

/// a_{2^n} for n = 1..5 with coefficient sums.
inline const std::vector<NamedPoly>& a_family_table() {
  static const std::vector<NamedPoly> t = {
      {"a_2", "[1 1 1]", std::nullopt, 3},
      {"a_4", "[1 1 3 1 1]", std::nullopt, 7},
      {"a_8", "[1 1 7 4 13 4 7 1 1]", std::nullopt, 39},
      {"a_16", "[1 1 15 11 83 45 220 88 303 88 220 45 83 11 15 1 1]", std::nullopt, 1231},
      {"a_32",
       "[1 1 31 26 413 293 3141 1896 15261 7866 50187 22122 115410 43488 189036 60753 222621 60753 189036 "
       "43488 115410 22122 50187 7866 15261 1896 3141 293 413 26 31 1 1]",
       std::nullopt, 1242471},
  };
  return t;
}

inline constexpr double kA32AtTwoMantissa = 1.2791;  // a_32(2) ~ 1.2791e12
inline constexpr int kA32AtTwoExponent = 12;

/// Four-digit truncation of (z^2 + 0.2 z + 1)^10; six zeros in the right half-plane.
inline constexpr std::string_view kQ20 =
    "[1.0000 2.0000 11.8000 18.9600 59.7360 78.8006 172.4294 188.5647 315.8939 286.4110 384.8009 286.4110 "
    "315.8939 188.5647 172.4294 78.8006 59.7360 18.9600 11.8000 2.0000 1.0000]";
inline constexpr int kQ20RightHalfPlaneZeros = 6;

struct ExtremalRow {
  int degree;
  long pmax;
  bool pmax_exact;
  long sigma;
  bool sigma_exact;
};

inline const std::vector<ExtremalRow>& pmax_sigma_table() {
  static const std::vector<ExtremalRow> t = {
      {1, 1, true, 2, true},        {2, 1, true, 3, true},       {3, 2, true, 5, true},
      {4, 3, true, 7, true},        {5, 4, true, 12, true},      {6, 5, true, 17, true},
      {7, 7, true, 29, false},      {8, 11, true, 39, false},    {10, 21, false, 97, false},
      {20, 1349, false, 7167, false}, {32, 222621, false, 1242471, false},
  };
  return t;
}

struct WuColumn {
  int k;
  long sigma;
  double printed_root;  // sigma^{1/k} rounded up to two decimals
};

inline const std::vector<WuColumn>& wu_table() {
  static const std::vector<WuColumn> t = {
      {1, 2, 2.0},     {2, 3, 1.74},    {3, 5, 1.72},     {4, 7, 1.63},
      {5, 12, 1.65},   {6, 17, 1.61},   {7, 29, 1.62},    {8, 39, 1.59},
      {10, 97, 1.59},  {20, 7167, 1.56}, {32, 1242471, 1.56},
  };
  return t;
}

struct GammaRow {
  int k;
  double exp_gamma_k;
  double gamma_k;
};

inline const std::vector<GammaRow>& gamma_rows() {
  static const std::vector<GammaRow> t = {
      {1, 1.0, 0.0}, {2, 1.1892, 0.1733}, {3, 1.3335, 0.2878}, {4, 1.4252, 0.3544}};
  return t;
}

inline constexpr double kGamma = 0.4329;
inline constexpr double kExpGamma = 1.5417;
inline constexpr double kBetaLower = 1.4142;
inline constexpr double kBetaUpperA32 = 1.5504;
inline constexpr double kTwentiethRootC20 = 1.5587;

struct KfoldPrinted {
  int k;
  unsigned long lower_radicand;
  unsigned lower_index;
  double lower;
  unsigned long upper_radicand;
  unsigned upper_index;
  double upper;
};

inline const std::vector<KfoldPrinted>& kfold_rows() {
  static const std::vector<KfoldPrinted> t = {
      {1, 5, 4, 1.4953, 3, 2, 1.7320},
      {2, 29, 8, 1.5233, 7, 4, 1.6265},
      {3, 941, 16, 1.5340, 39, 8, 1.5808},
  };
  return t;
}

/// v_0 .. v_4 as num/den.
inline const std::vector<std::pair<long, long>>& v_terms() {
  static const std::vector<std::pair<long, long>> t = {{1, 1}, {2, 1}, {5, 2}, {29, 10}, {941, 290}};
  return t;
}

inline constexpr long kTauNumerator = 26313;
inline constexpr long kTauDenominator = 7167;
inline constexpr long kC20Sigma = 7167;
inline constexpr long kC20Max = 1525;

inline constexpr long kTwoPow25 = 33554432;
inline constexpr long kDegree50Floor = 650000;
inline constexpr int kFirstDegreeOver10000 = 38;

}  // namespace hurwitz::golden
