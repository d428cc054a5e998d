#include <gtest/gtest.h>

#include <random>

#include "hurwitz/constructors.hpp"
#include "hurwitz/golden.hpp"
#include "hurwitz/stability.hpp"
#include "oracles.hpp"

using namespace hurwitz;

namespace {

std::vector<IntPolynomial> listed_stable() {
  std::vector<IntPolynomial> out;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : golden::c_optimal(n)) out.push_back(golden::poly(g));
  }
  for (const auto& g : golden::other_stable()) out.push_back(golden::poly(g));
  for (const auto& g : golden::a_family_table()) out.push_back(golden::poly(g));
  return out;
}

}  // namespace

TEST(Exact, SpecExamples) {
  EXPECT_EQ(is_hurwitz_exact(int_poly({1, 1, 2, 1})).verdict, Verdict::Stable);
  EXPECT_EQ(is_hurwitz_exact(int_poly({1, 1, 1, 1})).verdict, Verdict::Boundary);
  EXPECT_EQ(is_hurwitz_exact(parse_rat_polynomial(golden::kQ20)).verdict, Verdict::Unstable);
  EXPECT_EQ(is_hurwitz_exact(int_poly({1, 3})).verdict, Verdict::Stable);
  EXPECT_EQ(is_hurwitz_exact(int_poly({1, -3})).verdict, Verdict::Unstable);
  EXPECT_EQ(is_hurwitz_exact(int_poly({1, 0, 1})).verdict, Verdict::Unstable);
  try {
    is_hurwitz_exact(int_poly({5}));
    FAIL();
  } catch (const error& e) {
    EXPECT_STREQ(e.what(), "constant polynomial");
  }
}

TEST(Exact, AgreesWithHurwitzMinorsOracle) {
  std::mt19937_64 rng(42);
  int stable = 0;
  for (int t = 0; t < 20000; ++t) {
    const auto p = oracle::random_poly(rng, 9, 9, t % 4 == 0);
    const bool expect = oracle::is_stable(p);
    const auto v = is_hurwitz_exact(p).verdict;
    ASSERT_EQ(v == Verdict::Stable, expect) << format(p);
    stable += expect;
  }
  EXPECT_GT(stable, 200);
}

TEST(Exact, NoStableVerdictWithNonPositiveCoefficient) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10000; ++t) {
    const auto p = oracle::random_poly(rng, 8, 9, true);
    if (!p.all_positive()) {
      ASSERT_EQ(is_hurwitz_exact(p).verdict, Verdict::Unstable) << format(p);
    }
  }
}

TEST(Exact, DegenerateBranch) {
  // (z^2 + 1)(z + 2) and (z^2 + 4)(z^2 + z + 1) have zeros on the axis
  EXPECT_EQ(is_hurwitz_exact(multiply(int_poly({1, 0, 1}), int_poly({1, 2}))).verdict, Verdict::Boundary);
  EXPECT_EQ(is_hurwitz_exact(int_poly({1, 2, 1, 2})).verdict, Verdict::Boundary);
  EXPECT_NE(is_hurwitz_exact(int_poly({1, 1, 5, 4, 4})).verdict, Verdict::Stable);
  // a zero pivot before any sign change is reported as boundary even with zeros to the right
  EXPECT_EQ(is_hurwitz_exact(int_poly({2, 2, 9, 9, 9, 6})).verdict, Verdict::Boundary);
  EXPECT_GT(*spectral_abscissa(int_poly({2, 2, 9, 9, 9, 6})).abscissa, 0.0);
}

TEST(Exact, ReverseInvariance) {
  for (const auto& p : listed_stable()) {
    EXPECT_EQ(is_hurwitz_exact(p).verdict, Verdict::Stable) << format(p);
    EXPECT_EQ(is_hurwitz_exact(reverse(p)).verdict, Verdict::Stable) << format(p);
  }
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 10000) {
    const auto p = oracle::random_poly(rng, 8, 9);
    if (is_stable(p)) continue;
    ASSERT_FALSE(is_stable(reverse(p))) << format(p);
    ++checked;
  }
}

TEST(Exact, ProductClosure) {
  const auto all = listed_stable();
  std::vector<IntPolynomial> small;
  for (const auto& p : all) {
    if (p.degree() <= 10) small.push_back(p);
  }
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = i; j < small.size(); ++j) {
      ASSERT_TRUE(is_stable(multiply(small[i], small[j]))) << format(small[i]) << " * " << format(small[j]);
    }
  }
}

TEST(Fixed, AgreesWithRationalOnMillionCases) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> deg(1, 8), coef(1, 9), sign(0, 19);
  std::vector<std::int64_t> asc;
  std::uint64_t fallbacks = 0;
  for (int t = 0; t < 1000000; ++t) {
    asc.assign(static_cast<std::size_t>(deg(rng) + 1), 0);
    for (auto& c : asc) c = sign(rng) == 0 ? -coef(rng) : coef(rng);
    asc.back() = coef(rng);
    std::vector<Rational> r(asc.begin(), asc.end());
    const auto exact = routh_verdict(r);
    const auto fast = routh_verdict_fixed(asc);
    if (!fast) {
      ++fallbacks;
      continue;
    }
    ASSERT_EQ(*fast, exact) << "case " << t;
  }
  EXPECT_EQ(fallbacks, 0U);
}

TEST(Fixed, FallsBackOnOverflow) {
  const std::vector<std::int64_t> big = {INT64_MAX / 2, INT64_MAX / 3, INT64_MAX / 5, INT64_MAX / 7, 1};
  std::vector<Rational> r;
  for (auto c : big) r.emplace_back(std::to_string(c));
  EXPECT_EQ(routh_verdict_small(big), routh_verdict(r));
}

TEST(Numeric, SpecExamples) {
  const auto b7 = spectral_abscissa(int_poly({1, 2, 5, 7, 7, 6, 2, 1}));
  EXPECT_NEAR(*b7.abscissa, -0.0175, 5e-4);
  EXPECT_EQ(*b7.rhp_zero_count, 0);
  const auto q20 = spectral_abscissa(parse_rat_polynomial(golden::kQ20));
  EXPECT_EQ(*q20.rhp_zero_count, 6);
  const auto lin = spectral_abscissa(int_poly({1, 3}));
  EXPECT_DOUBLE_EQ(*lin.abscissa, -3.0);
}

TEST(Numeric, AbscissaIsMaxRealPartAndZerosAreRoots) {
  for (const auto& p : listed_stable()) {
    const auto r = spectral_abscissa(p);
    ASSERT_EQ(r.zeros->size(), static_cast<std::size_t>(p.degree()));
    double mx = -1e300;
    const auto asc = to_doubles(p);
    for (const auto& z : *r.zeros) {
      mx = std::max(mx, z.real());
      double mag = 0;
      for (std::size_t j = 0; j < asc.size(); ++j) mag += std::abs(asc[j]) * std::pow(std::abs(z), static_cast<double>(j));
      EXPECT_LT(std::abs(oracle::value_at(asc, z)) / mag, 1e-10) << format(p);
    }
    EXPECT_NEAR(mx, *r.abscissa, 1e-12);
    EXPECT_LT(*r.abscissa, 0.0);
    EXPECT_EQ(*r.rhp_zero_count, 0);
  }
}

TEST(Numeric, KnownRootsAndVieta) {
  const auto r = spectral_abscissa(int_poly({1, 6, 11, 6}));  // (z+1)(z+2)(z+3)
  std::vector<double> re;
  for (const auto& z : *r.zeros) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3, 1e-12);
  EXPECT_NEAR(re[1], -2, 1e-12);
  EXPECT_NEAR(re[2], -1, 1e-12);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    const auto p = oracle::random_poly(rng, 12, 9);
    const auto zs = *spectral_abscissa(p).zeros;
    std::complex<double> sum = 0;
    for (const auto& z : zs) sum += z;
    const double expect = -to_double(p[static_cast<std::size_t>(p.degree() - 1)]) / to_double(p.leading());
    EXPECT_NEAR(sum.real(), expect, 1e-7 * (1 + std::abs(expect)));
    EXPECT_NEAR(sum.imag(), 0.0, 1e-7);
  }
}

TEST(Numeric, HandlesHugeCoefficientsAndClusters) {
  const auto c20 = golden::poly(golden::other_stable()[15]);
  const auto b20 = golden::poly(golden::other_stable()[16]);
  const auto r = spectral_abscissa(multiply(c20, b20));
  EXPECT_EQ(r.zeros->size(), 40U);
  EXPECT_NEAR(*r.abscissa, -0.0038, 5e-4);
  // a triple zero set still comes back, only less accurately
  EXPECT_EQ(spectral_abscissa(power(c20, 3)).zeros->size(), 60U);
  const auto l20 = spectral_abscissa(mobius_ell(20));
  EXPECT_LT(*l20.abscissa, 0.0);
  // (z + 1)^8: eightfold zero
  const auto cl = spectral_abscissa(power(int_poly({1, 1}), 8));
  for (const auto& z : *cl.zeros) EXPECT_LT(std::abs(z + 1.0), 0.05);
}

TEST(Oracle, SpecExamples) {
  const auto big = stability_oracle_check(10000, 8, 9, 1);
  EXPECT_TRUE(big.discrepancies.empty());
  EXPECT_EQ(big.root_failures, 0U);
  EXPECT_GT(big.stable_count, 0U);
  EXPECT_TRUE(stability_oracle_check(1, 1, 1, 123).discrepancies.empty());
  EXPECT_TRUE(stability_oracle_check(100, 3, 3, 7).discrepancies.empty());
}

TEST(Oracle, DeterministicAcrossThreadCounts) {
  const auto a = stability_oracle_check(3000, 8, 9, 77, 1);
  const auto b = stability_oracle_check(3000, 8, 9, 77, 4);
  EXPECT_EQ(a.stable_count, b.stable_count);
  EXPECT_EQ(a.skipped_ambiguous, b.skipped_ambiguous);
  EXPECT_EQ(a.root_failures, b.root_failures);
  EXPECT_EQ(a.discrepancies.size(), b.discrepancies.size());
}

TEST(Report, JsonShape) {
  const auto r = spectral_abscissa(int_poly({1, 3}));
  const auto j = to_json(r);
  EXPECT_EQ(j.at("verdict"), "stable");
  EXPECT_EQ(j.at("rhp_zeros"), 0);
  EXPECT_DOUBLE_EQ(j.at("abscissa").get<double>(), -3.0);
}
