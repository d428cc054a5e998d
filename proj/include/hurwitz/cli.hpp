#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end. `run` is the whole program minus signal setup,
 *        so tests can drive it with argument vectors and string streams.
 *
 * Exit codes: 0 success, 1 computational error or failed reproduction, 2 usage error.
 */

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurwitz/asymptotics.hpp"
#include "hurwitz/bounds.hpp"
#include "hurwitz/constructors.hpp"
#include "hurwitz/golden.hpp"
#include "hurwitz/optsearch.hpp"
#include "hurwitz/polycore.hpp"
#include "hurwitz/stability.hpp"

namespace hurwitz::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Set from a signal handler to stop long searches between shards.
inline std::atomic<bool>& cancel_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Run manifests

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC
  std::vector<std::string> outputs;
};

inline nlohmann::json to_json(const RunManifest& m) {
  return {{"subcommand", m.subcommand}, {"parameters", m.parameters}, {"tool_version", m.tool_version},
          {"timestamp", m.timestamp},   {"outputs", m.outputs}};
}

inline std::string utc_timestamp(const char* fmt = "%Y-%m-%dT%H:%M:%SZ") {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

/// Writes the manifest under a fresh name in `dir`; existing files are never touched.
inline std::filesystem::path write_manifest(const std::filesystem::path& dir, RunManifest m) {
  std::filesystem::create_directories(dir);
  if (m.timestamp.empty()) m.timestamp = utc_timestamp();
  const std::string stem = "manifest-" + m.subcommand + "-" + utc_timestamp("%Y%m%dT%H%M%SZ");
  const std::string text = to_json(m).dump(2) + "\n";
  for (int n = 0; n < 100000; ++n) {
    const auto path = dir / (stem + "-" + std::to_string(n) + ".json");
    std::FILE* f = std::fopen(path.c_str(), "wx");  // exclusive create
    if (f == nullptr) {
      if (std::filesystem::exists(path)) continue;
      throw error("cannot create manifest in " + dir.string());
    }
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    std::fclose(f);
    if (!ok) throw error("failed writing manifest " + path.string());
    return path;
  }
  throw error("no free manifest name in " + dir.string());
}

// ---------------------------------------------------------------------------
// Output helpers

inline std::ostringstream classic_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  return os;
}

inline std::string fixed(double x, int digits) {
  auto os = classic_stream();
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

inline void write_zeros_csv(std::ostream& os, const std::vector<std::complex<double>>& zeros) {
  auto buf = classic_stream();
  buf << std::setprecision(17) << "re,im\n";
  for (const auto& z : zeros) buf << z.real() << ',' << z.imag() << '\n';
  os << buf.str();
}

inline IntPolynomial parse_int_arg(const std::string& text) {
  try {
    return parse_int_polynomial(text);
  } catch (const error& e) {
    throw usage_error(std::string("bad --poly: ") + e.what());
  }
}

inline RatPolynomial parse_rat_arg(const std::string& text) {
  try {
    return parse_rat_polynomial(text);
  } catch (const error& e) {
    throw usage_error(std::string("bad --poly: ") + e.what());
  }
}

inline nlohmann::json poly_json(const IntPolynomial& p) {
  const auto s = coeff_stats(p);
  return {{"poly", format(p)}, {"degree", p.degree()}, {"sigma", s.sigma.get_str()}, {"pmax", s.pmax.get_str()},
          {"verdict", to_string(is_hurwitz_exact(p).verdict)}};
}

// ---------------------------------------------------------------------------
// Reproduction of the reference tables

struct ReproduceReport {
  std::string id;
  std::vector<std::string> lines;          // human-readable progress
  std::vector<std::string> discrepancies;  // empty on success
  std::string csv;                         // figure data, if any
  [[nodiscard]] bool ok() const { return discrepancies.empty(); }
};

inline std::vector<std::string> reproduce_ids() {
  return {"ell-table",      "optimal-N1",       "optimal-N2",  "optimal-N3",   "optimal-N4",
          "optimal-N5",     "optimal-N6",       "optimal-N7",  "optimal-N8",   "afamily",
          "pmax-sigma-table", "beta-table",     "kfold-table", "figure1-data", "figure2-data",
          "figure3-data",   "figure4-data",     "figure5-data"};
}

namespace detail {

class Checker {
 public:
  explicit Checker(ReproduceReport& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    if (ok) {
      r_.lines.push_back("ok   " + what);
    } else {
      r_.lines.push_back("FAIL " + what);
      r_.discrepancies.push_back(what);
    }
  }
  void note(const std::string& s) { r_.lines.push_back("     " + s); }

 private:
  ReproduceReport& r_;
};

inline const golden::NamedPoly& find_named(std::string_view name) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : golden::c_optimal(n)) {
      if (p.name == name) return p;
    }
  }
  for (const auto& p : golden::other_stable()) {
    if (p.name == name) return p;
  }
  for (const auto& p : golden::a_family_table()) {
    if (p.name == name) return p;
  }
  throw error("unknown reference polynomial " + std::string(name));
}

/// Exact stability, coefficient sum and abscissa of a listed polynomial.
inline void check_listed(Checker& c, const golden::NamedPoly& g) {
  const auto p = golden::poly(g);
  const auto verdict = is_hurwitz_exact(p).verdict;
  c.check(verdict == Verdict::Stable, std::string(g.name) + " " + format(p) + " is stable");
  c.check(coeff_stats(p).sigma == g.sigma, std::string(g.name) + " sigma = " + std::to_string(g.sigma));
  if (g.alpha) {
    const double a = *spectral_abscissa(p).abscissa;
    c.check(std::abs(a - *g.alpha) <= 5e-4,
            std::string(g.name) + " alpha = " + fixed(a, 4) + " (listed " + fixed(*g.alpha, 4) + ")");
  }
}

inline std::vector<std::string> formatted(const std::vector<Witness>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(format(w.poly));
  return out;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

inline void reproduce_optimal(int n, unsigned threads, Checker& c) {
  SearchOptions opt;
  opt.threads = threads;
  const auto& table = golden::pmax_sigma_table();
  const auto row = *std::find_if(table.begin(), table.end(), [&](const auto& r) { return r.degree == n; });
  const auto& listed = golden::c_optimal(n);
  for (const auto& g : listed) check_listed(c, g);

  const auto cres = search_c_optimal(n, row.pmax, opt);
  c.check(cres.optimum && static_cast<long>(*cres.optimum) == row.pmax,
          "p_max(" + std::to_string(n) + ") = " + std::to_string(row.pmax));
  std::vector<std::string> expect;
  for (const auto& g : listed) expect.push_back(format(golden::poly(g)));
  const auto found = formatted(cres.witnesses);
  c.check(found == expect, "c-optimal list (" + std::to_string(expect.size()) + "): " + join(found));

  const auto sres = search_sigma_optimal(n, row.sigma, opt);
  c.check(sres.optimum && static_cast<long>(*sres.optimum) == row.sigma,
          "sigma(" + std::to_string(n) + ") = " + std::to_string(row.sigma));
  std::vector<std::string> sexpect;
  for (auto name : golden::sigma_optimal_names(n)) sexpect.push_back(format(golden::poly(find_named(name))));
  const auto sfound = formatted(sres.witnesses);
  c.check(sfound == sexpect, "sigma-optimal list: " + join(sfound));
}

inline void reproduce_optimal7(unsigned threads, Checker& c) {
  SearchOptions opt;
  opt.threads = threads;
  for (const auto& g : golden::c_optimal(7)) check_listed(c, g);
  const auto box = count_stable_in_box(7, 7, opt);
  c.check(box.candidates == 5764801ULL, "box {1..7}^8 covers " + std::to_string(box.candidates) + " candidates");
  std::vector<std::string> got;
  for (const auto& p : box.witnesses) got.push_back(format(p));
  c.check(box.count == 2 && got == std::vector<std::string>{"[1 2 5 7 7 6 2 1]", "[1 2 6 7 7 5 2 1]"},
          "stable in box: " + join(got));
  const auto cres = search_c_optimal(7, 7, opt);
  c.check(cres.optimum && *cres.optimum == 7, "p_max(7) = 7");

  for (auto name : {"d_7", "e_7"}) check_listed(c, find_named(name));
  const auto sres = search_sigma_optimal(7, 29, opt);
  c.check(sres.optimum.has_value() && *sres.optimum <= 29,
          "sigma(7) = " + (sres.optimum ? std::to_string(*sres.optimum) : std::string("none")) + " <= 29");
  const auto sfound = formatted(sres.witnesses);
  const std::set<std::string> have(sfound.begin(), sfound.end());
  c.check(have.count("[1 2 5 8 5 6 1 1]") && have.count("[1 3 4 9 4 6 1 1]"),
          "sigma(7) witnesses include d_7 and e_7: " + join(sfound));
}

inline void reproduce_optimal8(unsigned threads, Checker& c) {
  SearchOptions opt;
  opt.threads = threads;
  for (auto name : {"b_8", "a_8", "c_8", "d_8", "e_8"}) check_listed(c, find_named(name));
  const auto cres = search_c_optimal(8, 11, opt);
  c.check(cres.optimum && *cres.optimum == 11, "p_max(8) = 11");
  std::set<std::string> expect;
  for (auto name : {"c_8", "d_8", "e_8"}) {
    const auto p = golden::poly(find_named(name));
    expect.insert(format(p));
    expect.insert(format(reverse(p)));
  }
  const auto found = formatted(cres.witnesses);
  c.check(std::set<std::string>(found.begin(), found.end()) == expect && found.size() == 6,
          "c-optimal list: c_8, d_8, e_8 and reverses (" + std::to_string(found.size()) + " found)");
  const auto sres = search_sigma_optimal(8, 39, opt);
  c.check(sres.optimum && *sres.optimum == 39 && formatted(sres.witnesses) == std::vector<std::string>{
                                                                                  "[1 1 7 4 13 4 7 1 1]"},
          "sigma(8) = 39 with a_8 the only witness");
}

inline void reproduce_afamily(Checker& c) {
  const auto chain = a_family(5);
  const auto& table = golden::a_family_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& stage = chain.stages[i + 1];
    c.check(stage == golden::poly(table[i]), std::string(table[i].name) + " coefficients");
    c.check(chain.sums[i + 1] == table[i].sigma, std::string(table[i].name) + " sigma = " +
                                                     std::to_string(table[i].sigma));
    c.check(is_stable(stage), std::string(table[i].name) + " is stable");
  }
  const BigInt at2 = evaluate_at_integer(chain.result, 2);
  const BigInt lead = at2 / BigInt("100000000");
  c.check(lead == 12791, "a_32(2) = " + at2.get_str() + " (leading digits 12791)");
  c.check(kfold_symmetry_order(chain.result) == 5, "a_32 is 5-fold symmetric");
  for (const auto& [from, to] : golden::doubling_pairs()) {
    const auto d = double_transform(golden::poly(find_named(from)));
    c.check(d == golden::poly(find_named(to)), "doubling " + std::string(from) + " gives " + std::string(to));
  }
  const auto b10 = golden::poly(find_named("b_10"));
  c.check(multiply(b10, b10) == golden::poly(find_named("b_10^2")), "b_10^2 coefficients");
  c.check(multiply(golden::poly(find_named("a_2")), golden::poly(find_named("b_18"))) ==
              golden::poly(find_named("a_2 b_18")),
          "a_2 b_18 coefficients");
  for (const auto& g : golden::other_stable()) check_listed(c, g);
}

inline void reproduce_pmax_sigma(unsigned threads, Checker& c) {
  SearchOptions opt;
  opt.threads = threads;
  for (const auto& row : golden::pmax_sigma_table()) {
    const std::string n = std::to_string(row.degree);
    if (row.degree <= 8) {
      const auto cres = search_c_optimal(row.degree, row.pmax, opt);
      c.check(cres.optimum && static_cast<long>(*cres.optimum) == row.pmax, "p_max(" + n + ") = " +
                                                                              std::to_string(row.pmax));
    }
    if (row.sigma_exact) {
      const auto sres = search_sigma_optimal(row.degree, row.sigma, opt);
      c.check(sres.optimum && static_cast<long>(*sres.optimum) == row.sigma, "sigma(" + n + ") = " +
                                                                               std::to_string(row.sigma));
    }
  }
  // Upper bounds from explicit stable witnesses.
  struct Bound {
    int degree;
    std::string_view name;
    bool by_pmax;
    long value;
  };
  const Bound witnesses[] = {{7, "d_7", false, 29},    {8, "a_8", false, 39},      {10, "b_10", true, 21},
                             {10, "c_10", false, 97},  {20, "b_20", true, 1349},   {20, "c_20", false, 7167},
                             {32, "a_32", true, 222621}, {32, "a_32", false, 1242471}};
  for (const auto& w : witnesses) {
    const auto p = golden::poly(find_named(w.name));
    const auto s = coeff_stats(p);
    const BigInt v = w.by_pmax ? s.pmax : s.sigma;
    c.check(p.degree() == w.degree && is_stable(p) && v == w.value,
            std::string(w.by_pmax ? "p_max(" : "sigma(") + std::to_string(w.degree) +
                ") <= " + std::to_string(w.value) + " via " + std::string(w.name));
  }
}

inline void reproduce_beta(Checker& c) {
  const auto table = beta_bounds(3);
  const auto& g = table.gamma;
  for (const auto& row : golden::gamma_rows()) {
    const double e = to_double(g.exp_partials[static_cast<std::size_t>(row.k - 1)]);
    const double gk = to_double(g.partials[static_cast<std::size_t>(row.k - 1)]);
    c.check(std::abs(e - row.exp_gamma_k) <= 1e-4 && std::abs(gk - row.gamma_k) <= 1e-4,
            "e^gamma_" + std::to_string(row.k) + " = " + fixed(e, 6) + ", gamma_" + std::to_string(row.k) + " = " +
                fixed(gk, 6));
  }
  const double gamma = to_double(g.gamma), eg = to_double(g.exp_gamma);
  c.check(std::abs(gamma - golden::kGamma) <= 1e-4, "gamma = " + fixed(gamma, 8));
  c.check(std::abs(eg - golden::kExpGamma) <= 1e-4, "e^gamma = " + fixed(eg, 8));
  const double lo = to_double(table.beta_lower.value());
  const double hi = to_double(table.beta_upper_a32.value());
  c.check(std::abs(lo - golden::kBetaLower) <= 1e-4, "beta >= sqrt 2 = " + fixed(lo, 6));
  c.check(std::abs(hi - golden::kBetaUpperA32) <= 1e-4, "beta <= 1242471^(1/32) = " + fixed(hi, 6));
  const double r20 = to_double(nth_root(Rational(golden::kC20Sigma), 20));
  c.check(std::abs(r20 - golden::kTwentiethRootC20) <= 1e-4, "7167^(1/20) = " + fixed(r20, 6));
  c.check(to_double(table.beta_upper) < 1.55 && lo > 1.41, "1.41 < beta_lower and e^gamma < 1.55");
  for (const auto& w : golden::wu_table()) {
    const double root = to_double(nth_root(Rational(w.sigma), static_cast<unsigned>(w.k)));
    c.check(root <= w.printed_root + 1e-12 && w.printed_root - root < 0.02,
            "sigma(" + std::to_string(w.k) + ")^(1/" + std::to_string(w.k) + ") = " + fixed(root, 5) +
                " <= " + fixed(w.printed_root, 2));
  }
  const auto seq = v_sequence(4);
  for (std::size_t i = 0; i < golden::v_terms().size(); ++i) {
    const auto [num, den] = golden::v_terms()[i];
    c.check(seq.exact[i] == Rational(num, den), "v_" + std::to_string(i) + " = " + seq.exact[i].get_str());
  }
  const Rational floor50 = corollary_pmax_floor(50);
  c.check(floor50 == Rational(golden::kTwoPow25, 51) && floor50 > golden::kDegree50Floor,
          "2^25/51 = " + floor50.get_str() + " > 650000");
  const int first = first_even_degree_with_floor_above(Rational(10000));
  c.check(first == golden::kFirstDegreeOver10000, "first even N with 2^(N/2)/(N+1) > 10000 is " +
                                                      std::to_string(first));
}

inline void reproduce_kfold(Checker& c) {
  for (const auto& row : golden::kfold_rows()) {
    const auto k = kfold_row(row.k);
    const double lo = to_double(k.lower.value()), hi = to_double(k.upper.value());
    c.check(k.lower.radicand == Rational(static_cast<long>(row.lower_radicand)) && k.lower.index == row.lower_index,
            "k=" + std::to_string(row.k) + " lower = " + k.lower.radicand.get_str() + "^(1/" +
                std::to_string(k.lower.index) + ")");
    c.check(k.upper.radicand == Rational(static_cast<long>(row.upper_radicand)) && k.upper.index == row.upper_index,
            "k=" + std::to_string(row.k) + " upper = " + k.upper.radicand.get_str() + "^(1/" +
                std::to_string(k.upper.index) + ")");
    c.check(std::abs(lo - row.lower) <= 1e-4 && std::abs(hi - row.upper) <= 1e-4,
            "k=" + std::to_string(row.k) + " interval [" + fixed(lo, 6) + ", " + fixed(hi, 6) + "]");
  }
}

inline std::string series_csv(const std::vector<std::pair<std::string, std::vector<std::complex<double>>>>& s) {
  auto os = classic_stream();
  os << std::setprecision(17) << "series,re,im\n";
  for (const auto& [name, zeros] : s) {
    for (const auto& z : zeros) os << name << ',' << z.real() << ',' << z.imag() << '\n';
  }
  return os.str();
}

inline void reproduce_zeros_figure(const std::string& name, const IntPolynomial& p, std::optional<double> alpha,
                                   Checker& c, ReproduceReport& r) {
  const auto rep = spectral_abscissa(p);
  c.check(rep.zeros->size() == static_cast<std::size_t>(p.degree()), name + " has " +
                                                                          std::to_string(p.degree()) + " zeros");
  c.check(*rep.rhp_zero_count == 0 && *rep.abscissa < 0, name + " zeros in the open left half-plane, alpha = " +
                                                             fixed(*rep.abscissa, 5));
  if (alpha) c.check(std::abs(*rep.abscissa - *alpha) <= 5e-4, name + " alpha matches " + fixed(*alpha, 4));
  r.csv = series_csv({{name, *rep.zeros}});
}

inline void reproduce_figure2(Checker& c, ReproduceReport& r) {
  // p_20 = (z^2 + z/5 + 1)^10 and its four-digit truncation q_20
  const RatPolynomial p2(std::vector<Rational>{Rational(1), Rational(1, 5), Rational(1)});
  const auto p20 = power(p2, 10);
  const auto q20 = parse_rat_polynomial(golden::kQ20);
  const auto pr = spectral_abscissa(p20);
  const auto qr = spectral_abscissa(q20);
  c.check(is_hurwitz_exact(p20).verdict == Verdict::Stable, "p_20 is stable (exact)");
  const double psum = to_double(evaluate_at_rational(p20, Rational(1)));
  c.check(std::abs(psum - 2656) < 1.0, "p_20(1) = " + fixed(psum, 2) + " (about 2656)");
  c.check(is_hurwitz_exact(q20).verdict == Verdict::Unstable, "q_20 is not stable (exact)");
  c.check(*qr.rhp_zero_count == golden::kQ20RightHalfPlaneZeros,
          "q_20 has " + std::to_string(*qr.rhp_zero_count) + " zeros in the right half-plane");
  r.csv = series_csv({{"p20", *pr.zeros}, {"q20", *qr.zeros}});
}

inline void reproduce_figure5(Checker& c, ReproduceReport& r, int plot_points) {
  const auto s = symbol_profile(c20_polynomial(), plot_points);
  const auto env = envelope_check(s, 100000);
  c.check(env.inner_positive && env.inner_below_gaussian,
          "0 < f/sigma <= e^(-3.5 x^2) on |x| < 1 (min margin " + fixed(env.min_gaussian_margin, 12) + ")");
  c.check(env.outer_small, "|f/sigma| < 1/2 on 1 <= |x| <= pi (max " + fixed(env.max_outer, 6) + ")");
  c.note(std::string("f > 0 on the whole grid: ") + (env.positive_everywhere ? "yes" : "no"));
  auto os = classic_stream();
  os << std::setprecision(17) << "x,f_over_sigma,gaussian\n";
  for (const auto& [x, v] : s.samples) os << x << ',' << v << ',' << std::exp(-3.5 * x * x) << '\n';
  r.csv = os.str();
}

}  // namespace detail

inline ReproduceReport reproduce(const std::string& id, unsigned threads = 1, int plot_points = 2001) {
  ReproduceReport r;
  r.id = id;
  detail::Checker c(r);
  if (id == "ell-table") {
    for (const auto& e : golden::ell_table()) {
      const auto p = mobius_ell(e.degree);
      c.check(p == parse_int_polynomial(e.coeffs), "l_" + std::to_string(e.degree) + " = " + format(p));
      c.check(is_stable(p), "l_" + std::to_string(e.degree) + " is stable");
    }
  } else if (id.starts_with("optimal-N") && id.size() == 10 && id[9] >= '1' && id[9] <= '8') {
    const int n = id[9] - '0';
    if (n <= 6) detail::reproduce_optimal(n, threads, c);
    else if (n == 7) detail::reproduce_optimal7(threads, c);
    else detail::reproduce_optimal8(threads, c);
  } else if (id == "afamily") {
    detail::reproduce_afamily(c);
  } else if (id == "pmax-sigma-table") {
    detail::reproduce_pmax_sigma(threads, c);
  } else if (id == "beta-table") {
    detail::reproduce_beta(c);
  } else if (id == "kfold-table") {
    detail::reproduce_kfold(c);
  } else if (id == "figure1-data") {
    detail::reproduce_zeros_figure("l20", mobius_ell(20), std::nullopt, c, r);
  } else if (id == "figure2-data") {
    detail::reproduce_figure2(c, r);
  } else if (id == "figure3-data") {
    const auto prod = golden::poly(detail::find_named("a_2 b_18"));
    detail::reproduce_zeros_figure("a2b18", prod, -0.0046, c, r);
  } else if (id == "figure4-data") {
    detail::reproduce_zeros_figure("b20", golden::poly(detail::find_named("b_20")), -0.0038, c, r);
  } else if (id == "figure5-data") {
    detail::reproduce_figure5(c, r, plot_points);
  } else {
    throw usage_error("unknown table id '" + id + "'");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subcommand bodies

namespace detail {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

inline void emit_poly(Io io, const IntPolynomial& p, bool json) {
  if (json) io.out << poly_json(p).dump() << '\n';
  else io.out << format(p) << '\n';
}

inline nlohmann::json zeros_json(const std::vector<std::complex<double>>& zeros) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : zeros) arr.push_back({z.real(), z.imag()});
  return arr;
}

template <class Coeff>
int cmd_test(Io io, const Polynomial<Coeff>& p, bool roots, bool json) {
  const auto exact = is_hurwitz_exact(p);
  const auto num = spectral_abscissa(p);
  nlohmann::json j{{"poly", format(p)},
                   {"verdict", to_string(exact.verdict)},
                   {"abscissa", *num.abscissa},
                   {"rhp_zeros", *num.rhp_zero_count}};
  if (roots) j["zeros"] = zeros_json(*num.zeros);
  if (json) {
    io.out << j.dump() << '\n';
  } else {
    io.out << "poly:      " << format(p) << '\n'
           << "verdict:   " << to_string(exact.verdict) << '\n'
           << "abscissa:  " << fixed(*num.abscissa, 6) << '\n'
           << "rhp_zeros: " << *num.rhp_zero_count << '\n';
    if (roots) write_zeros_csv(io.out, *num.zeros);
  }
  return 0;
}

inline int cmd_search(Io io, const std::string& kind, int degree, std::int64_t cap, const SearchOptions& opt,
                      bool json) {
  const auto res = kind == "c" ? search_c_optimal(degree, cap, opt) : search_sigma_optimal(degree, cap, opt);
  if (json) {
    io.out << to_json(res).dump() << '\n';
  } else {
    io.out << "kind:       " << to_string(res.kind) << '\n'
           << "degree:     " << res.degree << '\n'
           << "optimum:    " << (res.optimum ? std::to_string(*res.optimum) : std::string("none")) << '\n'
           << "candidates: " << res.candidates_tested << '\n'
           << "routh:      " << res.routh_tests << '\n'
           << "seconds:    " << fixed(res.wall_time, 3) << '\n';
    for (const auto& w : res.witnesses) {
      io.out << "  " << std::left << std::setw(4 * (degree + 1) + 2) << format(w.poly) << " alpha "
             << fixed(w.abscissa, 4) << "  sigma " << w.sigma.get_str() << "  pmax " << w.pmax.get_str() << '\n';
    }
  }
  if (!res.complete) throw error("search cancelled");
  return 0;
}

inline int cmd_bounds(Io io, int kmax, int vmax, int gamma_terms, const std::vector<std::string>& polys, bool json) {
  const auto table = beta_bounds(kmax, gamma_terms);
  const auto& g = table.gamma;
  const auto seq = v_sequence(vmax);
  nlohmann::json j;
  j["beta"] = {{"lower", to_fixed(table.beta_lower.value(), 10)},
               {"upper", to_fixed(table.beta_upper, 10)},
               {"upper_a32", to_fixed(table.beta_upper_a32.value(), 10)}};
  j["gamma"] = {{"value", to_fixed(g.gamma, 15)},
                {"error_bar", to_double(g.error_bar)},
                {"exp", to_fixed(g.exp_gamma, 15)}};
  nlohmann::json gk = nlohmann::json::array();
  for (int k = 1; k <= std::min(g.k_max, std::max(4, kmax + 1)); ++k) {
    gk.push_back({{"k", k},
                  {"gamma_k", to_fixed(g.partials[static_cast<std::size_t>(k - 1)], 10)},
                  {"exp_gamma_k", to_fixed(g.exp_partials[static_cast<std::size_t>(k - 1)], 10)}});
  }
  j["gamma_k"] = gk;
  nlohmann::json kf = nlohmann::json::array();
  for (const auto& row : table.kfold) {
    kf.push_back({{"k", row.k},
                  {"lower", row.lower.radicand.get_str() + "^(1/" + std::to_string(row.lower.index) + ")"},
                  {"lower_value", to_fixed(row.lower.value(), 10)},
                  {"upper", row.upper.radicand.get_str() + "^(1/" + std::to_string(row.upper.index) + ")"},
                  {"upper_value", to_fixed(row.upper.value(), 10)}});
  }
  j["kfold"] = kf;
  nlohmann::json vs = nlohmann::json::array();
  for (int n = 0; n <= vmax; ++n) {
    nlohmann::json e{{"n", n}, {"value", to_fixed(v_value(seq, n), 12)}};
    if (n < 8) e["exact"] = seq.exact[static_cast<std::size_t>(n)].get_str();
    vs.push_back(e);
  }
  j["v"] = vs;
  nlohmann::json bz = nlohmann::json::array();
  for (const auto& text : polys) {
    const auto p = parse_int_arg(text);
    nlohmann::json e{{"poly", format(p)}};
    for (const char* v : {"1", "3/2", "2"}) {
      const auto r = beauzamy_check(p, Rational(v));
      e[std::string("v=") + v] = {{"holds", r.holds}, {"margin", r.margin.get_str()}};
    }
    bz.push_back(e);
  }
  if (!polys.empty()) j["beauzamy"] = bz;

  if (json) {
    io.out << j.dump(2) << '\n';
    return 0;
  }
  io.out << "beta in [" << j["beta"]["lower"].get<std::string>() << ", " << j["beta"]["upper"].get<std::string>()
         << "]   (a_32 route: " << j["beta"]["upper_a32"].get<std::string>() << ")\n";
  io.out << "gamma   = " << j["gamma"]["value"].get<std::string>() << "  +- " << j["gamma"]["error_bar"] << '\n';
  io.out << "e^gamma = " << j["gamma"]["exp"].get<std::string>() << "\n\n";
  io.out << "  k  gamma_k        e^gamma_k\n";
  for (const auto& e : gk) {
    io.out << std::setw(3) << e["k"].get<int>() << "  " << e["gamma_k"].get<std::string>() << "  "
           << e["exp_gamma_k"].get<std::string>() << '\n';
  }
  io.out << "\n  k  lower                          upper\n";
  for (const auto& e : kf) {
    io.out << std::setw(3) << e["k"].get<int>() << "  " << std::left << std::setw(14) << e["lower"].get<std::string>()
           << ' ' << e["lower_value"].get<std::string>() << "  " << std::setw(14) << e["upper"].get<std::string>()
           << ' ' << e["upper_value"].get<std::string>() << std::right << '\n';
  }
  io.out << "\n  n  v_n\n";
  for (const auto& e : vs) {
    io.out << std::setw(3) << e["n"].get<int>() << "  " << e["value"].get<std::string>();
    if (e.contains("exact")) io.out << "  = " << e["exact"].get<std::string>();
    io.out << '\n';
  }
  for (const auto& e : bz) {
    io.out << "\nBeauzamy " << e["poly"].get<std::string>() << '\n';
    for (const char* v : {"v=1", "v=3/2", "v=2"}) {
      io.out << "  " << std::left << std::setw(6) << v << std::right << (e[v]["holds"].get<bool>() ? "holds" : "FAILS")
             << "  margin " << e[v]["margin"].get<std::string>() << '\n';
    }
  }
  return 0;
}

inline int cmd_asymptotics(Io io, const IntPolynomial& p, unsigned k, bool figure5, int grid, const std::string& emit) {
  const bool plot = figure5;
  const auto prof = symbol_profile(p, plot ? grid : 0);
  if (plot) {
    auto os = classic_stream();
    os << std::setprecision(17) << "x,f_over_sigma,gaussian\n";
    for (const auto& [x, v] : prof.samples) os << x << ',' << v << ',' << std::exp(-3.5 * x * x) << '\n';
    io.out << os.str();
    return 0;
  }
  const auto env = envelope_check(prof, std::max(grid, 2));
  const auto maxima = power_maxima(p, k);
  if (emit == "csv") {
    auto os = classic_stream();
    os << std::setprecision(17) << "k,exact_max,laplace,ratio\n";
    for (const auto& m : maxima) os << m.k << ',' << m.exact_max.get_str() << ',' << to_fixed(m.laplace, 3) << ','
                                    << m.ratio << '\n';
    io.out << os.str();
    return 0;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : maxima) {
    rows.push_back({{"k", m.k}, {"exact_max", m.exact_max.get_str()}, {"laplace", to_fixed(m.laplace, 3)},
                    {"ratio", m.ratio}});
  }
  nlohmann::json j{{"poly", format(p)},
                   {"sigma", prof.sigma.get_str()},
                   {"tau", prof.tau.get_str()},
                   {"tau_value", prof.tau.get_d()},
                   {"envelope",
                    {{"grid_points", env.points},
                     {"inner_positive", env.inner_positive},
                     {"inner_below_gaussian", env.inner_below_gaussian},
                     {"outer_below_half", env.outer_small},
                     {"positive_everywhere", env.positive_everywhere},
                     {"max_outer", env.max_outer},
                     {"min_gaussian_margin", env.min_gaussian_margin}}},
                   {"powers", rows}};
  if (p == c20_polynomial()) {
    nlohmann::json t = nlohmann::json::array();
    for (int n = 20; n <= std::min<int>(800, 20 * static_cast<int>(k)); n += 20) {
      const auto r = theorem52_bound_check(n);
      t.push_back({{"N", n}, {"witness_max", r.witness_max.get_str()}, {"holds", r.holds}, {"ratio", r.ratio}});
    }
    j["upper_bound_check"] = t;
  }
  io.out << j.dump(2) << '\n';
  return 0;
}

inline bool wants_json(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--emit=json") return true;
    if (args[i] == "--emit" && i + 1 < args.size() && args[i + 1] == "json") return true;
  }
  return false;
}

inline void report_error(Io io, bool json, const std::string& kind, const std::string& msg) {
  if (json) io.err << nlohmann::json{{"error", msg}, {"kind", kind}}.dump() << '\n';
  else io.err << "error: " << msg << '\n';
}

}  // namespace detail

/// Runs the tool on `args` (program name excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Io io{out, err};
  const bool json_errors = detail::wants_json(args);

  CLI::App app{"Exact toolkit for Hurwitz stable polynomials with integer coefficients", "hurwitz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  std::string manifest_dir;
  app.add_option("--manifest-dir", manifest_dir, "Write a run manifest into this directory");

  // construct
  auto* construct = app.add_subcommand("construct", "Build explicit stable polynomials");
  construct->require_subcommand(1);
  std::string emit_construct = "text";
  construct->add_option("--emit", emit_construct, "text or json")->check(CLI::IsMember({"text", "json"}));
  int ell_degree = 0;
  auto* ell = construct->add_subcommand("ell", "Moebius-transform polynomial l_N");
  ell->add_option("--degree", ell_degree, "Degree N")->required();
  std::string poly_double;
  int times = 1;
  auto* dbl = construct->add_subcommand("double", "z^N q(z + 1/z), repeated --times");
  dbl->add_option("--poly", poly_double, "Polynomial, descending coefficients")->required();
  dbl->add_option("--times", times, "Number of doublings")->check(CLI::NonNegativeNumber);
  std::string poly_undouble;
  auto* und = construct->add_subcommand("undouble", "Inverse of doubling");
  und->add_option("--poly", poly_undouble, "Symmetric polynomial of even degree")->required();
  int afamily_n = 0;
  auto* afam = construct->add_subcommand("afamily", "a_{2^n}: n doublings of z + 1");
  afam->add_option("--n", afamily_n, "Number of doublings")->required()->check(CLI::Range(0, 12));
  for (auto* sub : {ell, dbl, und, afam}) {
    sub->add_option("--emit", emit_construct, "text or json")->check(CLI::IsMember({"text", "json"}));
  }

  // test
  auto* test = app.add_subcommand("test", "Exact Routh verdict plus spectral abscissa");
  std::string test_poly, emit_test = "json";
  bool test_roots = false;
  test->add_option("--poly", test_poly, "Polynomial, descending coefficients")->required();
  test->add_flag("--roots", test_roots, "Include the zeros");
  test->add_option("--emit", emit_test, "json or table")->check(CLI::IsMember({"json", "table"}));

  // search
  auto* search = app.add_subcommand("search", "Exhaustive c- or sigma-optimal search");
  std::string kind, checkpoint, emit_search = "json";
  int degree = 0;
  std::int64_t cap = 0;
  unsigned threads = 1;
  bool no_prune = false, no_halving = false;
  std::uint64_t budget = SearchOptions{}.budget;
  search->add_option("--kind", kind, "c or sigma")->required()->check(CLI::IsMember({"c", "sigma"}));
  search->add_option("--degree", degree, "Degree N")->required()->check(CLI::Range(1, 40));
  search->add_option("--cap", cap, "Largest p_max (c) or sum (sigma) to try")->required();
  search->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1U, 1024U));
  search->add_option("--checkpoint", checkpoint, "JSON checkpoint file (resumes if present)");
  search->add_option("--budget", budget, "Refuse levels with more candidates than this");
  search->add_flag("--no-prune", no_prune, "Disable window pruning");
  search->add_flag("--no-halving", no_halving, "Enumerate both members of reverse pairs");
  search->add_option("--emit", emit_search, "json or table")->check(CLI::IsMember({"json", "table"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Growth-constant bounds, v_n and gamma_k tables");
  int kmax = 3, vmax = 10, gamma_terms = 40;
  std::vector<std::string> bz_polys;
  std::string emit_bounds = "table";
  bounds->add_option("--kmax", kmax, "Largest k for k-fold rows")->check(CLI::Range(0, 8));
  bounds->add_option("--vmax", vmax, "Largest n in the v_n table")->check(CLI::Range(0, 64));
  bounds->add_option("--gamma-terms", gamma_terms, "Terms of the gamma series")->check(CLI::Range(4, 64));
  bounds->add_option("--poly", bz_polys, "Polynomials for Beauzamy margins (repeatable)");
  bounds->add_option("--emit", emit_bounds, "table or json")->check(CLI::IsMember({"table", "json"}));

  // asymptotics
  auto* asym = app.add_subcommand("asymptotics", "Symbol, Laplace estimate and max coefficients of powers");
  std::string asym_poly, emit_asym = "json";
  unsigned asym_k = 40;
  bool figure5 = false;
  int grid = 100000;
  asym->add_option("--poly", asym_poly, "Symmetric polynomial (default c_20)");
  asym->add_option("--k", asym_k, "Largest power")->check(CLI::Range(1U, 400U));
  asym->add_flag("--figure5", figure5, "Emit x, f/sigma, e^(-3.5x^2) as CSV");
  asym->add_option("--grid", grid, "Grid points")->check(CLI::Range(2, 10000000));
  asym->add_option("--emit", emit_asym, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // zeros
  auto* zeros = app.add_subcommand("zeros", "Zeros as CSV (re,im)");
  std::string zeros_poly, zeros_csv;
  zeros->add_option("--poly", zeros_poly, "Polynomial, descending coefficients")->required();
  zeros->add_option("--csv", zeros_csv, "Output file (standard output if omitted)");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Recompute a reference table and compare");
  std::string repro_id, repro_csv;
  unsigned repro_threads = 1;
  repro->add_option("id", repro_id, "Table id, or 'list'")->required();
  repro->add_option("--threads", repro_threads, "Worker threads for searches")->check(CLI::Range(1U, 1024U));
  repro->add_option("--csv", repro_csv, "Write figure data here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    if (json_errors) {
      detail::report_error(io, true, "usage", e.what());
    } else {
      err << "error: " << e.what() << "\n\n" << app.help();
    }
    return 2;
  }

  RunManifest manifest;
  manifest.timestamp = utc_timestamp();
  for (auto* sub : app.get_subcommands()) {
    manifest.subcommand = sub->get_name();
    for (const auto* opt : sub->get_options()) {
      if (opt->count() > 0 && opt->get_name() != "--help") manifest.parameters[opt->get_name()] = opt->as<std::string>();
    }
  }

  try {
    int code = 0;
    if (construct->parsed()) {
      const bool json = emit_construct == "json";
      if (ell->parsed()) {
        detail::emit_poly(io, mobius_ell(ell_degree), json);
      } else if (dbl->parsed()) {
        detail::emit_poly(io, doubling_chain(parse_int_arg(poly_double), times).result, json);
      } else if (und->parsed()) {
        detail::emit_poly(io, undouble(parse_int_arg(poly_undouble)), json);
      } else if (afam->parsed()) {
        const auto chain = a_family(afamily_n);
        if (json) {
          auto j = poly_json(chain.result);
          nlohmann::json sums = nlohmann::json::array();
          for (const auto& s : chain.sums) sums.push_back(s.get_str());
          j["stage_sums"] = sums;
          out << j.dump() << '\n';
        } else {
          out << format(chain.result) << '\n';
        }
      }
    } else if (test->parsed()) {
      const bool json = emit_test == "json";
      if (is_integer_text(test_poly)) code = detail::cmd_test(io, parse_int_arg(test_poly), test_roots, json);
      else code = detail::cmd_test(io, parse_rat_arg(test_poly), test_roots, json);
    } else if (search->parsed()) {
      SearchOptions opt;
      opt.threads = threads;
      opt.prune = !no_prune;
      opt.reverse_halving = !no_halving;
      opt.budget = budget;
      opt.checkpoint_path = checkpoint;
      opt.cancel = &cancel_flag();
      if (!checkpoint.empty()) {
        manifest.outputs.push_back(checkpoint);
        if (manifest_dir.empty()) {
          const auto parent = std::filesystem::path(checkpoint).parent_path();
          manifest_dir = parent.empty() ? std::string(".") : parent.string();
        }
      }
      code = detail::cmd_search(io, kind, degree, cap, opt, emit_search == "json");
    } else if (bounds->parsed()) {
      code = detail::cmd_bounds(io, kmax, vmax, gamma_terms, bz_polys, emit_bounds == "json");
    } else if (asym->parsed()) {
      const auto p = asym_poly.empty() ? c20_polynomial() : parse_int_arg(asym_poly);
      code = detail::cmd_asymptotics(io, p, asym_k, figure5, figure5 && grid == 100000 ? 2001 : grid, emit_asym);
    } else if (zeros->parsed()) {
      const auto p = parse_rat_arg(zeros_poly);
      const auto rep = spectral_abscissa(p);
      if (zeros_csv.empty()) {
        write_zeros_csv(out, *rep.zeros);
      } else {
        std::ofstream f(zeros_csv);
        if (!f) throw error("cannot open " + zeros_csv);
        write_zeros_csv(f, *rep.zeros);
        manifest.outputs.push_back(zeros_csv);
        out << "wrote " << rep.zeros->size() << " zeros to " << zeros_csv << '\n';
      }
    } else if (repro->parsed()) {
      if (repro_id == "list") {
        for (const auto& id : reproduce_ids()) out << id << '\n';
        return 0;
      }
      const auto rep = reproduce(repro_id, repro_threads);
      const bool figure = !rep.csv.empty();
      if (figure && repro_csv.empty()) {
        out << rep.csv;
      } else {
        if (figure) {
          std::ofstream f(repro_csv);
          if (!f) throw error("cannot open " + repro_csv);
          f << rep.csv;
          manifest.outputs.push_back(repro_csv);
        }
        for (const auto& line : rep.lines) out << line << '\n';
        out << repro_id << ": " << (rep.ok() ? "pass" : "FAIL") << '\n';
      }
      if (!rep.ok()) {
        err << repro_id << ": " << rep.discrepancies.size() << " discrepancies\n";
        for (const auto& d : rep.discrepancies) err << "  " << d << '\n';
        code = 1;
      }
    }
    if (!manifest_dir.empty()) write_manifest(manifest_dir, manifest);
    return code;
  } catch (const usage_error& e) {
    detail::report_error(io, json_errors, "usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    detail::report_error(io, json_errors, "computation", e.what());
    return 1;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace hurwitz::cli
