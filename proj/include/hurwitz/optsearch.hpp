#pragma once

/**
 * @file optsearch.hpp
 * @brief Exhaustive search for c-optimal and sigma-optimal Hurwitz polynomials.
 *
 * Candidates are coefficient vectors a_0..a_N listed leading coefficient first
 * (a_i = p_{N-i}); every coefficient of an integer Hurwitz polynomial is >= 1,
 * so the boxes {1..m}^{N+1} and the compositions of s into N+1 positive parts
 * cover all candidates with p_max <= m resp. sigma = s.
 *
 * Pruning: the Hurwitz matrix of a stable polynomial is totally nonnegative, so
 * every window of four consecutive coefficients satisfies
 *     a_{i} a_{i+1} >= a_{i-1} a_{i+2}.
 * The depth-first enumeration checks this as soon as the fourth coefficient of
 * a window is placed; the window condition is monotone in that coefficient, so
 * a whole tail of values is discarded at once. Survivors get the full
 * fraction-free Routh test.
 *
 * Work is split into shards by the two leading coefficients. Shard results are
 * merged in shard order, so results do not depend on the thread count.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hurwitz/polycore.hpp"
#include "hurwitz/stability.hpp"

namespace hurwitz {

enum class OptimalityKind { C, Sigma };

inline std::string to_string(OptimalityKind k) { return k == OptimalityKind::C ? "c" : "sigma"; }

struct Witness {
  IntPolynomial poly;
  double abscissa = 0.0;
  BigInt sigma;
  BigInt pmax;
};

struct SearchResult {
  OptimalityKind kind = OptimalityKind::C;
  int degree = 0;
  std::optional<std::uint64_t> optimum;  // empty when the cap was exhausted or the run cancelled
  bool cap_exhausted = false;
  bool complete = true;                  // false when cancelled mid-run
  std::uint64_t last_level = 0;          // m or s of the last level entered
  std::uint64_t shards_done = 0;         // of the last level entered
  std::uint64_t shards_total = 0;
  std::vector<Witness> witnesses;
  std::uint64_t candidates_tested = 0;   // candidates covered, pruned ones included
  std::uint64_t routh_tests = 0;         // candidates that reached the full Routh test
  double wall_time = 0.0;
};

struct SearchOptions {
  unsigned threads = 1;
  bool reverse_halving = true;
  bool prune = true;
  std::uint64_t budget = 10'000'000'000ULL;
  std::string checkpoint_path;               // empty: no checkpointing
  const std::atomic<bool>* cancel = nullptr;  // polled between shards
};

/// True iff every window of four consecutive entries satisfies a_i a_{i+1} >= a_{i-1} a_{i+2}.
inline bool passes_window_condition(std::span<const std::int64_t> desc) {
  for (std::size_t t = 3; t < desc.size(); ++t) {
    if (static_cast<__int128>(desc[t - 2]) * desc[t - 1] < static_cast<__int128>(desc[t - 3]) * desc[t]) {
      return false;
    }
  }
  return true;
}

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
  unsigned __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > UINT64_MAX) throw error("count overflow");
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw error("count overflow");
  }
  return static_cast<std::uint64_t>(r);
}

/// One level of the search: a box (optionally restricted to its shell) or a composition class.
struct Level {
  bool composition = false;
  int degree = 0;
  std::int64_t bound = 0;  // m for boxes, s for compositions
  bool shell = false;      // boxes: require at least one entry equal to m
};

struct ShardKey {
  std::int64_t first, second;
};

struct ShardOutcome {
  std::uint64_t covered = 0;
  std::uint64_t tested = 0;
  std::vector<std::vector<std::int64_t>> stable_desc;
};

inline std::vector<ShardKey> make_shards(const Level& lv) {
  std::vector<ShardKey> keys;
  const std::int64_t n = lv.degree;
  if (!lv.composition) {
    for (std::int64_t a = 1; a <= lv.bound; ++a)
      for (std::int64_t b = 1; b <= lv.bound; ++b) keys.push_back({a, b});
  } else {
    // a + b + (n - 1 remaining parts, each >= 1) = s
    for (std::int64_t a = 1; a + n <= lv.bound; ++a)
      for (std::int64_t b = 1; a + b + (n - 1) <= lv.bound; ++b) keys.push_back({a, b});
  }
  return keys;
}

class Enumerator {
 public:
  Enumerator(const Level& lv, const SearchOptions& opt) : lv_(lv), opt_(opt), desc_(lv.degree + 1) {}

  ShardOutcome run(ShardKey key) {
    out_ = {};
    const int n = lv_.degree;
    if (n == 1) {
      // Two coefficients only: the shard is a single candidate.
      desc_[0] = key.first;
      desc_[1] = key.second;
      if (lv_.composition && key.first + key.second != lv_.bound) return out_;
      leaf(lv_.shell ? (key.first == lv_.bound || key.second == lv_.bound) : true);
      return out_;
    }
    desc_[0] = key.first;
    desc_[1] = key.second;
    const bool has_m = lv_.shell && (key.first == lv_.bound || key.second == lv_.bound);
    visit(2, has_m, lv_.bound - key.first - key.second);
    return out_;
  }

 private:
  // Number of completions of the positions t..N (box case).
  std::uint64_t box_completions(int remaining, bool has_m) const {
    const auto m = static_cast<std::uint64_t>(lv_.bound);
    if (!lv_.shell || has_m) return checked_pow(m, remaining);
    return checked_pow(m, remaining) - checked_pow(m - 1, remaining);
  }

  // Number of box candidates whose position t takes a value in (lo, m], completions included.
  std::uint64_t box_tail(int t, std::int64_t lo, bool has_m) const {
    const std::int64_t m = lv_.bound;
    if (lo >= m) return 0;
    const int rest = lv_.degree - t;
    const auto values = static_cast<std::uint64_t>(m - lo);
    if (!lv_.shell || has_m) return values * checked_pow(static_cast<std::uint64_t>(m), rest);
    // values below m keep the shell requirement open; v = m satisfies it
    return (values - 1) * box_completions(rest, false) + checked_pow(static_cast<std::uint64_t>(m), rest);
  }

  // Compositions where position t takes a value in (lo, rem - rest] with `rest` later parts.
  std::uint64_t composition_tail(int t, std::int64_t lo, std::int64_t rem) const {
    const int rest = lv_.degree - t;
    if (rest == 0) return rem > lo ? 1 : 0;
    const std::int64_t hi = rem - rest;
    if (lo >= hi) return 0;
    // sum_{v=lo+1}^{hi} C(rem - v - 1, rest - 1) = C(rem - lo - 1, rest)
    return binomial_u64(static_cast<std::uint64_t>(rem - lo - 1), static_cast<std::uint64_t>(rest));
  }

  // Largest admissible value at position t under the window condition.
  std::int64_t window_cap(int t) const {
    if (!opt_.prune || t < 3) return INT64_MAX;
    return static_cast<std::int64_t>((static_cast<__int128>(desc_[t - 2]) * desc_[t - 1]) / desc_[t - 3]);
  }

  void visit(int t, bool has_m, std::int64_t rem) {
    const int n = lv_.degree;
    const std::int64_t cap = window_cap(t);
    if (lv_.composition) {
      const int rest = n - t;
      if (rest == 0) {
        if (rem > cap) {
          out_.covered += 1;
          return;
        }
        desc_[t] = rem;
        leaf(true);
        return;
      }
      const std::int64_t hi = std::min(rem - rest, cap);
      for (std::int64_t v = 1; v <= hi; ++v) {
        desc_[t] = v;
        visit(t + 1, false, rem - v);
      }
      out_.covered += composition_tail(t, std::max<std::int64_t>(hi, 0), rem);
      return;
    }
    const std::int64_t m = lv_.bound;
    const std::int64_t hi = std::min(m, cap);
    for (std::int64_t v = 1; v <= hi; ++v) {
      desc_[t] = v;
      const bool hm = has_m || v == m;
      if (t == n) {
        leaf(!lv_.shell || hm);
      } else {
        visit(t + 1, hm, 0);
      }
    }
    out_.covered += box_tail(t, std::max<std::int64_t>(hi, 0), has_m);
  }

  void leaf(bool in_space) {
    if (!in_space) return;
    out_.covered += 1;
    const std::size_t len = desc_.size();
    int cmp = 0;
    if (opt_.reverse_halving) {
      for (std::size_t i = 0; i < len; ++i) {
        if (desc_[i] != desc_[len - 1 - i]) {
          cmp = desc_[i] < desc_[len - 1 - i] ? -1 : 1;
          break;
        }
      }
      if (cmp > 0) return;  // the reverse is tested instead
    }
    asc_.assign(desc_.rbegin(), desc_.rend());
    ++out_.tested;
    if (routh_verdict_small(asc_) != Verdict::Stable) return;
    out_.stable_desc.push_back(desc_);
    if (opt_.reverse_halving && cmp < 0) out_.stable_desc.emplace_back(desc_.rbegin(), desc_.rend());
  }

  Level lv_;
  const SearchOptions& opt_;
  std::vector<std::int64_t> desc_;
  std::vector<std::int64_t> asc_;
  ShardOutcome out_;
};

// --- checkpointing ---------------------------------------------------------

inline nlohmann::json shard_to_json(std::size_t index, const ShardOutcome& s) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& d : s.stable_desc) w.push_back(d);
  return {{"index", index}, {"covered", s.covered}, {"tested", s.tested}, {"stable", std::move(w)}};
}

inline ShardOutcome shard_from_json(const nlohmann::json& j) {
  ShardOutcome s;
  s.covered = j.at("covered").get<std::uint64_t>();
  s.tested = j.at("tested").get<std::uint64_t>();
  for (const auto& d : j.at("stable")) s.stable_desc.push_back(d.get<std::vector<std::int64_t>>());
  return s;
}

/// Resumable record of finished levels and finished shards of the current level.
class Checkpoint {
 public:
  Checkpoint(std::string path, OptimalityKind kind, int degree, bool prune, bool halving)
      : path_(std::move(path)) {
    header_ = {{"format", "hurwitz-search-checkpoint/1"},
               {"kind", to_string(kind)},
               {"degree", degree},
               {"prune", prune},
               {"reverse_halving", halving}};
    state_ = header_;
    state_["levels"] = nlohmann::json::array();
    state_["current"] = nullptr;
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in) return;
    nlohmann::json loaded = nlohmann::json::parse(in);
    for (const auto& key : {"format", "kind", "degree", "prune", "reverse_halving"}) {
      if (loaded.at(key) != header_.at(key)) {
        throw error("checkpoint " + path_ + " does not match this search (" + key + ")");
      }
    }
    state_ = std::move(loaded);
  }

  [[nodiscard]] bool enabled() const { return !path_.empty(); }

  /// Totals of a finished level, if recorded.
  [[nodiscard]] std::optional<nlohmann::json> finished_level(std::int64_t bound) const {
    for (const auto& lv : state_["levels"]) {
      if (lv.at("bound").get<std::int64_t>() == bound) return lv;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::vector<std::pair<std::size_t, ShardOutcome>> finished_shards(std::int64_t bound) const {
    std::vector<std::pair<std::size_t, ShardOutcome>> out;
    const auto& cur = state_["current"];
    if (cur.is_null() || cur.at("bound").get<std::int64_t>() != bound) return out;
    for (const auto& s : cur.at("shards")) out.emplace_back(s.at("index").get<std::size_t>(), shard_from_json(s));
    return out;
  }

  void begin_level(std::int64_t bound) {
    std::lock_guard lock(mu_);
    auto& cur = state_["current"];
    if (cur.is_null() || cur.at("bound").get<std::int64_t>() != bound) {
      cur = {{"bound", bound}, {"shards", nlohmann::json::array()}};
    }
    flush();
  }

  void record_shard(std::size_t index, const ShardOutcome& s) {
    std::lock_guard lock(mu_);
    state_["current"]["shards"].push_back(shard_to_json(index, s));
    flush();
  }

  void finish_level(std::int64_t bound, std::uint64_t covered, std::uint64_t tested,
                    const std::vector<std::vector<std::int64_t>>& stable) {
    std::lock_guard lock(mu_);
    state_["levels"].push_back({{"bound", bound}, {"covered", covered}, {"tested", tested}, {"stable", stable}});
    state_["current"] = nullptr;
    flush();
  }

 private:
  void flush() {
    if (path_.empty()) return;
    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw error("cannot write checkpoint " + tmp);
      out << state_.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path_);
  }

  std::string path_;
  nlohmann::json header_;
  nlohmann::json state_;
  std::mutex mu_;
};

struct LevelOutcome {
  std::uint64_t covered = 0;
  std::uint64_t tested = 0;
  std::vector<std::vector<std::int64_t>> stable_desc;
  std::uint64_t shards_done = 0;
  std::uint64_t shards_total = 0;
  bool complete = true;
};

inline LevelOutcome run_level(const Level& lv, const SearchOptions& opt, Checkpoint* ckpt) {
  const auto shards = make_shards(lv);
  std::vector<std::optional<ShardOutcome>> results(shards.size());
  if (ckpt != nullptr && ckpt->enabled()) {
    for (auto& [idx, s] : ckpt->finished_shards(lv.bound)) {
      if (idx < results.size()) results[idx] = std::move(s);
    }
    ckpt->begin_level(lv.bound);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Enumerator en(lv, opt);
    for (;;) {
      if (opt.cancel != nullptr && opt.cancel->load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= shards.size()) return;
      if (results[i]) continue;
      auto r = en.run(shards[i]);
      if (ckpt != nullptr && ckpt->enabled()) ckpt->record_shard(i, r);
      results[i] = std::move(r);
    }
  };
  const unsigned threads = std::max(1U, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  LevelOutcome out;
  out.shards_total = shards.size();
  for (auto& r : results) {
    if (!r) {
      out.complete = false;
      continue;
    }
    ++out.shards_done;
    out.covered += r->covered;
    out.tested += r->tested;
    for (auto& d : r->stable_desc) out.stable_desc.push_back(std::move(d));
  }
  return out;
}

inline std::vector<Witness> make_witnesses(const std::vector<std::vector<std::int64_t>>& stable) {
  std::vector<Witness> w;
  for (const auto& d : stable) {
    std::vector<BigInt> c;
    for (auto x : d) c.emplace_back(static_cast<long>(x));
    auto poly = IntPolynomial::from_descending(std::move(c));
    auto stats = coeff_stats(poly);
    double alpha = std::numeric_limits<double>::quiet_NaN();
    try {
      alpha = *spectral_abscissa(poly).abscissa;
    } catch (const error&) {
    }
    w.push_back({std::move(poly), alpha, stats.sigma, stats.pmax});
  }
  std::sort(w.begin(), w.end(), [](const Witness& a, const Witness& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return a.poly.descending() < b.poly.descending();
  });
  w.erase(std::unique(w.begin(), w.end(), [](const Witness& a, const Witness& b) { return a.poly == b.poly; }),
          w.end());
  return w;
}

template <class LevelFn, class SizeFn>
SearchResult level_search(OptimalityKind kind, int degree, std::int64_t first, std::int64_t cap,
                          const SearchOptions& opt, LevelFn make_level, SizeFn level_size) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult res;
  res.kind = kind;
  res.degree = degree;
  Checkpoint ckpt(opt.checkpoint_path, kind, degree, opt.prune, opt.reverse_halving);

  std::uint64_t planned = 0;
  for (std::int64_t b = first; b <= cap; ++b) {
    planned += level_size(b);
    if (planned > opt.budget) throw error("budget exceeded: level " + std::to_string(b) + " exceeds candidate budget");
    res.last_level = static_cast<std::uint64_t>(b);

    std::vector<std::vector<std::int64_t>> stable;
    if (auto done = ckpt.finished_level(b)) {
      res.candidates_tested += done->at("covered").get<std::uint64_t>();
      res.routh_tests += done->at("tested").get<std::uint64_t>();
      stable = done->at("stable").get<std::vector<std::vector<std::int64_t>>>();
      res.shards_done = res.shards_total = make_shards(make_level(b)).size();
    } else {
      auto lv = run_level(make_level(b), opt, &ckpt);
      res.candidates_tested += lv.covered;
      res.routh_tests += lv.tested;
      res.shards_done = lv.shards_done;
      res.shards_total = lv.shards_total;
      if (!lv.complete) {
        res.complete = false;
        res.witnesses = make_witnesses(lv.stable_desc);
        break;
      }
      stable = std::move(lv.stable_desc);
      ckpt.finish_level(b, lv.covered, lv.tested, stable);
    }
    if (!stable.empty()) {
      res.optimum = static_cast<std::uint64_t>(b);
      res.witnesses = make_witnesses(stable);
      break;
    }
  }
  if (res.complete && !res.optimum) res.cap_exhausted = true;
  res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace detail

/**
 * Smallest m <= pmax_cap such that some stable polynomial of degree N has all
 * coefficients in {1..m}, together with every stable polynomial in that box.
 * Level m enumerates only the shell (some entry equals m); smaller boxes were
 * already empty.
 */
inline SearchResult search_c_optimal(int degree, std::int64_t pmax_cap, const SearchOptions& opt = {}) {
  if (degree < 1) throw error("degree must be >= 1");
  if (pmax_cap < 1) throw error("pmax_cap must be >= 1");
  return detail::level_search(
      OptimalityKind::C, degree, 1, pmax_cap, opt,
      [&](std::int64_t m) { return detail::Level{false, degree, m, true}; },
      [&](std::int64_t m) {
        return detail::checked_pow(static_cast<std::uint64_t>(m), degree + 1) -
               detail::checked_pow(static_cast<std::uint64_t>(m - 1), degree + 1);
      });
}

/// Smallest coefficient sum s <= sigma_cap admitting a stable polynomial, with all witnesses.
inline SearchResult search_sigma_optimal(int degree, std::int64_t sigma_cap, const SearchOptions& opt = {}) {
  if (degree < 1) throw error("degree must be >= 1");
  if (sigma_cap < degree + 1) throw error("sigma_cap must be >= degree + 1");
  return detail::level_search(
      OptimalityKind::Sigma, degree, degree + 1, sigma_cap, opt,
      [&](std::int64_t s) { return detail::Level{true, degree, s, false}; },
      [&](std::int64_t s) {
        return detail::binomial_u64(static_cast<std::uint64_t>(s - 1), static_cast<std::uint64_t>(degree));
      });
}

struct BoxCount {
  std::uint64_t count = 0;
  std::uint64_t candidates = 0;
  std::uint64_t routh_tests = 0;
  std::vector<IntPolynomial> witnesses;  // filled when count <= witness_limit
};

/// Exact number of stable polynomials with every coefficient in {1..m}.
inline BoxCount count_stable_in_box(int degree, std::int64_t m, const SearchOptions& opt = {},
                                    std::size_t witness_limit = 64) {
  if (degree < 1 || m < 1) throw error("degree and m must be >= 1");
  const std::uint64_t size = detail::checked_pow(static_cast<std::uint64_t>(m), degree + 1);
  if (size > opt.budget) throw error("budget exceeded: box has " + std::to_string(size) + " candidates");
  SearchOptions local = opt;
  local.checkpoint_path.clear();
  auto lv = detail::run_level(detail::Level{false, degree, m, false}, local, nullptr);
  if (!lv.complete) throw error("box count cancelled");
  BoxCount bc;
  bc.count = lv.stable_desc.size();
  bc.candidates = lv.covered;
  bc.routh_tests = lv.tested;
  if (bc.count <= witness_limit) {
    for (const auto& w : detail::make_witnesses(lv.stable_desc)) bc.witnesses.push_back(w.poly);
  }
  return bc;
}

inline nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses) {
    w.push_back({{"poly", format(x.poly)},
                 {"abscissa", x.abscissa},
                 {"sigma", x.sigma.get_str()},
                 {"pmax", x.pmax.get_str()}});
  }
  nlohmann::json j{{"kind", to_string(r.kind)},
                   {"degree", r.degree},
                   {"optimum", r.optimum ? nlohmann::json(*r.optimum) : nlohmann::json(nullptr)},
                   {"cap_exhausted", r.cap_exhausted},
                   {"complete", r.complete},
                   {"last_level", r.last_level},
                   {"shards_done", r.shards_done},
                   {"shards_total", r.shards_total},
                   {"candidates_tested", r.candidates_tested},
                   {"routh_tests", r.routh_tests},
                   {"wall_time", r.wall_time},
                   {"witnesses", std::move(w)}};
  return j;
}

}  // namespace hurwitz
