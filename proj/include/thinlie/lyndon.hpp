#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "thinlie/field.hpp"

namespace thinlie {

inline constexpr int kDefaultDegreeCap = 16;

/// Generators of the free Lie algebra: x = 0 < y = 1.
inline constexpr int kGenX = 0;
inline constexpr int kGenY = 1;

inline char gen_name(int g) { return g == kGenX ? 'x' : 'y'; }

/// A word over {x, y} packed into bits: the letter at position i (from the
/// left) of a length-n word w is (w.bits >> (n - 1 - i)) & 1. For equal
/// lengths, numeric order of bits equals lexicographic order.
struct Word {
  int len = 0;
  std::uint32_t bits = 0;

  int letter(int i) const { return static_cast<int>((bits >> (len - 1 - i)) & 1u); }
  bool operator==(const Word&) const = default;
};

/// Strict lexicographic order (a proper prefix precedes its extensions).
inline bool lex_less(const Word& a, const Word& b) {
  int common = std::min(a.len, b.len);
  std::uint32_t pa = a.bits >> (a.len - common);
  std::uint32_t pb = b.bits >> (b.len - common);
  if (pa != pb) return pa < pb;
  return a.len < b.len;
}

inline Word concat(const Word& a, const Word& b) {
  return Word{a.len + b.len, (a.bits << b.len) | b.bits};
}

inline Word prefix(const Word& w, int n) { return Word{n, w.bits >> (w.len - n)}; }
inline Word suffix(const Word& w, int n) { return Word{n, w.bits & ((1u << n) - 1u)}; }

/// A Lyndon word is strictly smaller than all of its proper suffixes.
inline bool is_lyndon(const Word& w) {
  for (int s = 1; s < w.len; ++s)
    if (!lex_less(w, suffix(w, w.len - s))) return false;
  return w.len >= 1;
}

inline std::string word_string(const Word& w) {
  std::string s;
  for (int i = 0; i < w.len; ++i) s += gen_name(w.letter(i));
  return s;
}

/// dim of the degree-n component of the free Lie algebra on two generators:
/// (1/n) sum_{d | n} mu(d) 2^{n/d}.
inline std::int64_t witt_dimension(int n) {
  if (n < 1) throw input_error("witt_dimension requires degree >= 1");
  auto mobius = [](int m) {
    int mu = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      mu = -mu;
    }
    if (m > 1) mu = -mu;
    return mu;
  };
  std::int64_t total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    total += mobius(d) * (std::int64_t{1} << (n / d));
  }
  return total / n;
}

namespace detail {
inline std::int64_t zadd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("free Lie coefficient overflow");
  return r;
}
inline std::int64_t zmul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("free Lie coefficient overflow");
  return r;
}
}  // namespace detail

/// Degree-graded tables for the free Lie algebra on {x, y} in the
/// Chen-Fox-Lyndon basis: Lyndon words per degree with their standard
/// factorizations, plus memoized integer structure constants. Levels are
/// built eagerly at construction up to the degree cap; product tables are
/// lazy and guarded, so concurrent readers are safe.
class FreeLie {
 public:
  /// One term of a basis expansion: (index into the level, coefficient).
  using ZTerm = std::pair<int, std::int64_t>;
  using ZVec = std::vector<ZTerm>;  // sorted by index

  struct Level {
    std::vector<Word> words;                    // Lyndon words, lexicographic
    std::vector<std::pair<int, int>> fact;      // std factorization: (left length, left idx); right idx derivable
    std::vector<int> fact_right;                // index of the right factor in its level
  };

  explicit FreeLie(int degree_cap = kDefaultDegreeCap) : cap_(degree_cap) {
    if (degree_cap < 1 || degree_cap > 30) throw input_error("degree cap out of range");
    levels_.resize(cap_ + 1);
    build_levels();
  }

  int cap() const { return cap_; }

  const Level& level(int n) const {
    if (n < 1 || n > cap_) throw input_error("degree " + std::to_string(n) + " exceeds the configured cap " + std::to_string(cap_));
    return levels_[n];
  }

  int dim(int n) const { return static_cast<int>(level(n).words.size()); }

  /// Index of a Lyndon word within its level (binary search); -1 if absent.
  int index_of(const Word& w) const {
    const auto& ws = level(w.len).words;
    auto it = std::lower_bound(ws.begin(), ws.end(), w,
                               [](const Word& a, const Word& b) { return a.bits < b.bits; });
    if (it == ws.end() || !(*it == w)) return -1;
    return static_cast<int>(it - ws.begin());
  }

  /// [b(w), generator] for every Lyndon word w of degree n, as columns in
  /// the degree-(n+1) basis. Built once; the returned reference is stable.
  const std::vector<ZVec>& gen_table(int n, int g) const {
    if (n + 1 > cap_) throw input_error("degree " + std::to_string(n + 1) + " exceeds the configured cap " + std::to_string(cap_));
    std::lock_guard lock(gen_mutex_);
    auto key = std::make_pair(n, g);
    auto it = gen_tables_.find(key);
    if (it != gen_tables_.end()) return it->second;
    std::vector<ZVec> table(levels_[n].words.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      table[i] = pair_product(n, static_cast<int>(i), 1, g);
    return gen_tables_.emplace(key, std::move(table)).first->second;
  }

  /// [b(u), b(v)] in the Lyndon basis of degree |u| + |v|; exact integer
  /// coefficients. Arguments are (degree, index) pairs in either order.
  ZVec pair_product(int du, int iu, int dv, int iv) const {
    if (du == dv && iu == iv) return {};
    const Word u = levels_[du].words[iu];
    const Word v = levels_[dv].words[iv];
    if (lex_less(v, u)) return negate(product_ordered(dv, iv, du, iu));
    return product_ordered(du, iu, dv, iv);
  }

  /// The standard bracketing of the degree-n, index-i Lyndon word, rendered
  /// in the bracket-expression grammar, e.g. "[x,[x,y]]".
  std::string bracket_string(int n, int i) const {
    const Level& lv = level(n);
    if (n == 1) return std::string(1, gen_name(i));
    auto [llen, lidx] = lv.fact[i];
    return "[" + bracket_string(llen, lidx) + "," + bracket_string(n - llen, lv.fact_right[i]) + "]";
  }

 private:
  static ZVec negate(ZVec v) {
    for (auto& [i, c] : v) c = -c;
    return v;
  }

  static void accumulate(std::map<int, std::int64_t>& acc, const ZVec& v, std::int64_t scale) {
    for (const auto& [i, c] : v) {
      auto& slot = acc[i];
      slot = detail::zadd(slot, detail::zmul(scale, c));
    }
  }

  /// [b(u), b(v)] for u < v lexicographically. When (u, v) is the standard
  /// factorization of uv the result is the single basis word uv; otherwise
  /// rewrite through the factorization u = (u1, u2) by the Jacobi identity
  ///   [u, v] = [u1, [u2, v]] + [u2, [v, u1]].
  const ZVec& product_ordered(int du, int iu, int dv, int iv) const {
    std::uint64_t key = (std::uint64_t(du) << 45) | (std::uint64_t(iu) << 32) |
                        (std::uint64_t(dv) << 13) | std::uint64_t(iv);
    {
      std::shared_lock lock(prod_mutex_);
      auto it = products_.find(key);
      if (it != products_.end()) return it->second;
    }
    const Word u = levels_[du].words[iu];
    const Word v = levels_[dv].words[iv];
    ZVec result;
    bool standard = false;
    if (du == 1) {
      standard = true;
    } else {
      auto [llen, lidx] = levels_[du].fact[iu];
      const Word u2 = levels_[du - llen].words[levels_[du].fact_right[iu]];
      standard = !lex_less(u2, v);
    }
    if (standard) {
      int idx = index_of(concat(u, v));
      result.emplace_back(idx, 1);
    } else {
      auto [llen, lidx] = levels_[du].fact[iu];
      int ridx = levels_[du].fact_right[iu];
      int rlen = du - llen;
      std::map<int, std::int64_t> acc;
      // [u1, [u2, v]]
      for (const auto& [t, c] : pair_product(rlen, ridx, dv, iv))
        accumulate(acc, pair_product(llen, lidx, rlen + dv, t), c);
      // [u2, [v, u1]]
      for (const auto& [t, c] : pair_product(dv, iv, llen, lidx))
        accumulate(acc, pair_product(rlen, ridx, dv + llen, t), c);
      for (const auto& [i, c] : acc)
        if (c != 0) result.emplace_back(i, c);
    }
    std::unique_lock lock(prod_mutex_);
    return products_.emplace(key, std::move(result)).first->second;
  }

  void build_levels() {
    levels_[1].words = {Word{1, 0}, Word{1, 1}};
    // Duval's algorithm: Lyndon words over {0,1} in lexicographic order.
    std::vector<int> w{0};
    while (!w.empty()) {
      if (static_cast<int>(w.size()) <= cap_ && static_cast<int>(w.size()) > 1) {
        Word packed{static_cast<int>(w.size()), 0};
        for (int l : w) packed.bits = (packed.bits << 1) | static_cast<std::uint32_t>(l);
        levels_[packed.len].words.push_back(packed);
      }
      int n = static_cast<int>(w.size());
      std::vector<int> t = w;
      while (static_cast<int>(w.size()) < cap_) w.push_back(t[(w.size()) % n]);
      while (!w.empty() && w.back() == 1) w.pop_back();
      if (!w.empty()) w.back() = 1;
    }
    // standard factorization: the right factor is the longest proper Lyndon
    // suffix, equivalently the lexicographically smallest proper suffix
    for (int n = 2; n <= cap_; ++n) {
      auto& lv = levels_[n];
      lv.fact.resize(lv.words.size());
      lv.fact_right.resize(lv.words.size());
      for (std::size_t i = 0; i < lv.words.size(); ++i) {
        const Word& word = lv.words[i];
        int split = -1;
        for (int llen = 1; llen < n; ++llen) {
          if (is_lyndon(suffix(word, n - llen))) {
            split = llen;
            break;
          }
        }
        lv.fact[i] = {split, -1};
      }
      // resolve indices after all words of smaller degree exist
      for (std::size_t i = 0; i < lv.words.size(); ++i) {
        const Word& word = lv.words[i];
        int llen = lv.fact[i].first;
        lv.fact[i].second = index_in(levels_[llen], prefix(word, llen));
        lv.fact_right[i] = index_in(levels_[n - llen], suffix(word, n - llen));
      }
    }
  }

  static int index_in(const Level& lv, const Word& w) {
    auto it = std::lower_bound(lv.words.begin(), lv.words.end(), w,
                               [](const Word& a, const Word& b) { return a.bits < b.bits; });
    return static_cast<int>(it - lv.words.begin());
  }

  int cap_;
  std::vector<Level> levels_;
  mutable std::shared_mutex prod_mutex_;
  mutable std::unordered_map<std::uint64_t, ZVec> products_;
  mutable std::mutex gen_mutex_;
  mutable std::map<std::pair<int, int>, std::vector<ZVec>> gen_tables_;
};

}  // namespace thinlie
