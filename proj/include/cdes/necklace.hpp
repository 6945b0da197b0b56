#pragma once

// Words over {0..2k-1}, the parity-twisted order, the necklace sets N_λ and
// the periodic-pattern map from N_λ onto cyclic λ-unimodal permutations.

#include "cdes/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdes {

/// A word s_1..s_n on the alphabet {0..2k-1}.
class Word {
 public:
  Word(std::vector<int> letters, int k) : letters_(std::move(letters)), k_(k) {
    if (k < 1) throw std::invalid_argument("word needs k >= 1");
    for (int c : letters_)
      if (c < 0 || c >= 2 * k) throw std::invalid_argument("letter outside the 2k-letter alphabet");
  }

  int size() const { return static_cast<int>(letters_.size()); }
  int k() const { return k_; }
  int alphabet_size() const { return 2 * k_; }
  std::span<const int> letters() const { return letters_; }
  /// 0-based.
  int operator[](int i) const { return letters_[static_cast<std::size_t>(i)]; }

  /// a_t(s).
  int content(int t) const { return static_cast<int>(std::count(letters_.begin(), letters_.end(), t)); }
  /// o(s), the number of odd letters.
  int odd_count() const {
    return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), [](int c) { return c % 2 != 0; }));
  }

  /// Left rotation by r: s_{r+1}..s_n s_1..s_r.
  Word rotated(int r) const {
    std::vector<int> out(letters_);
    if (!out.empty()) {
      const int n = size();
      std::rotate(out.begin(), out.begin() + ((r % n) + n) % n, out.end());
    }
    return Word(std::move(out), k_);
  }

  /// Smallest p dividing n with s = (s_1..s_p)^{n/p}.
  int primitive_period() const {
    const int n = size();
    for (int p = 1; p < n; ++p) {
      if (n % p != 0) continue;
      bool ok = true;
      for (int i = p; i < n && ok; ++i) ok = letters_[static_cast<std::size_t>(i)] == letters_[static_cast<std::size_t>(i - p)];
      if (ok) return p;
    }
    return n;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<int> letters_;
  int k_;
};

inline std::string to_string(const Word& w);

/// Σ.
inline Word shift(const Word& s) { return s.rotated(1); }

inline bool is_primitive(const Word& s) { return s.primitive_period() == s.size(); }

/// The ≺ order. Equal words are incomparable.
inline bool precedes(const Word& s, const Word& t) {
  if (s.size() != t.size()) throw std::invalid_argument("precedes: words differ in length");
  if (s.k() != t.k()) throw std::invalid_argument("precedes: words use different alphabets");
  int odd = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] != t[i]) return (odd % 2 == 0) ? (s[i] < t[i]) : (s[i] > t[i]);
    odd += s[i] % 2;
  }
  return false;
}

/// Rotation class of a word, keyed by its lexicographically least rotation
/// under the ordinary integer order on letters.
class NecklaceClass {
 public:
  explicit NecklaceClass(const Word& any) : canonical_(any.rotated(least_rotation_offset(any))) {}

  /// Wraps a word already known to be its own least rotation.
  static NecklaceClass from_canonical(Word w) { return NecklaceClass(std::move(w), 0); }

  const Word& canonical() const { return canonical_; }
  int size() const { return canonical_.size(); }
  int k() const { return canonical_.k(); }

  friend bool operator==(const NecklaceClass&, const NecklaceClass&) = default;
  friend auto operator<=>(const NecklaceClass&, const NecklaceClass&) = default;

 private:
  NecklaceClass(Word w, int) : canonical_(std::move(w)) {}

  static int least_rotation_offset(const Word& w) {
    const int n = w.size();
    int best = 0;
    for (int r = 1; r < n; ++r) {
      for (int x = 0; x < n; ++x) {
        const int a = w[(r + x) % n], b = w[(best + x) % n];
        if (a != b) {
          if (a < b) best = r;
          break;
        }
      }
    }
    return best;
  }

  Word canonical_;
};

/// Reason the word fails membership in N_λ, or nullopt if it is a member.
inline std::optional<std::string> n_lambda_violation(const Word& s, const Composition& lam) {
  if (s.size() != lam.n()) return "word length " + std::to_string(s.size()) + " differs from |lambda| = " + std::to_string(lam.n());
  if (s.k() != lam.k()) return "alphabet has " + std::to_string(s.alphabet_size()) + " letters, lambda needs " + std::to_string(2 * lam.k());
  for (int t = 0; t < lam.k(); ++t) {
    const int block = s.content(2 * t) + s.content(2 * t + 1);
    if (block != lam.part(t))
      return "content: a_" + std::to_string(2 * t) + " + a_" + std::to_string(2 * t + 1) + " = " + std::to_string(block) +
             " but lambda_" + std::to_string(t + 1) + " = " + std::to_string(lam.part(t));
  }
  const int n = s.size();
  const int p = s.primitive_period();
  if (p == n) return std::nullopt;
  if (2 * p != n) return "word is a proper power q^" + std::to_string(n / p) + " with exponent > 2";
  const Word q(std::vector<int>(s.letters().begin(), s.letters().begin() + p), s.k());
  if (q.odd_count() % 2 == 0) return "word is q^2 with o(q) = " + std::to_string(q.odd_count()) + " even";
  return std::nullopt;
}

inline bool in_N_lambda(const Word& s, const Composition& lam) { return !n_lambda_violation(s, lam).has_value(); }

/// An element of N_λ.
struct NLambdaMember {
  NecklaceClass necklace;
  Composition lam;
  bool primitive;

  int odd_count() const { return necklace.canonical().odd_count(); }

  /// Validates membership; throws std::invalid_argument naming the failed clause.
  static NLambdaMember from_word(const Word& s, const Composition& lam) {
    if (auto why = n_lambda_violation(s, lam)) throw std::invalid_argument("not in N_lambda: " + *why);
    return NLambdaMember{NecklaceClass(s), lam, is_primitive(s)};
  }

  friend bool operator==(const NLambdaMember& a, const NLambdaMember& b) {
    return a.lam == b.lam && a.necklace == b.necklace;
  }
  friend auto operator<=>(const NLambdaMember& a, const NLambdaMember& b) {
    if (auto c = a.lam <=> b.lam; c != 0) return c;
    return a.necklace <=> b.necklace;
  }
};

namespace detail {

// Fixed-block-content necklace generation (FKM prenecklace recursion with
// per-block budget pruning). Emits canonical representatives in
// lexicographic order together with their primitive period.
template <class Visitor>
class NecklaceSearch {
 public:
  NecklaceSearch(const Composition& lam, std::optional<int> m, Visitor& visit)
      : lam_(lam), n_(lam.n()), k_(lam.k()), m_(m), visit_(visit) {
    a_.assign(static_cast<std::size_t>(n_) + 1, 0);
    used_.assign(static_cast<std::size_t>(k_), 0);
  }

  void run() { gen(1, 1); }

 private:
  bool take(int letter) {
    const auto b = static_cast<std::size_t>(letter / 2);
    if (used_[b] >= lam_.part(static_cast<int>(b))) return false;
    if (m_ && letter % 2 == 1 && odd_ + 1 > *m_) return false;
    ++used_[b];
    odd_ += letter % 2;
    return true;
  }
  void give_back(int letter) {
    --used_[static_cast<std::size_t>(letter / 2)];
    odd_ -= letter % 2;
  }

  void gen(int t, int p) {
    if (t > n_) {
      if (n_ % p != 0) return;
      if (m_ && odd_ != *m_) return;
      emit(p);
      return;
    }
    const int base = a_[static_cast<std::size_t>(t - p)];
    for (int j = base; j < 2 * k_; ++j) {
      if (!take(j)) continue;
      a_[static_cast<std::size_t>(t)] = j;
      gen(t + 1, j == base ? p : t);
      give_back(j);
    }
  }

  void emit(int p) {
    Word w(std::vector<int>(a_.begin() + 1, a_.end()), k_);
    if (p == n_) {
      visit_(NLambdaMember{NecklaceClass::from_canonical(std::move(w)), lam_, true});
      return;
    }
    if (2 * p != n_) return;
    int odd_root = 0;
    for (int i = 1; i <= p; ++i) odd_root += a_[static_cast<std::size_t>(i)] % 2;
    if (odd_root % 2 == 1) visit_(NLambdaMember{NecklaceClass::from_canonical(std::move(w)), lam_, false});
  }

  const Composition& lam_;
  int n_, k_;
  std::optional<int> m_;
  Visitor& visit_;
  std::vector<int> a_;
  std::vector<int> used_;
  int odd_ = 0;
};

}  // namespace detail

/// Visits N_λ (or N_λ^(m) when m is given), one member per necklace class,
/// in lexicographic order of canonical words.
template <class Visitor>
void for_each_N_lambda(const Composition& lam, std::optional<int> m, Visitor&& visit) {
  if (m && (*m < 0 || *m > lam.n())) throw std::invalid_argument("m must lie in [0, n]");
  detail::NecklaceSearch<std::remove_reference_t<Visitor>> s(lam, m, visit);
  s.run();
}

inline std::vector<NLambdaMember> enumerate_N_lambda(const Composition& lam, std::optional<int> m = std::nullopt) {
  std::vector<NLambdaMember> out;
  for_each_N_lambda(lam, m, [&](const NLambdaMember& x) { out.push_back(x); });
  return out;
}

/// The pattern π of a representative s: π_i is the ≺-rank of Σ^{i-1}(s).
/// For s = q² the tie between rotations j and j + n/2 (0-based, j < n/2)
/// puts j first iff o(s_1..s_j) is even.
inline Permutation ppat_pattern(const Word& s) {
  const int n = s.size();
  if (n < 1) throw std::invalid_argument("empty word");
  const int period = s.primitive_period();
  if (period != n && 2 * period != n) throw std::invalid_argument("pattern needs a primitive or 2-periodic word");

  // odd_prefix[j] = o(s_1..s_j)
  std::vector<int> odd_prefix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) odd_prefix[static_cast<std::size_t>(i) + 1] = odd_prefix[static_cast<std::size_t>(i)] + s[i] % 2;

  auto before = [&](int i, int j) {
    int odd = 0;
    for (int x = 0; x < n; ++x) {
      const int a = s[(i + x) % n];
      const int b = s[(j + x) % n];
      if (a != b) return (odd % 2 == 0) ? (a < b) : (a > b);
      odd += a % 2;
    }
    // Equal rotations only occur in the 2-periodic case, at distance n/2.
    const int lo = std::min(i, j);
    const bool lo_first = odd_prefix[static_cast<std::size_t>(lo)] % 2 == 0;
    return (i == lo) == lo_first && i != j;
  };

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), before);
  std::vector<int> pattern(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) pattern[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
  return Permutation(std::move(pattern));
}

/// PPat_λ of a member: the cyclic permutation (π_1 π_2 ... π_n).
inline Permutation ppat(const NLambdaMember& member) {
  const Permutation pattern = ppat_pattern(member.necklace.canonical());
  return cycle_to_one_line(pattern.entries());
}

/// All members of N_λ^(m) whose image under PPat_λ is p, built from the
/// two ways of splitting each unimodal block at its peak.
inline std::vector<NLambdaMember> ppat_preimage(const Permutation& p, const Composition& lam, int m) {
  if (p.size() != lam.n()) throw std::invalid_argument("permutation and composition sizes differ");
  if (!is_cyclic(p) || !is_lambda_unimodal(p, lam)) throw std::invalid_argument("permutation is not in C(lambda)");
  const int k = lam.k();
  const int base = count_outside_partial_sums(descent_set(p), lam);
  const int j = m - base;
  if (j < 0 || j > k) return {};

  // Peak offset (0-based, within block) of each block.
  std::vector<int> peak(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    const int lo = lam.partial_sum(t) + 1;
    int best = lo;
    for (int i = lo; i <= lam.partial_sum(t + 1); ++i)
      if (p(i) > p(best)) best = i;
    peak[static_cast<std::size_t>(t)] = best - lo;
  }

  const std::vector<int> pattern = one_line_to_cycle(p, 1);
  const int n = lam.n();
  std::vector<NLambdaMember> out;
  std::vector<int> e(static_cast<std::size_t>(2 * k) + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    if (std::popcount(mask) != j) continue;
    // Blocks in mask put their peak in the decreasing run.
    for (int t = 0; t < k; ++t) {
      const int start = lam.partial_sum(t);
      const int rising = peak[static_cast<std::size_t>(t)] + (((mask >> t) & 1U) ? 0 : 1);
      e[static_cast<std::size_t>(2 * t)] = start;
      e[static_cast<std::size_t>(2 * t + 1)] = start + rising;
    }
    e[static_cast<std::size_t>(2 * k)] = n;
    std::vector<int> letters(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int v = pattern[static_cast<std::size_t>(i)];
      int t = 0;
      while (!(e[static_cast<std::size_t>(t)] < v && v <= e[static_cast<std::size_t>(t + 1)])) ++t;
      letters[static_cast<std::size_t>(i)] = t;
    }
    const Word w(std::move(letters), k);
    if (auto why = n_lambda_violation(w, lam))
      throw std::logic_error("cut word " + to_string(w) + " left N_lambda: " + *why);
    out.push_back(NLambdaMember{NecklaceClass(w), lam, is_primitive(w)});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- text forms ----

/// Digit string for alphabets of at most 10 letters, comma-separated otherwise.
inline std::string to_string(const Word& w) { return detail::join_ints(w.letters(), w.alphabet_size() <= 10); }

inline Word parse_word(std::string_view text, int k) {
  std::vector<int> letters;
  if (text.find(',') == std::string_view::npos && 2 * k <= 10) {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad letter '" + std::string(1, c) + "'");
      letters.push_back(c - '0');
    }
  } else {
    letters = detail::parse_int_list(text, false);
  }
  if (letters.empty()) throw std::invalid_argument("empty word");
  return Word(std::move(letters), k);
}

}  // namespace cdes
