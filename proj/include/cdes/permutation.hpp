#pragma once

// Permutations, compositions, descent sets and the λ-unimodality predicates.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdes {

/// A permutation of {1..n} in one-line notation.
class Permutation {
 public:
  explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    const int n = static_cast<int>(entries_.size());
    if (n < 1) throw std::invalid_argument("permutation must have n >= 1");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : entries_) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("not a permutation of 1..n");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> e(static_cast<std::size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e));
  }

  int size() const { return static_cast<int>(entries_.size()); }
  /// 1-based access, p(i) = p_i.
  int operator()(int i) const { return entries_[static_cast<std::size_t>(i - 1)]; }
  std::span<const int> entries() const { return entries_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> entries_;
};

/// Ordered list of positive parts.
class Composition {
 public:
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("composition needs at least one part");
    int s = 0;
    for (int p : parts_) {
      if (p < 1) throw std::invalid_argument("composition parts must be positive");
      s += p;
      partial_sums_.push_back(s);
    }
  }

  /// (1,1,...,1) with n parts.
  static Composition ones(int n) { return Composition(std::vector<int>(static_cast<std::size_t>(n), 1)); }
  static Composition single(int n) { return Composition(std::vector<int>{n}); }

  int n() const { return partial_sums_.back(); }
  int k() const { return static_cast<int>(parts_.size()); }
  std::span<const int> parts() const { return parts_; }
  int part(int t) const { return parts_[static_cast<std::size_t>(t)]; }
  /// s_1(λ) < s_2(λ) < ... < s_k(λ) = n.
  std::span<const int> partial_sums() const { return partial_sums_; }
  /// s_{t}(λ) with s_0 = 0, t in [0, k].
  int partial_sum(int t) const { return t == 0 ? 0 : partial_sums_[static_cast<std::size_t>(t - 1)]; }

  int gcd() const {
    int g = 0;
    for (int p : parts_) g = std::gcd(g, p);
    return g;
  }
  bool all_parts_equal() const {
    return std::adjacent_find(parts_.begin(), parts_.end(), std::not_equal_to<>()) == parts_.end();
  }
  /// λ/2; requires every part even.
  Composition halved() const {
    std::vector<int> h;
    for (int p : parts_) {
      if (p % 2 != 0) throw std::invalid_argument("halved() needs every part even");
      h.push_back(p / 2);
    }
    return Composition(std::move(h));
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> partial_sums_;
};

/// Subset of {1..n-1}; stored as a bitmask, so n is limited to 64.
class DescentSet {
 public:
  static constexpr int kMaxN = 64;

  explicit DescentSet(int n = 1, std::uint64_t bits = 0) : n_(n), bits_(bits) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("descent sets support 1 <= n <= 64");
    if (bits_ & ~valid_mask()) throw std::invalid_argument("descent set element out of range");
  }
  DescentSet(int n, std::span<const int> elements) : DescentSet(n) {
    for (int e : elements) insert(e);
  }

  /// Every subset of [n-1], ordered by bitmask.
  static std::vector<DescentSet> all_subsets(int n) {
    std::vector<DescentSet> out;
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    out.reserve(count);
    for (std::uint64_t b = 0; b < count; ++b) out.emplace_back(n, b << 1);
    return out;
  }

  int universe() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(int i) const { return i >= 1 && i < n_ && ((bits_ >> i) & 1U); }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }

  void insert(int i) {
    if (i < 1 || i >= n_) throw std::invalid_argument("descent set element out of range");
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(int i) {
    if (i >= 1 && i < n_) bits_ &= ~(std::uint64_t{1} << i);
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 1; i < n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  friend bool operator==(const DescentSet&, const DescentSet&) = default;
  friend auto operator<=>(const DescentSet&, const DescentSet&) = default;

 private:
  std::uint64_t valid_mask() const {
    // bits 1..n-1
    if (n_ == 1) return 0;
    const std::uint64_t upto = (n_ == kMaxN) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    return upto & ~std::uint64_t{1};
  }

  int n_;
  std::uint64_t bits_;
};

inline DescentSet descent_set(const Permutation& p) {
  DescentSet d(p.size());
  for (int i = 1; i < p.size(); ++i)
    if (p(i) > p(i + 1)) d.insert(i);
  return d;
}

inline int des(const Permutation& p) { return descent_set(p).size(); }

inline bool is_cyclic(const Permutation& p) {
  int len = 0;
  int x = 1;
  do {
    x = p(x);
    ++len;
  } while (x != 1);
  return len == p.size();
}

/// The permutation sending cycle_j to cycle_{j+1} (indices cyclic).
inline Permutation cycle_to_one_line(std::span<const int> cycle) {
  const int n = static_cast<int>(cycle.size());
  if (n < 1) throw std::invalid_argument("empty cycle");
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    const int from = cycle[static_cast<std::size_t>(j)];
    if (from < 1 || from > n || e[static_cast<std::size_t>(from - 1)] != 0)
      throw std::invalid_argument("cycle entries must be distinct values in 1..n");
    e[static_cast<std::size_t>(from - 1)] = cycle[static_cast<std::size_t>((j + 1) % n)];
  }
  return Permutation(std::move(e));
}

/// Cycle listing (start, p(start), p²(start), ...); requires p cyclic.
inline std::vector<int> one_line_to_cycle(const Permutation& p, int start = 1) {
  if (!is_cyclic(p)) throw std::invalid_argument("permutation is not a single n-cycle");
  std::vector<int> c;
  int x = start;
  do {
    c.push_back(x);
    x = p(x);
  } while (x != start);
  return c;
}

/// Strictly increasing then strictly decreasing.
inline bool is_unimodal(std::span<const int> w) {
  std::size_t i = 0;
  while (i + 1 < w.size() && w[i] < w[i + 1]) ++i;
  while (i + 1 < w.size() && w[i] > w[i + 1]) ++i;
  return i + 1 >= w.size();
}

inline bool is_lambda_unimodal(const Permutation& p, const Composition& lam) {
  if (lam.n() != p.size()) throw std::invalid_argument("composition and permutation sizes differ");
  auto e = p.entries();
  for (int t = 0; t < lam.k(); ++t)
    if (!is_unimodal(e.subspan(static_cast<std::size_t>(lam.partial_sum(t)), static_cast<std::size_t>(lam.part(t)))))
      return false;
  return true;
}

/// |D \ S(λ)|.
inline int count_outside_partial_sums(const DescentSet& d, const Composition& lam) {
  DescentSet rest = d;
  for (int s : lam.partial_sums()) rest.erase(s);
  return rest.size();
}

/// D \ S(λ) restricted to each block is a suffix of that block's interior positions.
inline bool is_lambda_unimodal_set(const DescentSet& d, const Composition& lam) {
  if (d.universe() != lam.n()) throw std::invalid_argument("descent set universe differs from |λ|");
  for (int t = 0; t < lam.k(); ++t) {
    const int lo = lam.partial_sum(t) + 1;
    const int hi = lam.partial_sum(t + 1) - 1;  // interior descent positions lo..hi
    bool seen = false;
    for (int i = lo; i <= hi; ++i) {
      if (d.contains(i))
        seen = true;
      else if (seen)
        return false;
    }
  }
  return true;
}

namespace detail {

// Depth-first generation of λ-unimodal permutations in lexicographic order.
// With cyclic_only, partial assignments that close a short cycle are pruned.
template <class Visitor>
class UnimodalSearch {
 public:
  UnimodalSearch(const Composition& lam, bool cyclic_only, Visitor& visit)
      : lam_(lam), n_(lam.n()), cyclic_(cyclic_only), visit_(visit) {
    value_.assign(static_cast<std::size_t>(n_) + 1, 0);
    used_.assign(static_cast<std::size_t>(n_) + 1, false);
    falling_.assign(static_cast<std::size_t>(n_) + 1, false);
    block_start_.assign(static_cast<std::size_t>(n_) + 1, false);
    for (int t = 0; t < lam.k(); ++t) block_start_[static_cast<std::size_t>(lam.partial_sum(t) + 1)] = true;
    path_start_.resize(static_cast<std::size_t>(n_) + 1);
    path_end_.resize(static_cast<std::size_t>(n_) + 1);
    std::iota(path_start_.begin(), path_start_.end(), 0);
    std::iota(path_end_.begin(), path_end_.end(), 0);
  }

  void run() { place(1); }

 private:
  void place(int pos) {
    if (pos > n_) {
      visit_(Permutation(std::vector<int>(value_.begin() + 1, value_.end())));
      return;
    }
    const auto upos = static_cast<std::size_t>(pos);
    const bool first = block_start_[upos];
    const int prev = first ? 0 : value_[upos - 1];
    const bool prev_falling = first ? false : falling_[upos - 1];
    for (int v = 1; v <= n_; ++v) {
      const auto uv = static_cast<std::size_t>(v);
      if (used_[uv]) continue;
      bool falling = false;
      if (!first) {
        if (v > prev) {
          if (prev_falling) continue;
        } else {
          falling = true;
        }
      }
      // Edge pos -> v in the functional digraph.
      int saved_end = 0, saved_start = 0, a = 0, b = 0;
      if (cyclic_) {
        a = path_start_[upos];
        if (a == v && pos != n_) continue;
        b = path_end_[uv];
        saved_end = path_end_[static_cast<std::size_t>(a)];
        saved_start = path_start_[static_cast<std::size_t>(b)];
        path_end_[static_cast<std::size_t>(a)] = b;
        path_start_[static_cast<std::size_t>(b)] = a;
      }
      used_[uv] = true;
      value_[upos] = v;
      falling_[upos] = falling;
      place(pos + 1);
      used_[uv] = false;
      if (cyclic_) {
        path_end_[static_cast<std::size_t>(a)] = saved_end;
        path_start_[static_cast<std::size_t>(b)] = saved_start;
      }
    }
  }

  const Composition& lam_;
  int n_;
  bool cyclic_;
  Visitor& visit_;
  std::vector<int> value_;
  std::vector<bool> used_;
  std::vector<bool> falling_;
  std::vector<bool> block_start_;
  // path_start_[e] is the first vertex of the partial path ending at e;
  // path_end_[s] the last vertex of the path starting at s.
  std::vector<int> path_start_;
  std::vector<int> path_end_;
};

}  // namespace detail

/// Visits U(λ), the λ-unimodal permutations, in lexicographic order.
template <class Visitor>
void for_each_lambda_unimodal(const Composition& lam, Visitor&& visit) {
  detail::UnimodalSearch<std::remove_reference_t<Visitor>> s(lam, false, visit);
  s.run();
}

/// Visits C(λ), the cyclic λ-unimodal permutations, in lexicographic order.
template <class Visitor>
void for_each_cyclic_lambda_unimodal(const Composition& lam, Visitor&& visit) {
  detail::UnimodalSearch<std::remove_reference_t<Visitor>> s(lam, true, visit);
  s.run();
}

/// C_n in lexicographic order.
template <class Visitor>
void for_each_cyclic(int n, Visitor&& visit) {
  for_each_cyclic_lambda_unimodal(Composition::ones(n), std::forward<Visitor>(visit));
}

/// S_n in lexicographic order.
template <class Visitor>
void for_each_permutation(int n, Visitor&& visit) {
  for_each_lambda_unimodal(Composition::ones(n), std::forward<Visitor>(visit));
}

inline std::vector<Permutation> enumerate_cyclic_lambda_unimodal(const Composition& lam) {
  std::vector<Permutation> out;
  for_each_cyclic_lambda_unimodal(lam, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

/// C_λ(m): members of C(λ) with |Des \ S(λ)| = m.
inline std::vector<Permutation> enumerate_cyclic_lambda_unimodal(const Composition& lam, int m) {
  std::vector<Permutation> out;
  for_each_cyclic_lambda_unimodal(lam, [&](const Permutation& p) {
    if (count_outside_partial_sums(descent_set(p), lam) == m) out.push_back(p);
  });
  return out;
}

/// All compositions of n, lexicographic by parts.
inline std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  std::vector<int> parts;
  auto rec = [&](auto& self, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = 1; p <= remaining; ++p) {
      parts.push_back(p);
      self(self, remaining - p);
      parts.pop_back();
    }
  };
  if (n >= 1) rec(rec, n);
  return out;
}

// ---- text forms ----

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text, bool allow_digit_string) {
  std::vector<int> out;
  if (text.empty()) return out;
  const bool has_comma = text.find(',') != std::string_view::npos;
  if (!has_comma && allow_digit_string && text.size() > 1) {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("expected digits in '" + std::string(text) + "'");
      out.push_back(c - '0');
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    const std::string_view tok = text.substr(pos, next - pos);
    if (tok.empty()) throw std::invalid_argument("empty entry in list '" + std::string(text) + "'");
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad integer '" + std::string(tok) + "'");
      v = v * 10 + (c - '0');
      if (v > 1'000'000) throw std::invalid_argument("integer too large");
    }
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

inline std::string join_ints(std::span<const int> v, bool compact) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!compact && i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace detail

/// Digit string for n <= 9, comma-separated otherwise.
inline std::string to_string(const Permutation& p) { return detail::join_ints(p.entries(), p.size() <= 9); }
inline std::string to_string(const Composition& c) { return detail::join_ints(c.parts(), false); }
/// Sorted comma list; the empty set prints as "".
inline std::string to_string(const DescentSet& d) {
  const auto e = d.elements();
  return detail::join_ints(e, false);
}

inline Permutation parse_permutation(std::string_view text) {
  return Permutation(detail::parse_int_list(text, true));
}

inline Composition parse_composition(std::string_view text) {
  auto parts = detail::parse_int_list(text, false);
  if (parts.empty()) throw std::invalid_argument("empty composition");
  return Composition(std::move(parts));
}

inline DescentSet parse_descent_set(std::string_view text, int n) {
  const auto e = detail::parse_int_list(text, false);
  return DescentSet(n, e);
}

/// Parses "(13584726)" or "(1,3,5,...)" into the one-line permutation.
inline Permutation parse_cycle(std::string_view text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  const auto c = detail::parse_int_list(text, true);
  return cycle_to_one_line(c);
}

inline std::string cycle_string(std::span<const int> cycle) {
  return "(" + detail::join_ints(cycle, cycle.size() <= 9) + ")";
}

}  // namespace cdes
