#pragma once

// Partitions, standard Young tableaux (English convention), RSK, irreducible
// characters by the Murnaghan–Nakayama rule, and the shape decomposition of
// the representation induced from a faithful character of an n-cycle.

#include "cdes/counting.hpp"
#include "cdes/exact.hpp"
#include "cdes/permutation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdes {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
      if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be non-increasing");
    }
  }
  /// Sorted parts of a composition (its cycle type).
  static Partition from_composition(const Composition& c) {
    std::vector<int> p(c.parts().begin(), c.parts().end());
    std::sort(p.rbegin(), p.rend());
    return Partition(std::move(p));
  }

  int n() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts_.size()); }
  std::span<const int> parts() const { return parts_; }
  int part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
  Composition as_composition() const { return Composition(parts_); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> parts;
  auto rec = [&](auto& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  if (n >= 1) rec(rec, n, n);
  return out;
}

inline std::string to_string(const Partition& p) { return detail::join_ints(p.parts(), false); }
inline Partition parse_partition(std::string_view text) { return Partition(detail::parse_int_list(text, false)); }

/// A standard Young tableau; row 0 is the top row.
class StandardTableau {
 public:
  explicit StandardTableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
    std::vector<int> shape;
    int n = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) throw std::invalid_argument("tableau rows must be nonempty");
      shape.push_back(static_cast<int>(rows_[r].size()));
      n += shape.back();
    }
    shape_ = Partition(shape);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        const int v = rows_[r][c];
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("entries must be 1..n");
        seen[static_cast<std::size_t>(v)] = true;
        if (c && rows_[r][c - 1] >= v) throw std::invalid_argument("rows must increase");
        if (r && rows_[r - 1][c] >= v) throw std::invalid_argument("columns must increase");
      }
  }

  const Partition& shape() const { return shape_; }
  int size() const { return shape_.n(); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  /// 0-based row containing value v.
  int row_of(int v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (std::find(rows_[r].begin(), rows_[r].end(), v) != rows_[r].end()) return static_cast<int>(r);
    throw std::invalid_argument("value not in tableau");
  }

  friend bool operator==(const StandardTableau& a, const StandardTableau& b) { return a.rows_ == b.rows_; }
  friend auto operator<=>(const StandardTableau& a, const StandardTableau& b) { return a.rows_ <=> b.rows_; }

 private:
  std::vector<std::vector<int>> rows_;
  Partition shape_;
};

/// {i : i+1 lies strictly south of i}.
inline DescentSet descent_set(const StandardTableau& t) {
  const int n = t.size();
  std::vector<int> row(static_cast<std::size_t>(n) + 1);
  for (std::size_t r = 0; r < t.rows().size(); ++r)
    for (int v : t.rows()[r]) row[static_cast<std::size_t>(v)] = static_cast<int>(r);
  DescentSet d(n);
  for (int i = 1; i < n; ++i)
    if (row[static_cast<std::size_t>(i) + 1] > row[static_cast<std::size_t>(i)]) d.insert(i);
  return d;
}

inline std::string to_string(const StandardTableau& t) {
  std::string s;
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    if (r) s += '/';
    s += detail::join_ints(t.rows()[r], false);
  }
  return s;
}

/// Visits SYT(shape), placing 1..n in turn; rows are tried top to bottom.
template <class Visitor>
void for_each_SYT(const Partition& shape, Visitor&& visit) {
  const int n = shape.n();
  if (n == 0) return;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(shape.length()));
  auto rec = [&](auto& self, int v) -> void {
    if (v > n) {
      visit(StandardTableau(rows));
      return;
    }
    for (int r = 0; r < shape.length(); ++r) {
      const auto ur = static_cast<std::size_t>(r);
      const int len = static_cast<int>(rows[ur].size());
      if (len >= shape.part(r)) continue;
      if (r && static_cast<int>(rows[ur - 1].size()) <= len) continue;
      rows[ur].push_back(v);
      self(self, v + 1);
      rows[ur].pop_back();
    }
  };
  rec(rec, 1);
}

inline std::vector<StandardTableau> enumerate_SYT(const Partition& shape) {
  std::vector<StandardTableau> out;
  for_each_SYT(shape, [&](const StandardTableau& t) { out.push_back(t); });
  return out;
}

/// f^ν by the hook-length formula.
inline ExactInt syt_count(const Partition& shape) {
  ExactInt hooks = 1;
  for (int r = 0; r < shape.length(); ++r)
    for (int c = 0; c < shape.part(r); ++c) {
      int below = 0;
      for (int r2 = r + 1; r2 < shape.length() && shape.part(r2) > c; ++r2) ++below;
      hooks *= static_cast<unsigned>(shape.part(r) - c - 1 + below + 1);
    }
  return factorial(shape.n()) / hooks;
}

/// Row insertion; returns (P, Q).
inline std::pair<StandardTableau, StandardTableau> rsk(const Permutation& p) {
  std::vector<std::vector<int>> P, Q;
  for (int i = 1; i <= p.size(); ++i) {
    int x = p(i);
    std::size_t r = 0;
    for (;; ++r) {
      if (r == P.size()) {
        P.push_back({x});
        Q.push_back({i});
        break;
      }
      auto it = std::upper_bound(P[r].begin(), P[r].end(), x);
      if (it == P[r].end()) {
        P[r].push_back(x);
        Q[r].push_back(i);
        break;
      }
      std::swap(x, *it);
    }
  }
  return {StandardTableau(std::move(P)), StandardTableau(std::move(Q))};
}

namespace detail {

using CharacterKey = std::pair<std::vector<int>, std::vector<int>>;

struct CharacterMemo {
  std::shared_mutex mu;
  std::map<CharacterKey, ExactInt> table;
};

inline CharacterMemo& character_memo() {
  static CharacterMemo memo;
  return memo;
}

// Removes border strips of length class_parts.front() using beta-sets.
inline ExactInt mn_recurse(const std::vector<int>& shape, const std::vector<int>& class_parts) {
  if (class_parts.empty()) return shape.empty() ? 1 : 0;
  CharacterKey key{shape, class_parts};
  auto& memo = character_memo();
  {
    std::shared_lock lock(memo.mu);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  }
  const int L = static_cast<int>(shape.size());
  const int r = class_parts.front();
  const std::vector<int> rest(class_parts.begin() + 1, class_parts.end());
  std::vector<int> beta(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) beta[static_cast<std::size_t>(i)] = shape[static_cast<std::size_t>(i)] + (L - 1 - i);

  ExactInt total = 0;
  for (int i = 0; i < L; ++i) {
    const int from = beta[static_cast<std::size_t>(i)];
    const int to = from - r;
    if (to < 0 || std::find(beta.begin(), beta.end(), to) != beta.end()) continue;
    int between = 0;
    for (int b : beta)
      if (b > to && b < from) ++between;
    std::vector<int> nb = beta;
    nb[static_cast<std::size_t>(i)] = to;
    std::sort(nb.rbegin(), nb.rend());
    std::vector<int> ns;
    for (int j = 0; j < L; ++j) {
      const int part = nb[static_cast<std::size_t>(j)] - (L - 1 - j);
      if (part > 0) ns.push_back(part);
    }
    const ExactInt sub = mn_recurse(ns, rest);
    if (between % 2 == 0)
      total += sub;
    else
      total -= sub;
  }
  {
    std::unique_lock lock(memo.mu);
    memo.table.emplace(std::move(key), total);
  }
  return total;
}

}  // namespace detail

/// χ^shape evaluated on the class of cycle type class_type.
inline ExactInt mn_character(const Partition& shape, const Partition& class_type) {
  if (shape.n() != class_type.n()) throw std::invalid_argument("shape and class sizes differ");
  return detail::mn_recurse(std::vector<int>(shape.parts().begin(), shape.parts().end()),
                            std::vector<int>(class_type.parts().begin(), class_type.parts().end()));
}

/// z_λ = Π i^{m_i} m_i!, the centralizer order.
inline ExactInt centralizer_order(const Partition& class_type) {
  ExactInt z = 1;
  std::map<int, int> mult;
  for (int p : class_type.parts()) ++mult[p];
  for (const auto& [part, m] : mult) {
    z *= boost::multiprecision::pow(ExactInt(part), static_cast<unsigned>(m));
    z *= factorial(m);
  }
  return z;
}

/// |K_λ| = n! / z_λ.
inline ExactInt class_size(const Partition& class_type) { return factorial(class_type.n()) / centralizer_order(class_type); }

/// Shape multiplicities of a representation; tableau multisets are left implicit.
struct BasisMultiset {
  int n = 0;
  std::map<Partition, ExactInt> multiplicity;

  /// Σ m_ν f^ν.
  ExactInt dimension() const {
    ExactInt d = 0;
    for (const auto& [shape, m] : multiplicity) d += m * syt_count(shape);
    return d;
  }
};

/// m_ν = <χ, χ^ν>, with χ the character of the induced representation.
inline BasisMultiset rho_multiplicities(int n) {
  if (n < 1) throw std::invalid_argument("rho_multiplicities needs n >= 1");
  const auto classes = partitions_of(n);
  std::vector<ExactInt> weighted;  // |K_λ| χ_λ
  for (const Partition& c : classes) weighted.push_back(class_size(c) * chi(c.as_composition()));
  const ExactInt order = factorial(n);
  BasisMultiset out;
  out.n = n;
  for (const Partition& shape : classes) {
    ExactInt inner = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (weighted[i] == 0) continue;
      inner += weighted[i] * mn_character(shape, classes[i]);
    }
    if (inner % order != 0) throw std::logic_error("character inner product is not an integer");
    out.multiplicity[shape] = inner / order;
  }
  return out;
}

/// Σ_ν m_ν · (descent-set histogram of SYT(ν)), keyed by every D ⊆ [n-1].
inline std::map<DescentSet, ExactInt> b_rho_descent_distribution(int n) {
  std::map<DescentSet, ExactInt> hist;
  for (const DescentSet& d : DescentSet::all_subsets(n)) hist[d] = 0;
  const BasisMultiset rho = rho_multiplicities(n);
  for (const auto& [shape, m] : rho.multiplicity) {
    if (m == 0) continue;
    for_each_SYT(shape, [&](const StandardTableau& t) { hist[descent_set(t)] += m; });
  }
  return hist;
}

}  // namespace cdes
