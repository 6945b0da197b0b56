#pragma once

// Closed-form counts: Möbius function, primitive necklace counts, the
// aggregates over N_λ^(m), the inversion for |C_λ(m)|, and the character χ_λ.

#include "cdes/exact.hpp"
#include "cdes/permutation.hpp"
#include "cdes/report.hpp"

#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdes {

inline int mobius(long long n) {
  if (n < 1) throw std::invalid_argument("mobius needs n >= 1");
  int sign = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// Number of primitive necklaces with content a_1..a_m. Zero entries are
/// dropped, so L(a, 0) = L(a).
inline ExactInt count_primitive_necklaces(std::span<const int> content) {
  std::vector<int> a;
  for (int x : content) {
    if (x < 0) throw std::invalid_argument("negative content");
    if (x > 0) a.push_back(x);
  }
  if (a.empty()) throw std::invalid_argument("content must not be all zero");
  const int n = std::accumulate(a.begin(), a.end(), 0);
  int g = 0;
  for (int x : a) g = std::gcd(g, x);
  ExactInt total = 0;
  std::vector<int> scaled(a.size());
  for (int l = 1; l <= g; ++l) {
    if (g % l != 0) continue;
    const int mu = mobius(l);
    if (mu == 0) continue;
    for (std::size_t i = 0; i < a.size(); ++i) scaled[i] = a[i] / l;
    total += mu * multinomial(scaled);
  }
  if (total % n != 0) throw std::logic_error("necklace count not divisible by n");
  return total / n;
}

namespace detail {

// Calls f(content) for each (λ_1 - i_1, i_1, ..., λ_k - i_k, i_k) with Σ i_t = m.
template <class F>
void for_each_split(const Composition& lam, int m, F&& f) {
  std::vector<int> content(static_cast<std::size_t>(2 * lam.k()));
  auto rec = [&](auto& self, int t, int remaining) -> void {
    if (t == lam.k()) {
      if (remaining == 0) f(std::span<const int>(content));
      return;
    }
    const int part = lam.part(t);
    for (int i = 0; i <= std::min(part, remaining); ++i) {
      content[static_cast<std::size_t>(2 * t)] = part - i;
      content[static_cast<std::size_t>(2 * t + 1)] = i;
      self(self, t + 1, remaining - i);
    }
  };
  rec(rec, 0, m);
}

inline void check_m(const Composition& lam, int m) {
  if (m < 0 || m > lam.n()) throw std::invalid_argument("m must lie in [0, n]");
}

}  // namespace detail

/// Primitive classes in N_λ^(m).
inline ExactInt bigL(const Composition& lam, int m) {
  detail::check_m(lam, m);
  ExactInt total = 0;
  detail::for_each_split(lam, m, [&](std::span<const int> c) { total += count_primitive_necklaces(c); });
  return total;
}

/// |N_λ^(m)|, adding the q² classes when d is even and m ≡ 2 (mod 4).
inline ExactInt count_N_lambda_m(const Composition& lam, int m) {
  detail::check_m(lam, m);
  ExactInt total = bigL(lam, m);
  if (lam.gcd() % 2 == 0 && m % 4 == 2) total += bigL(lam.halved(), m / 2);
  return total;
}

/// |C_λ(m)| recovered from the necklace counts by inverting (1+x)^k.
inline ExactInt a_lambda(const Composition& lam, int m) {
  detail::check_m(lam, m);
  const int k = lam.k();
  ExactInt total = 0;
  for (int j = 0; j <= m; ++j) {
    const ExactInt term = binomial(m - j + k - 1, m - j) * count_N_lambda_m(lam, j);
    if ((m - j) % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

/// χ_λ = (k-1)! d^{k-1} μ(d) when λ = (d^k), else 0.
inline ExactInt chi(const Composition& lam) {
  if (!lam.all_parts_equal()) return 0;
  const int d = lam.part(0);
  const int k = lam.k();
  ExactInt r = factorial(k - 1);
  r *= boost::multiprecision::pow(ExactInt(d), static_cast<unsigned>(k - 1));
  return r * mobius(d);
}

// ---- the three counting lemmas used in the main argument ----

/// Σ_{i=0}^{n} (-1)^i i^r C(n, i); vanishes for r < n.
inline ExactInt alternating_power_sum(int n, int r) {
  ExactInt total = 0;
  for (int i = 0; i <= n; ++i) {
    const ExactInt term = boost::multiprecision::pow(ExactInt(i), static_cast<unsigned>(r)) * binomial(n, i);
    if (i % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

/// Σ_{i=1}^{k} (-1)^{i+k} C(di, k) C(k, i), which equals d^k.
inline ExactInt box_selection_sum(int d, int k) {
  ExactInt total = 0;
  for (int i = 1; i <= k; ++i) {
    const ExactInt term = binomial(static_cast<long long>(d) * i, k) * binomial(k, i);
    if ((i + k) % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

/// Σ over 0 ≤ a_t ≤ γ_t with Σ a_t = i of r! / Π (γ_t - a_t)! a_t!.
inline ExactInt colored_split_sum(const Composition& gamma, int i) {
  ExactInt total = 0;
  if (i < 0 || i > gamma.n()) return total;
  detail::for_each_split(gamma, i, [&](std::span<const int> c) { total += multinomial(c); });
  return total;
}

/// r! / Π γ_t! · C(r, i).
inline ExactInt colored_split_closed_form(const Composition& gamma, int i) {
  return multinomial(gamma.parts()) * binomial(gamma.n(), i);
}

struct CountingLemmaLimits {
  int power_n_max = 10;  // alternating sums: all n ≤ this, r < n
  int box_d_max = 6;
  int box_k_max = 6;
  int split_r_max = 10;  // all compositions γ of r ≤ this, all i
};

inline nlohmann::json check_counting_lemmas_params(const CountingLemmaLimits& lim) {
  return {{"power_n_max", lim.power_n_max},
          {"box_d_max", lim.box_d_max},
          {"box_k_max", lim.box_k_max},
          {"split_r_max", lim.split_r_max}};
}

/// Evaluates both sides of the three lemmas over every parameter tuple
/// within the limits. Keys name the instance.
inline VerificationReport check_counting_lemmas(const CountingLemmaLimits& lim = {}) {
  if (lim.power_n_max < 1 || lim.box_d_max < 1 || lim.box_k_max < 1 || lim.split_r_max < 1)
    throw std::invalid_argument("counting lemma limits must be positive");
  Stopwatch clock;
  Histogram lhs, rhs;
  for (int n = 1; n <= lim.power_n_max; ++n)
    for (int r = 0; r < n; ++r) {
      const std::string key = "bincoef n=" + std::to_string(n) + " r=" + std::to_string(r);
      lhs[key] = alternating_power_sum(n, r);
      rhs[key] = 0;
    }
  for (int d = 1; d <= lim.box_d_max; ++d)
    for (int k = 1; k <= lim.box_k_max; ++k) {
      const std::string key = "incex d=" + std::to_string(d) + " k=" + std::to_string(k);
      lhs[key] = box_selection_sum(d, k);
      rhs[key] = boost::multiprecision::pow(ExactInt(d), static_cast<unsigned>(k));
    }
  for (int r = 1; r <= lim.split_r_max; ++r)
    for (const Composition& gamma : compositions_of(r))
      for (int i = 0; i <= r; ++i) {
        const std::string key = "long gamma=" + to_string(gamma) + " i=" + std::to_string(i);
        lhs[key] = colored_split_sum(gamma, i);
        rhs[key] = colored_split_closed_form(gamma, i);
      }
  const auto count = static_cast<std::uint64_t>(lhs.size());
  return make_report("counting_lemmas", check_counting_lemmas_params(lim), std::move(lhs), std::move(rhs), count, clock);
}

}  // namespace cdes
