#pragma once

// Exact integer arithmetic shared by every counting routine.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdes {

using ExactInt = boost::multiprecision::cpp_int;

inline std::string to_string(const ExactInt& v) { return v.str(); }

inline ExactInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  // Table grows on demand; entries are never invalidated once written.
  static std::vector<ExactInt> table{ExactInt(1)};
  static std::mutex mu;
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() * static_cast<unsigned>(table.size()));
  return table[static_cast<std::size_t>(n)];
}

/// C(a, b), zero whenever b < 0 or b > a. Negative a is treated as an empty
/// range as well, which is the convention every sum in this library relies on.
inline ExactInt binomial(long long a, long long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  ExactInt r = 1;
  for (long long i = 1; i <= b; ++i) {
    r *= static_cast<unsigned long long>(a - b + i);
    r /= static_cast<unsigned long long>(i);
  }
  return r;
}

/// (Σ parts)! / Π parts!. Zero parts contribute 0! = 1.
inline ExactInt multinomial(std::span<const int> parts) {
  int total = 0;
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("multinomial with a negative part");
    total += p;
  }
  ExactInt r = factorial(total);
  for (int p : parts) r /= factorial(p);
  return r;
}

inline int sign_of_parity(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace cdes
