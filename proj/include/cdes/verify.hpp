#pragma once

// Named identity checks. Each pairs a closed-form side with an enumeration
// side and reports both exactly.

#include "cdes/counting.hpp"
#include "cdes/necklace.hpp"
#include "cdes/permutation.hpp"
#include "cdes/report.hpp"
#include "cdes/tableaux.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cdes {

/// Histogram key for a descent set, e.g. "{1,3}" or "{}".
inline std::string set_key(const DescentSet& d) { return "{" + to_string(d) + "}"; }

inline nlohmann::json lambda_params(const Composition& lam) { return {{"lambda", to_string(lam)}}; }
inline nlohmann::json n_params(int n) { return {{"n", n}}; }

/// Σ_{π ∈ C(λ)} (-1)^{|Des(π) \ S(λ)|} against χ_λ.
inline VerificationReport verify_main_theorem(const Composition& lam) {
  Stopwatch clock;
  ExactInt lhs = 0;
  std::uint64_t count = 0;
  for_each_cyclic_lambda_unimodal(lam, [&](const Permutation& p) {
    lhs += sign_of_parity(count_outside_partial_sums(descent_set(p), lam));
    ++count;
  });
  return make_report("main", lambda_params(lam), lhs, chi(lam), count, clock);
}

/// Σ over unimodal n-cycles of (-1)^{des} against μ(n).
inline VerificationReport verify_unimodal_mu(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Stopwatch clock;
  ExactInt lhs = 0;
  std::uint64_t count = 0;
  for_each_cyclic_lambda_unimodal(Composition::single(n), [&](const Permutation& p) {
    lhs += sign_of_parity(des(p));
    ++count;
  });
  return make_report("unimodal_mu", n_params(n), lhs, ExactInt(mobius(n)), count, clock);
}

/// Descent-set histogram of C_n, every subset of [n-1] present.
inline std::map<DescentSet, ExactInt> cyclic_descent_histogram(int n) {
  std::map<DescentSet, ExactInt> hist;
  for (const DescentSet& d : DescentSet::all_subsets(n)) hist[d] = 0;
  for_each_cyclic(n, [&](const Permutation& p) { hist[descent_set(p)] += 1; });
  return hist;
}

inline Histogram keyed(const std::map<DescentSet, ExactInt>& h) {
  Histogram out;
  for (const auto& [d, v] : h) out[set_key(d)] = v;
  return out;
}

/// Descent sets of C_n against those of the tableau basis B_ρ.
inline VerificationReport verify_equidistribution(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Stopwatch clock;
  const auto cyc = cyclic_descent_histogram(n);
  std::uint64_t count = 0;
  for (const auto& [d, v] : cyc) count += static_cast<std::uint64_t>(v);
  return make_report("equidistribution", n_params(n), keyed(cyc), keyed(b_rho_descent_distribution(n)), count, clock);
}

/// #{τ ∈ S_{n-1} : Des τ = D} against #{π ∈ C_n : Des π ∈ {D, D ∪ {n-1}}}.
inline VerificationReport verify_elizalde(int n) {
  if (n < 2) throw std::invalid_argument("elizalde needs n >= 2");
  Stopwatch clock;
  Histogram lhs, rhs;
  for (const DescentSet& d : DescentSet::all_subsets(n - 1)) {
    lhs[set_key(d)] = 0;
    rhs[set_key(d)] = 0;
  }
  std::uint64_t count = 0;
  for_each_permutation(n - 1, [&](const Permutation& t) {
    lhs[set_key(descent_set(t))] += 1;
    ++count;
  });
  for_each_cyclic(n, [&](const Permutation& p) {
    DescentSet d = descent_set(p);
    d.erase(n - 1);
    rhs[set_key(DescentSet(n - 1, d.bits()))] += 1;
    ++count;
  });
  return make_report("elizalde", n_params(n), std::move(lhs), std::move(rhs), count, clock);
}

/// Σ_{π ∈ U(λ)} (-1)^{|Des \ S(λ)|} against n! for λ = (1^n) and 0 otherwise.
inline VerificationReport verify_regular_fine(const Composition& lam) {
  Stopwatch clock;
  ExactInt lhs = 0;
  std::uint64_t count = 0;
  for_each_lambda_unimodal(lam, [&](const Permutation& p) {
    lhs += sign_of_parity(count_outside_partial_sums(descent_set(p), lam));
    ++count;
  });
  const ExactInt rhs = (lam.k() == lam.n()) ? factorial(lam.n()) : ExactInt(0);
  return make_report("regular_fine", lambda_params(lam), lhs, rhs, count, clock);
}

/// Swaps the two largest entries of the first block of length > 1.
inline Permutation phi_involution(const Permutation& p, const Composition& lam) {
  if (!is_lambda_unimodal(p, lam)) throw std::invalid_argument("permutation is not lambda-unimodal");
  int t = 0;
  while (t < lam.k() && lam.part(t) == 1) ++t;
  if (t == lam.k()) throw std::invalid_argument("phi needs a block of length > 1");
  const int lo = lam.partial_sum(t) + 1;
  const int hi = lam.partial_sum(t + 1);
  int first = lo, second = -1;
  for (int i = lo; i <= hi; ++i)
    if (p(i) > p(first)) first = i;
  for (int i = lo; i <= hi; ++i)
    if (i != first && (second < 0 || p(i) > p(second))) second = i;
  std::vector<int> e(p.entries().begin(), p.entries().end());
  std::swap(e[static_cast<std::size_t>(first - 1)], e[static_cast<std::size_t>(second - 1)]);
  return Permutation(std::move(e));
}

/// φ maps U(λ) into itself, has no fixed points, squares to the identity and
/// moves |Des \ S(λ)| by exactly one.
inline VerificationReport verify_phi_involution(const Composition& lam) {
  if (lam.k() == lam.n()) throw std::invalid_argument("phi is undefined for lambda = (1^n)");
  Stopwatch clock;
  std::uint64_t good = 0, count = 0;
  for_each_lambda_unimodal(lam, [&](const Permutation& p) {
    ++count;
    const Permutation q = phi_involution(p, lam);
    const int a = count_outside_partial_sums(descent_set(p), lam);
    const int b = count_outside_partial_sums(descent_set(q), lam);
    if (q != p && is_lambda_unimodal(q, lam) && phi_involution(q, lam) == p && (a - b == 1 || b - a == 1)) ++good;
  });
  return make_report("phi_involution", lambda_params(lam), ExactInt(good), ExactInt(count), count, clock);
}

struct PpatExample {
  Composition lam;
  std::string word;
  std::string image;
};

/// The three worked examples of the periodic-pattern map.
inline const std::vector<PpatExample>& ppat_worked_examples() {
  static const std::vector<PpatExample> ex{{Composition({3, 6}), "321132202", "782134965"},
                                           {Composition({3, 6}), "322023211", "782134965"},
                                           {Composition({4, 4}), "02210221", "78213456"}};
  return ex;
}

inline VerificationReport verify_ppat_examples() {
  Stopwatch clock;
  Histogram lhs, rhs;
  for (const auto& ex : ppat_worked_examples()) {
    const Word w = parse_word(ex.word, ex.lam.k());
    const std::string key = to_string(ex.lam) + ":" + ex.word;
    lhs[key] = ExactInt(to_string(cycle_to_one_line(ppat_pattern(w).entries())));
    rhs[key] = ExactInt(ex.image);
  }
  return make_report("ppat_examples", nlohmann::json::object(), std::move(lhs), std::move(rhs),
                     ppat_worked_examples().size(), clock);
}

inline std::string fiber_key(int m, const Permutation& tau) { return "m=" + std::to_string(m) + " " + to_string(tau); }

/// Inverts PPat_λ over every N_λ^(m) by enumeration and compares fiber
/// sizes with C(k, j) over each τ ∈ C_λ(m - j).
inline VerificationReport verify_ppat_fibers(const Composition& lam) {
  Stopwatch clock;
  const int n = lam.n(), k = lam.k();
  Histogram lhs, rhs;
  std::uint64_t count = 0;
  for_each_N_lambda(lam, std::nullopt, [&](const NLambdaMember& s) {
    lhs[fiber_key(s.odd_count(), ppat(s))] += 1;
    ++count;
  });
  const auto cycles = enumerate_cyclic_lambda_unimodal(lam);
  count += cycles.size();
  for (const Permutation& tau : cycles) {
    const int base = count_outside_partial_sums(descent_set(tau), lam);
    for (int j = 0; j <= k && base + j <= n; ++j) rhs[fiber_key(base + j, tau)] = binomial(k, j);
  }
  return make_report("ppat_fibers", lambda_params(lam), std::move(lhs), std::move(rhs), count, clock);
}

inline std::string m_key(int m) { return "m=" + std::to_string(m); }

/// Enumerated |N_λ^(m)| against the closed form, every m.
inline VerificationReport verify_necklace_counts(const Composition& lam) {
  Stopwatch clock;
  Histogram lhs, rhs;
  std::uint64_t count = 0;
  for (int m = 0; m <= lam.n(); ++m) {
    lhs[m_key(m)] = 0;
    rhs[m_key(m)] = count_N_lambda_m(lam, m);
  }
  for_each_N_lambda(lam, std::nullopt, [&](const NLambdaMember& s) {
    lhs[m_key(s.odd_count())] += 1;
    ++count;
  });
  return make_report("necklace_counts", lambda_params(lam), std::move(lhs), std::move(rhs), count, clock);
}

/// bigL(λ, m) against bigL(λ, n - m).
inline VerificationReport verify_bigL_symmetry(const Composition& lam) {
  Stopwatch clock;
  Histogram lhs, rhs;
  for (int m = 0; m <= lam.n(); ++m) {
    lhs[m_key(m)] = bigL(lam, m);
    rhs[m_key(m)] = bigL(lam, lam.n() - m);
  }
  return make_report("bigL_symmetry", lambda_params(lam), std::move(lhs), std::move(rhs), 0, clock);
}

inline std::vector<ExactInt> cyclic_counts_by_m(const Composition& lam, std::uint64_t& count) {
  std::vector<ExactInt> by_m(static_cast<std::size_t>(lam.n()) + 1, 0);
  for_each_cyclic_lambda_unimodal(lam, [&](const Permutation& p) {
    by_m[static_cast<std::size_t>(count_outside_partial_sums(descent_set(p), lam))] += 1;
    ++count;
  });
  return by_m;
}

/// Closed-form a_λ(m) against |C_λ(m)| by enumeration.
inline VerificationReport verify_a_lambda(const Composition& lam) {
  Stopwatch clock;
  std::uint64_t count = 0;
  const auto by_m = cyclic_counts_by_m(lam, count);
  Histogram lhs, rhs;
  for (int m = 0; m <= lam.n(); ++m) {
    lhs[m_key(m)] = a_lambda(lam, m);
    rhs[m_key(m)] = by_m[static_cast<std::size_t>(m)];
  }
  return make_report("a_lambda", lambda_params(lam), std::move(lhs), std::move(rhs), count, clock);
}

/// Enumerated |N_λ^(m)| against Σ_j C(k, j) |C_λ(m - j)| with both sides
/// enumerated.
inline VerificationReport verify_cycle_necklace_relation(const Composition& lam) {
  Stopwatch clock;
  std::uint64_t count = 0;
  const auto by_m = cyclic_counts_by_m(lam, count);
  Histogram lhs, rhs;
  for (int m = 0; m <= lam.n(); ++m) {
    lhs[m_key(m)] = 0;
    ExactInt r = 0;
    for (int j = 0; j <= lam.k() && j <= m; ++j) r += binomial(lam.k(), j) * by_m[static_cast<std::size_t>(m - j)];
    rhs[m_key(m)] = r;
  }
  for_each_N_lambda(lam, std::nullopt, [&](const NLambdaMember& s) {
    lhs[m_key(s.odd_count())] += 1;
    ++count;
  });
  return make_report("cycle_necklace_relation", lambda_params(lam), std::move(lhs), std::move(rhs), count, clock);
}

/// Σ_{m=0}^{n-k} (-1)^m a_λ(m) from the closed forms alone, against χ_λ.
inline VerificationReport verify_alternating_sum(const Composition& lam) {
  Stopwatch clock;
  ExactInt lhs = 0;
  for (int m = 0; m <= lam.n() - lam.k(); ++m) {
    if (m % 2 == 0)
      lhs += a_lambda(lam, m);
    else
      lhs -= a_lambda(lam, m);
  }
  return make_report("alternating_sum", lambda_params(lam), lhs, chi(lam), 0, clock);
}

/// Des(π) = Des(Q(π)) over S_n, and (P, Q) distinct for distinct π.
inline VerificationReport verify_rsk_descents(int n) {
  Stopwatch clock;
  std::uint64_t agree = 0, count = 0;
  std::set<std::pair<StandardTableau, StandardTableau>> seen;
  for_each_permutation(n, [&](const Permutation& p) {
    ++count;
    auto pq = rsk(p);
    if (descent_set(pq.second) == descent_set(p) && pq.first.shape() == pq.second.shape()) ++agree;
    seen.insert(std::move(pq));
  });
  Histogram lhs{{"descent_agreement", ExactInt(agree)}, {"distinct_pairs", ExactInt(seen.size())}};
  Histogram rhs{{"descent_agreement", factorial(n)}, {"distinct_pairs", factorial(n)}};
  return make_report("rsk_descents", n_params(n), std::move(lhs), std::move(rhs), count, clock);
}

/// Σ_λ |K_λ| χ^ν_λ χ^ρ_λ against n! δ_{νρ}.
inline VerificationReport verify_mn_orthogonality(int n) {
  Stopwatch clock;
  const auto parts = partitions_of(n);
  Histogram lhs, rhs;
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a; b < parts.size(); ++b) {
      ExactInt s = 0;
      for (const Partition& c : parts) s += class_size(c) * mn_character(parts[a], c) * mn_character(parts[b], c);
      const std::string key = "(" + to_string(parts[a]) + ")|(" + to_string(parts[b]) + ")";
      lhs[key] = s;
      rhs[key] = (a == b) ? factorial(n) : ExactInt(0);
    }
  return make_report("mn_orthogonality", n_params(n), std::move(lhs), std::move(rhs), parts.size(), clock);
}

/// For every Knuth class and composition λ, the signed count of its
/// λ-unimodal members against χ^ν at the class of type λ.
inline VerificationReport verify_knuth_classes(int n) {
  Stopwatch clock;
  std::map<StandardTableau, std::vector<Permutation>> classes;
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const Permutation& p) {
    classes[rsk(p).first].push_back(p);
    ++count;
  });
  const auto comps = compositions_of(n);
  Histogram lhs, rhs;
  for (const auto& [P, members] : classes)
    for (const Composition& lam : comps) {
      ExactInt s = 0;
      for (const Permutation& p : members)
        if (is_lambda_unimodal(p, lam)) s += sign_of_parity(count_outside_partial_sums(descent_set(p), lam));
      const std::string key = to_string(P) + " lambda=" + to_string(lam);
      lhs[key] = s;
      rhs[key] = mn_character(P.shape(), Partition::from_composition(lam));
    }
  return make_report("knuth_classes", n_params(n), std::move(lhs), std::move(rhs), count, clock);
}

/// Σ m_ν f^ν = (n-1)! with every m_ν ≥ 0.
inline VerificationReport verify_rho_multiplicities(int n) {
  Stopwatch clock;
  const BasisMultiset rho = rho_multiplicities(n);
  std::uint64_t negative = 0;
  for (const auto& [shape, m] : rho.multiplicity)
    if (m < 0) ++negative;
  Histogram lhs{{"dimension", rho.dimension()}, {"negative_multiplicities", ExactInt(negative)}};
  Histogram rhs{{"dimension", factorial(n - 1)}, {"negative_multiplicities", 0}};
  return make_report("rho_multiplicities", n_params(n), std::move(lhs), std::move(rhs), rho.multiplicity.size(), clock);
}

// ---- suite ----

/// One planned check; run() is independent of every other task.
struct SuiteTask {
  std::string identity;
  nlohmann::json params;
  std::function<VerificationReport()> run;
};

enum class Domain { compositions, sizes, once };

struct IdentityInfo {
  std::string name;
  Domain domain;
  int min_n;
  int max_n;  // sizes beyond this are skipped by the suite
};

/// Every identity the suite knows, in report order.
inline const std::vector<IdentityInfo>& identity_registry() {
  static const std::vector<IdentityInfo> reg{
      {"main", Domain::compositions, 1, 9},
      {"unimodal_mu", Domain::sizes, 1, 64},
      {"equidistribution", Domain::sizes, 1, 9},
      {"elizalde", Domain::sizes, 2, 9},
      {"regular_fine", Domain::compositions, 1, 8},
      {"phi_involution", Domain::compositions, 1, 8},
      {"ppat_examples", Domain::once, 1, 64},
      {"ppat_fibers", Domain::compositions, 1, 8},
      {"necklace_counts", Domain::compositions, 1, 9},
      {"bigL_symmetry", Domain::compositions, 1, 12},
      {"a_lambda", Domain::compositions, 1, 9},
      {"cycle_necklace_relation", Domain::compositions, 1, 8},
      {"alternating_sum", Domain::compositions, 1, 12},
      {"rsk_descents", Domain::sizes, 1, 8},
      {"mn_orthogonality", Domain::sizes, 1, 10},
      {"knuth_classes", Domain::sizes, 1, 7},
      {"rho_multiplicities", Domain::sizes, 1, 10},
      {"counting_lemmas", Domain::once, 1, 64},
  };
  return reg;
}

inline std::vector<std::string> all_identity_names() {
  std::vector<std::string> out;
  for (const auto& info : identity_registry()) out.push_back(info.name);
  return out;
}

struct SuiteOptions {
  int n_max = 7;
  std::vector<std::string> selection;
  std::optional<Composition> lambda;  // restrict composition checks to this λ
  std::optional<int> n;               // restrict to this size
  CountingLemmaLimits lemma_limits{};
};

inline std::function<VerificationReport()> composition_check(const std::string& name, const Composition& lam) {
  if (name == "main") return [lam] { return verify_main_theorem(lam); };
  if (name == "regular_fine") return [lam] { return verify_regular_fine(lam); };
  if (name == "phi_involution") return [lam] { return verify_phi_involution(lam); };
  if (name == "ppat_fibers") return [lam] { return verify_ppat_fibers(lam); };
  if (name == "necklace_counts") return [lam] { return verify_necklace_counts(lam); };
  if (name == "bigL_symmetry") return [lam] { return verify_bigL_symmetry(lam); };
  if (name == "a_lambda") return [lam] { return verify_a_lambda(lam); };
  if (name == "cycle_necklace_relation") return [lam] { return verify_cycle_necklace_relation(lam); };
  if (name == "alternating_sum") return [lam] { return verify_alternating_sum(lam); };
  throw std::invalid_argument("unknown identity '" + name + "'");
}

inline std::function<VerificationReport()> size_check(const std::string& name, int n) {
  if (name == "unimodal_mu") return [n] { return verify_unimodal_mu(n); };
  if (name == "equidistribution") return [n] { return verify_equidistribution(n); };
  if (name == "elizalde") return [n] { return verify_elizalde(n); };
  if (name == "rsk_descents") return [n] { return verify_rsk_descents(n); };
  if (name == "mn_orthogonality") return [n] { return verify_mn_orthogonality(n); };
  if (name == "knuth_classes") return [n] { return verify_knuth_classes(n); };
  if (name == "rho_multiplicities") return [n] { return verify_rho_multiplicities(n); };
  throw std::invalid_argument("unknown identity '" + name + "'");
}

/// Expands a selection into tasks: identities in registry order, then n,
/// then compositions in lexicographic order.
inline std::vector<SuiteTask> plan_suite(const SuiteOptions& opt) {
  if (opt.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const auto& reg = identity_registry();
  for (const auto& name : opt.selection)
    if (std::none_of(reg.begin(), reg.end(), [&](const IdentityInfo& i) { return i.name == name; }))
      throw std::invalid_argument("unknown identity '" + name + "'");

  std::vector<SuiteTask> tasks;
  for (const auto& info : reg) {
    if (std::find(opt.selection.begin(), opt.selection.end(), info.name) == opt.selection.end()) continue;
    if (info.domain == Domain::once) {
      if (info.name == "ppat_examples") {
        tasks.push_back({info.name, nlohmann::json::object(), [] { return verify_ppat_examples(); }});
      } else {
        const auto lim = opt.lemma_limits;
        nlohmann::json params = check_counting_lemmas_params(lim);
        tasks.push_back({info.name, std::move(params), [lim] { return check_counting_lemmas(lim); }});
      }
      continue;
    }
    int lo = std::max(1, info.min_n), hi = std::min(opt.n_max, info.max_n);
    if (opt.lambda) lo = hi = opt.lambda->n();
    if (opt.n) lo = hi = *opt.n;
    for (int n = lo; n <= hi; ++n) {
      if (n < info.min_n) continue;
      if (info.domain == Domain::sizes) {
        tasks.push_back({info.name, n_params(n), size_check(info.name, n)});
        continue;
      }
      std::vector<Composition> comps = opt.lambda ? std::vector<Composition>{*opt.lambda} : compositions_of(n);
      for (const Composition& lam : comps) {
        if (info.name == "phi_involution" && lam.k() == lam.n()) continue;
        tasks.push_back({info.name, lambda_params(lam), composition_check(info.name, lam)});
      }
    }
  }
  return tasks;
}

/// Runs tasks on up to `jobs` threads; results keep task order.
inline std::vector<VerificationReport> run_tasks(const std::vector<SuiteTask>& tasks, int jobs = 1) {
  std::vector<VerificationReport> out(tasks.size());
  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i].run();
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), tasks.size());
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
        try {
          out[i] = tasks[i].run();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline std::vector<VerificationReport> verify_suite(const SuiteOptions& opt, int jobs = 1) {
  return run_tasks(plan_suite(opt), jobs);
}

inline std::vector<VerificationReport> verify_suite(int n_max, const std::vector<std::string>& selection, int jobs = 1) {
  SuiteOptions opt;
  opt.n_max = n_max;
  opt.selection = selection;
  return verify_suite(opt, jobs);
}

}  // namespace cdes
