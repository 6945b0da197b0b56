#pragma once

// Command-line frontend: enumerate, ppat, char, verify.

#include "cdes/cdes.hpp"
#include "cdes/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cdes::cli {

enum ExitCode : int { kOk = 0, kIdentityFailed = 1, kUsage = 2, kDomain = 3 };

enum class Format { table, json, csv };

struct CliConfig {
  std::string subcommand;
  std::string lambda;
  std::string word;
  std::optional<int> n;
  int n_max = 7;
  std::optional<int> m;
  std::string set = "cyclic";
  std::vector<std::string> identities;
  bool all = false;
  Format format = Format::table;
  std::string out;
  std::string cache_dir;
  int jobs = 1;
  // char
  bool chi = false, irreducible = false, mult = false;
  std::string shape, class_type;
};

/// Thrown for malformed arguments; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an input violates a domain precondition; maps to exit 3.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

/// Stable key of (identity, canonical params, artifact version).
inline std::string cache_key(const std::string& identity, const nlohmann::json& params) {
  return sha256_hex(identity + "\n" + params.dump() + "\n" + std::string(kVersion));
}

inline Composition parse_lambda_arg(const std::string& text) {
  if (text.empty()) throw UsageError("--lambda is required");
  try {
    return parse_composition(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed --lambda '" + text + "': " + e.what());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// ---- enumerate ----

inline int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  const Composition lam = parse_lambda_arg(cfg.lambda);
  if (cfg.m && (*cfg.m < 0 || *cfg.m > lam.n())) throw UsageError("--m must lie in [0, n]");
  std::size_t index = 0;

  if (cfg.set == "necklace") {
    if (cfg.format == Format::csv) out << "index,object,descent_set,o,primitive,image\n";
    for_each_N_lambda(lam, cfg.m, [&](const NLambdaMember& s) {
      const Permutation image = ppat(s);
      const std::string word = to_string(s.necklace.canonical());
      switch (cfg.format) {
        case Format::table: out << word << '\n'; break;
        case Format::json: {
          nlohmann::json j{{"index", index},        {"lambda", to_string(lam)}, {"word", word},
                           {"primitive", s.primitive}, {"o", s.odd_count()},   {"image", to_string(image)}};
          out << j.dump() << '\n';
          break;
        }
        case Format::csv:
          out << index << ',' << csv_field(word) << ',' << csv_field(to_string(descent_set(image))) << ','
              << s.odd_count() << ',' << (s.primitive ? "true" : "false") << ',' << csv_field(to_string(image)) << '\n';
          break;
      }
      ++index;
    });
    return kOk;
  }

  if (cfg.set != "cyclic" && cfg.set != "unimodal") throw UsageError("--set must be cyclic, necklace or unimodal");
  if (cfg.format == Format::csv) out << "index,object,descent_set,m\n";
  auto emit = [&](const Permutation& p) {
    const DescentSet d = descent_set(p);
    const int m = count_outside_partial_sums(d, lam);
    if (cfg.m && m != *cfg.m) return;
    switch (cfg.format) {
      case Format::table: out << to_string(p) << '\n'; break;
      case Format::json: {
        nlohmann::json j{{"index", index}, {"object", to_string(p)}, {"descent_set", to_string(d)}, {"m", m}};
        out << j.dump() << '\n';
        break;
      }
      case Format::csv:
        out << index << ',' << csv_field(to_string(p)) << ',' << csv_field(to_string(d)) << ',' << m << '\n';
        break;
    }
    ++index;
  };
  if (cfg.set == "cyclic")
    for_each_cyclic_lambda_unimodal(lam, emit);
  else
    for_each_lambda_unimodal(lam, emit);
  return kOk;
}

// ---- ppat ----

inline int cmd_ppat(const CliConfig& cfg, std::ostream& out) {
  const Composition lam = parse_lambda_arg(cfg.lambda);
  if (cfg.word.empty()) throw UsageError("--word is required");
  std::vector<int> letters;
  try {
    letters = (cfg.word.find(',') == std::string::npos && 2 * lam.k() <= 10)
                  ? [&] {
                      std::vector<int> v;
                      for (char c : cfg.word) {
                        if (c < '0' || c > '9') throw std::invalid_argument("bad letter");
                        v.push_back(c - '0');
                      }
                      return v;
                    }()
                  : detail::parse_int_list(cfg.word, false);
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed --word '" + cfg.word + "'");
  }
  for (int c : letters)
    if (c >= 2 * lam.k())
      throw DomainError("word not in N_lambda: letter " + std::to_string(c) + " outside the alphabet {0.." +
                        std::to_string(2 * lam.k() - 1) + "}");
  const Word w(std::move(letters), lam.k());
  if (auto why = n_lambda_violation(w, lam)) throw DomainError("word not in N_lambda: " + *why);

  const Permutation pattern = ppat_pattern(w);
  const Permutation image = cycle_to_one_line(pattern.entries());
  switch (cfg.format) {
    case Format::table:
      out << "pattern " << to_string(pattern) << '\n' << "image " << to_string(image) << '\n';
      break;
    case Format::json: {
      nlohmann::json j{{"lambda", to_string(lam)},     {"word", to_string(w)},
                       {"primitive", is_primitive(w)}, {"o", w.odd_count()},
                       {"pattern", to_string(pattern)}, {"image", to_string(image)}};
      out << j.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "lambda,word,pattern,image\n"
          << csv_field(to_string(lam)) << ',' << csv_field(to_string(w)) << ',' << csv_field(to_string(pattern)) << ','
          << csv_field(to_string(image)) << '\n';
      break;
  }
  return kOk;
}

// ---- char ----

inline Partition parse_partition_arg(const std::string& text, const char* flag) {
  try {
    return parse_partition(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad ") + flag + " '" + text + "': " + e.what());
  }
}

inline void write_map(const std::vector<std::pair<std::string, std::string>>& rows, Format format, std::ostream& out) {
  switch (format) {
    case Format::table:
      for (const auto& [k, v] : rows) out << '(' << k << ") " << v << '\n';
      break;
    case Format::json: {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const auto& [k, v] : rows) j[k] = v;
      out << j.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "key,value\n";
      for (const auto& [k, v] : rows) out << csv_field(k) << ',' << v << '\n';
      break;
  }
}

inline int cmd_char(const CliConfig& cfg, std::ostream& out) {
  if (int modes = cfg.chi + cfg.irreducible + cfg.mult; modes != 1)
    throw UsageError("choose exactly one of --chi, --irreducible, --mult");
  std::vector<std::pair<std::string, std::string>> rows;

  if (cfg.chi || cfg.mult) {
    if (!cfg.n || *cfg.n < 1) throw UsageError("--n >= 1 is required");
    if (cfg.chi) {
      for (const Partition& c : partitions_of(*cfg.n)) rows.emplace_back(to_string(c), to_string(chi(c.as_composition())));
    } else {
      for (const Partition& c : partitions_of(*cfg.n))
        rows.emplace_back(to_string(c), to_string(rho_multiplicities(*cfg.n).multiplicity.at(c)));
    }
    write_map(rows, cfg.format, out);
    return kOk;
  }

  // --irreducible
  if (!cfg.shape.empty()) {
    const Partition shape = parse_partition_arg(cfg.shape, "--shape");
    if (shape.n() == 0) throw UsageError("--shape must be nonempty");
    if (!cfg.class_type.empty()) {
      const Partition cls = parse_partition_arg(cfg.class_type, "--class");
      if (cls.n() != shape.n()) throw UsageError("--shape and --class sizes differ");
      const std::string v = to_string(mn_character(shape, cls));
      if (cfg.format == Format::table)
        out << v << '\n';
      else
        write_map({{to_string(cls), v}}, cfg.format, out);
      return kOk;
    }
    for (const Partition& c : partitions_of(shape.n())) rows.emplace_back(to_string(c), to_string(mn_character(shape, c)));
    write_map(rows, cfg.format, out);
    return kOk;
  }
  if (!cfg.n || *cfg.n < 1) throw UsageError("--irreducible needs --shape or --n");
  const auto parts = partitions_of(*cfg.n);
  switch (cfg.format) {
    case Format::table:
    case Format::csv: {
      const char sep = cfg.format == Format::csv ? ',' : '\t';
      out << "shape";
      for (const Partition& c : parts) out << sep << (cfg.format == Format::csv ? csv_field(to_string(c)) : to_string(c));
      out << '\n';
      for (const Partition& s : parts) {
        out << (cfg.format == Format::csv ? csv_field(to_string(s)) : to_string(s));
        for (const Partition& c : parts) out << sep << to_string(mn_character(s, c));
        out << '\n';
      }
      break;
    }
    case Format::json: {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const Partition& s : parts) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (const Partition& c : parts) row[to_string(c)] = to_string(mn_character(s, c));
        j[to_string(s)] = row;
      }
      out << j.dump() << '\n';
      break;
    }
  }
  return kOk;
}

// ---- verify ----

inline std::string value_summary(const ReportValue& v) {
  if (const auto* x = std::get_if<ExactInt>(&v)) return x->str();
  return "<" + std::to_string(std::get<Histogram>(v).size()) + " entries>";
}

inline std::string first_mismatch(const VerificationReport& r) {
  const auto* a = std::get_if<Histogram>(&r.lhs);
  const auto* b = std::get_if<Histogram>(&r.rhs);
  if (!a || !b) return "";
  for (const auto& [key, val] : *a) {
    auto it = b->find(key);
    if (it == b->end()) return key + ": " + val.str() + " vs (absent)";
    if (it->second != val) return key + ": " + val.str() + " vs " + it->second.str();
  }
  for (const auto& [key, val] : *b)
    if (!a->count(key)) return key + ": (absent) vs " + val.str();
  return "";
}

inline void render_table(const std::vector<VerificationReport>& reports, std::ostream& out) {
  out << std::left << std::setw(25) << "identity" << std::setw(26) << "params" << std::setw(6) << "pass"
      << std::setw(12) << "count" << std::setw(8) << "ms" << std::setw(16) << "lhs"
      << "rhs\n";
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.pass;
    std::string p = r.params.dump();
    out << std::left << std::setw(25) << r.identity << std::setw(26) << p << std::setw(6) << (r.pass ? "yes" : "NO")
        << std::setw(12) << r.count << std::setw(8) << r.ms << std::setw(16) << value_summary(r.lhs)
        << value_summary(r.rhs) << '\n';
    if (!r.pass)
      if (auto mm = first_mismatch(r); !mm.empty()) out << "    first mismatch " << mm << '\n';
  }
  out << passed << "/" << reports.size() << " passed\n";
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  SuiteOptions opt;
  opt.n_max = cfg.n_max;
  if (cfg.n_max < 1) throw UsageError("--n-max must be >= 1");
  if (cfg.all && !cfg.identities.empty()) throw UsageError("--all and --identity are exclusive");
  if (cfg.all)
    opt.selection = all_identity_names();
  else
    opt.selection = cfg.identities;
  if (opt.selection.empty()) throw UsageError("select identities with --identity or --all");
  if (!cfg.lambda.empty()) opt.lambda = parse_lambda_arg(cfg.lambda);
  if (cfg.n) {
    if (*cfg.n < 1) throw UsageError("--n must be >= 1");
    opt.n = cfg.n;
  }
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");

  std::vector<SuiteTask> tasks;
  try {
    tasks = plan_suite(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  // Wrap each task with the on-disk cache when one is configured.
  std::vector<SuiteTask> wrapped = tasks;
  if (!cfg.cache_dir.empty()) {
    std::filesystem::create_directories(cfg.cache_dir);
    for (auto& t : wrapped) {
      const std::filesystem::path file = std::filesystem::path(cfg.cache_dir) / (cache_key(t.identity, t.params) + ".json");
      t.run = [file, inner = t.run] {
        if (std::ifstream in(file); in) {
          std::string line;
          std::getline(in, line);
          try {
            return report_from_json(nlohmann::json::parse(line));
          } catch (const std::exception&) {
            // unreadable entry; recompute and overwrite
          }
        }
        VerificationReport r = inner();
        const std::filesystem::path tmp = file.string() + ".tmp";
        {
          std::ofstream o(tmp);
          o << to_jsonl(r) << '\n';
        }
        std::filesystem::rename(tmp, file);
        return r;
      };
    }
  }

  std::vector<VerificationReport> reports;
  try {
    reports = run_tasks(wrapped, cfg.jobs);
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }

  switch (cfg.format) {
    case Format::json:
      for (const auto& r : reports) out << to_jsonl(r) << '\n';
      break;
    case Format::table: render_table(reports, out); break;
    case Format::csv:
      out << "identity,params,pass,count,ms,lhs,rhs\n";
      for (const auto& r : reports)
        out << csv_field(r.identity) << ',' << csv_field(r.params.dump()) << ',' << (r.pass ? "true" : "false") << ','
            << r.count << ',' << r.ms << ',' << csv_field(value_to_json(r.lhs).dump()) << ','
            << csv_field(value_to_json(r.rhs).dump()) << '\n';
      break;
  }
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.pass; });
  return ok ? kOk : kIdentityFailed;
}

// ---- entry point ----

/// Parses argv and runs one subcommand. Output goes to `out` unless --out is
/// given; diagnostics go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclic permutations, descent sets and periodic patterns"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);
  app.fallthrough();
  CliConfig cfg;

  std::map<std::string, Format> formats{{"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--out", cfg.out, "Write output to this file");
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory for verification results")->envname("CDES_CACHE_DIR");
  app.add_option("--jobs", cfg.jobs, "Parallel verification workers")->envname("CDES_JOBS")->check(CLI::PositiveNumber);

  auto* en = app.add_subcommand("enumerate", "List C(lambda), U(lambda) or N_lambda^(m)");
  en->add_option("--lambda", cfg.lambda, "Composition, e.g. 6,3")->required();
  en->add_option("--set", cfg.set, "cyclic | necklace | unimodal")
      ->check(CLI::IsMember({"cyclic", "necklace", "unimodal"}));
  en->add_option("--m", cfg.m, "Restrict to |Des \\ S(lambda)| = m (or o(s) = m for necklaces)");

  auto* pp = app.add_subcommand("ppat", "Pattern and image of a word in N_lambda");
  pp->add_option("--lambda", cfg.lambda, "Composition")->required();
  pp->add_option("--word", cfg.word, "Representative word")->required();

  auto* ch = app.add_subcommand("char", "Character values");
  ch->add_flag("--chi", cfg.chi, "Induced character chi_lambda over all class types of n");
  ch->add_flag("--irreducible", cfg.irreducible, "Irreducible characters by Murnaghan-Nakayama");
  ch->add_flag("--mult", cfg.mult, "Multiplicities of irreducibles in the induced representation");
  ch->add_option("--n", cfg.n, "Size n");
  ch->add_option("--shape", cfg.shape, "Partition shape, e.g. 2,1");
  ch->add_option("--class", cfg.class_type, "Class type partition, e.g. 1,1,1");

  auto* ve = app.add_subcommand("verify", "Run identity checks and report");
  ve->add_option("--identity", cfg.identities, "Identity name (repeatable)");
  ve->add_flag("--all", cfg.all, "Every identity");
  ve->add_option("--n-max", cfg.n_max, "Largest n to check");
  ve->add_option("--n", cfg.n, "Check only this n");
  ve->add_option("--lambda", cfg.lambda, "Check only this composition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "cannot open " << cfg.out << '\n';
      return kUsage;
    }
    sink = &file;
  }

  try {
    if (en->parsed()) return cmd_enumerate(cfg, *sink);
    if (pp->parsed()) return cmd_ppat(cfg, *sink);
    if (ch->parsed()) return cmd_char(cfg, *sink);
    return cmd_verify(cfg, *sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
}

}  // namespace cdes::cli
