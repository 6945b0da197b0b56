#pragma once

// Verification reports and their JSON-lines encoding.

#include "cdes/exact.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace cdes {

/// Exact counts keyed by a printable key (descent set, partition, instance).
using Histogram = std::map<std::string, ExactInt>;
using ReportValue = std::variant<ExactInt, Histogram>;

struct VerificationReport {
  std::string identity;
  nlohmann::json params = nlohmann::json::object();
  ReportValue lhs;
  ReportValue rhs;
  bool pass = false;
  std::uint64_t count = 0;  // objects enumerated
  std::int64_t ms = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline VerificationReport make_report(std::string identity, nlohmann::json params, ReportValue lhs, ReportValue rhs,
                                      std::uint64_t count, const Stopwatch& clock) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.pass = (lhs == rhs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.count = count;
  r.ms = clock.elapsed_ms();
  return r;
}

inline nlohmann::json value_to_json(const ReportValue& v) {
  if (const auto* x = std::get_if<ExactInt>(&v)) return x->str();
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [key, val] : std::get<Histogram>(v)) obj[key] = val.str();
  return obj;
}

inline ReportValue value_from_json(const nlohmann::json& j) {
  if (j.is_string()) return ExactInt(j.get<std::string>());
  Histogram h;
  for (const auto& [key, val] : j.items()) h[key] = ExactInt(val.get<std::string>());
  return h;
}

enum class Timing { include, omit };

/// {"identity","params","lhs","rhs","pass","count","ms"}; with Timing::omit
/// the "ms" field is written as 0 so the output is reproducible.
inline nlohmann::json to_json(const VerificationReport& r, Timing timing = Timing::include) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["params"] = r.params;
  j["lhs"] = value_to_json(r.lhs);
  j["rhs"] = value_to_json(r.rhs);
  j["pass"] = r.pass;
  j["count"] = r.count;
  j["ms"] = timing == Timing::include ? r.ms : 0;
  return j;
}

inline VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.identity = j.at("identity").get<std::string>();
  r.params = j.at("params");
  r.lhs = value_from_json(j.at("lhs"));
  r.rhs = value_from_json(j.at("rhs"));
  r.pass = r.lhs == r.rhs;  // recomputed, not read
  r.count = j.at("count").get<std::uint64_t>();
  r.ms = j.at("ms").get<std::int64_t>();
  return r;
}

inline std::string to_jsonl(const VerificationReport& r, Timing timing = Timing::include) {
  return to_json(r, timing).dump();
}

}  // namespace cdes
