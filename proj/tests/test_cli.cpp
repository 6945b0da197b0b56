#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace cdes::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cdes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

bool has_line(const std::string& s, const std::string& line) {
  const auto v = lines(s);
  return std::find(v.begin(), v.end(), line) != v.end();
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("cdes_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(Enumerate, Examples) {
  auto r = cli({"enumerate", "--lambda", "3,6", "--set", "cyclic"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "782134965"));
  r = cli({"enumerate", "--lambda", "4,1", "--set", "necklace"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "00121"));
  r = cli({"enumerate", "--lambda", "1", "--set", "cyclic"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "1\n");
  r = cli({"enumerate", "--lambda", "3", "--set", "cyclic"});
  EXPECT_EQ(r.out, "231\n");
}

TEST(Enumerate, MalformedLambdaIsUsageError) {
  EXPECT_EQ(cli({"enumerate", "--lambda", "3,,1"}).code, kUsage);
  EXPECT_EQ(cli({"enumerate", "--lambda", "3,0"}).code, kUsage);
  EXPECT_EQ(cli({"enumerate", "--lambda", "x"}).code, kUsage);
  EXPECT_EQ(cli({"enumerate"}).code, kUsage);
  EXPECT_EQ(cli({"enumerate", "--lambda", "3", "--set", "bogus"}).code, kUsage);
  EXPECT_EQ(cli({"enumerate", "--lambda", "3", "--m", "9"}).code, kUsage);
}

TEST(Enumerate, FilterByM) {
  const auto all = lines(cli({"enumerate", "--lambda", "2,2"}).out);
  std::size_t total = 0;
  for (int m = 0; m <= 4; ++m) total += lines(cli({"enumerate", "--lambda", "2,2", "--m", std::to_string(m)}).out).size();
  EXPECT_EQ(all.size(), 6U);
  EXPECT_EQ(total, 6U);
  EXPECT_EQ(lines(cli({"enumerate", "--lambda", "2,2", "--m", "1"}).out).size(), 4U);
}

TEST(Enumerate, JsonRoundTrips) {
  const Composition lam({2, 3});
  const auto r = cli({"enumerate", "--lambda", "2,3", "--format", "json"});
  ASSERT_EQ(r.code, kOk);
  const auto expect = enumerate_cyclic_lambda_unimodal(lam);
  const auto got = lines(r.out);
  ASSERT_EQ(got.size(), expect.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto j = nlohmann::json::parse(got[i]);
    EXPECT_EQ(j["index"], i);
    const Permutation p = parse_permutation(j["object"].get<std::string>());
    EXPECT_EQ(p, expect[i]);
    EXPECT_EQ(to_string(p), j["object"].get<std::string>());
    EXPECT_EQ(parse_descent_set(j["descent_set"].get<std::string>(), 5), descent_set(p));
    EXPECT_EQ(j["m"], count_outside_partial_sums(descent_set(p), lam));
  }
}

TEST(Enumerate, NecklaceJsonAndCsvRoundTrip) {
  const Composition lam({2, 2});
  const auto members = enumerate_N_lambda(lam);
  const auto js = lines(cli({"enumerate", "--lambda", "2,2", "--set", "necklace", "--format", "json"}).out);
  ASSERT_EQ(js.size(), members.size());
  for (std::size_t i = 0; i < js.size(); ++i) {
    const auto j = nlohmann::json::parse(js[i]);
    const auto m = NLambdaMember::from_word(parse_word(j["word"].get<std::string>(), 2), lam);
    EXPECT_EQ(m, members[i]);
    EXPECT_EQ(j["image"].get<std::string>(), to_string(ppat(m)));
    EXPECT_EQ(j["o"], m.odd_count());
  }
  const auto csv = lines(cli({"enumerate", "--lambda", "2,2", "--set", "necklace", "--format", "csv"}).out);
  ASSERT_EQ(csv.size(), members.size() + 1);
  EXPECT_EQ(csv[0], "index,object,descent_set,o,primitive,image");
  const auto unimodal = lines(cli({"enumerate", "--lambda", "2,1", "--set", "unimodal", "--format", "csv"}).out);
  EXPECT_EQ(unimodal[0], "index,object,descent_set,m");
  EXPECT_EQ(unimodal.size(), 7U);
  EXPECT_EQ(unimodal[1], "0,123,,0");
}

TEST(Ppat, Examples) {
  auto r = cli({"ppat", "--lambda", "3,6", "--word", "321132202"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "pattern 953286417\nimage 782134965\n");
  r = cli({"ppat", "--lambda", "4,4", "--word", "02210221"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "pattern 17532864\nimage 78213456\n");
  r = cli({"ppat", "--lambda", "3,6", "--word", "322023211", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["image"], "782134965");
}

TEST(Ppat, DomainFailuresNameTheClause) {
  auto r = cli({"ppat", "--lambda", "4,4", "--word", "02220222"});
  EXPECT_EQ(r.code, kDomain);
  EXPECT_NE(r.err.find("content"), std::string::npos);
  r = cli({"ppat", "--lambda", "4,4", "--word", "01230123"});
  EXPECT_EQ(r.code, kDomain);
  EXPECT_NE(r.err.find("even"), std::string::npos);
  r = cli({"ppat", "--lambda", "2", "--word", "05"});
  EXPECT_EQ(r.code, kDomain);
  EXPECT_NE(r.err.find("alphabet"), std::string::npos);
  EXPECT_EQ(cli({"ppat", "--lambda", "2", "--word", "0a"}).code, kUsage);
  EXPECT_EQ(cli({"ppat", "--lambda", "2"}).code, kUsage);
}

TEST(Char, Examples) {
  auto r = cli({"char", "--chi", "--n", "4"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "(1,1,1,1) 6"));
  EXPECT_TRUE(has_line(r.out, "(2,2) -2"));
  EXPECT_TRUE(has_line(r.out, "(4) 0"));
  EXPECT_TRUE(has_line(r.out, "(3,1) 0"));
  EXPECT_TRUE(has_line(r.out, "(2,1,1) 0"));
  EXPECT_EQ(lines(r.out).size(), 5U);
  r = cli({"char", "--irreducible", "--shape", "2,1", "--class", "1,1,1"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "2\n");
  r = cli({"char", "--mult", "--n", "1"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "(1) 1\n");
  r = cli({"char", "--mult", "--n", "3", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json({{"3", "0"}, {"2,1", "1"}, {"1,1,1", "0"}}));
  r = cli({"char", "--irreducible", "--n", "3"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(lines(r.out).size(), 4U);
}

TEST(Char, BadShapeIsUsageError) {
  EXPECT_EQ(cli({"char", "--irreducible", "--shape", "1,2"}).code, kUsage);
  EXPECT_EQ(cli({"char", "--irreducible", "--shape", "2,1", "--class", "2"}).code, kUsage);
  EXPECT_EQ(cli({"char", "--chi"}).code, kUsage);
  EXPECT_EQ(cli({"char", "--chi", "--mult", "--n", "3"}).code, kUsage);
}

TEST(Verify, Examples) {
  auto r = cli({"verify", "--identity", "main", "--lambda", "2,3", "--format", "json"});
  EXPECT_EQ(r.code, kOk);
  const auto j = nlohmann::json::parse(lines(r.out).at(0));
  EXPECT_EQ(j["rhs"], "0");
  EXPECT_EQ(j["lhs"], "0");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(cli({"verify", "--all", "--n-max", "4", "--jobs", "4"}).code, kOk);
  EXPECT_EQ(cli({"verify", "--identity", "elizalde", "--n-max", "6"}).code, kOk);
  r = cli({"verify", "--identity", "main", "--identity", "unimodal_mu", "--n-max", "3"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "10/10 passed"));
}

TEST(Verify, ConfigErrors) {
  EXPECT_EQ(cli({"verify", "--identity", "nope"}).code, kUsage);
  EXPECT_EQ(cli({"verify"}).code, kUsage);
  EXPECT_EQ(cli({"verify", "--all", "--identity", "main"}).code, kUsage);
  EXPECT_EQ(cli({"verify", "--all", "--n-max", "0"}).code, kUsage);
  EXPECT_EQ(cli({"--jobs", "0", "verify", "--all"}).code, kUsage);
  EXPECT_EQ(cli({"--format", "xml", "verify", "--all"}).code, kUsage);
  EXPECT_EQ(cli({}).code, kUsage);
}

TEST(Verify, CacheHitIsByteIdentical) {
  TempDir dir;
  const std::vector<std::string> args{"--cache-dir", dir.path().string(), "verify", "--identity", "main",
                                      "--identity", "counting_lemmas", "--n-max", "5", "--format", "json"};
  const auto cold = cli(args);
  ASSERT_EQ(cold.code, kOk);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) files += e.path().extension() == ".json";
  EXPECT_EQ(files, 32U);
  const auto warm = cli(args);
  EXPECT_EQ(warm.code, kOk);
  EXPECT_EQ(warm.out, cold.out);
}

TEST(Verify, FailedIdentityExitsOne) {
  TempDir dir;
  const nlohmann::json params{{"lambda", "2,3"}};
  auto j = to_json(verify_main_theorem(Composition({2, 3})));
  j["lhs"] = "1";
  std::ofstream(dir.path() / (cache_key("main", params) + ".json")) << j.dump() << '\n';
  const auto r = cli({"--cache-dir", dir.path().string(), "verify", "--identity", "main", "--lambda", "2,3"});
  EXPECT_EQ(r.code, kIdentityFailed);
  EXPECT_TRUE(has_line(r.out, "0/1 passed"));
}

TEST(Verify, CacheDirFromEnvironment) {
  TempDir dir;
  ::setenv("CDES_CACHE_DIR", dir.path().string().c_str(), 1);
  const auto r = cli({"verify", "--identity", "unimodal_mu", "--n-max", "3"});
  ::unsetenv("CDES_CACHE_DIR");
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()), std::filesystem::directory_iterator{}), 3);
}

TEST(Verify, CacheKeyDependsOnEveryComponent) {
  const auto a = cache_key("main", {{"lambda", "2,3"}});
  EXPECT_EQ(a.size(), 64U);
  EXPECT_EQ(a, cache_key("main", {{"lambda", "2,3"}}));
  EXPECT_NE(a, cache_key("main", {{"lambda", "3,2"}}));
  EXPECT_NE(a, cache_key("a_lambda", {{"lambda", "2,3"}}));
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Output, OutFlagWritesFile) {
  TempDir dir;
  const auto file = dir.path() / "c.txt";
  const auto r = cli({"--out", file.string(), "enumerate", "--lambda", "4"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "2341\n3421\n");
  EXPECT_EQ(cli({"--out", (dir.path() / "missing" / "x").string(), "enumerate", "--lambda", "4"}).code, kUsage);
}

TEST(Output, Version) {
  const auto r = cli({"--version"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find(kVersion), std::string::npos);
}

}  // namespace
}  // namespace cdes::cli
