#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::vector<json> records;
  std::string raw;
  std::string err;
};

std::string src(const std::string& rel) { return std::string(SCHUNCK_SOURCE_DIR) + "/" + rel; }

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = schunck::cli::run(args, out, err);
  Result r{code, {}, out.str(), err.str()};
  std::istringstream lines(r.raw);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) r.records.push_back(json::parse(line));
  return r;
}

bool has_verdict(const Result& r, const std::string& v) {
  for (const json& rec : r.records)
    if (rec["verdict"] == v) return true;
  return false;
}

const fs::path& catalog_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "schunck_cli_f3d3";
    fs::remove_all(d);
    const Result r = run({"catalog", "generate", "--field", "3", "--maxdim", "3", "--out", d.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return d;
  }();
  return dir;
}

}  // namespace

TEST(Cli, ChiefSeriesExample) {
  const Result r = run({"chief-series", src("data/algebras/l_aff_3.lie")});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records.back()["witness"]["factor_dims"], json::array({1, 1}));
  EXPECT_EQ(r.records[0]["witness"]["centralizer"], "span{(0,1)}");
}

TEST(Cli, VerifyFormationExample) {
  const Result r = run({"verify-formation", src("specs/supersoluble.cls"), "--catalog", catalog_dir().string(), "--mode", "full"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json& summary = r.records.back();
  EXPECT_EQ(summary["check"], "summary");
  EXPECT_EQ(summary["witness"]["summary"], "closures PASS, equivalence PASS, saturation PASS");
}

TEST(Cli, CheckClassNegativeControl) {
  const Result r = run({"check-class", src("specs/eigset01_f3.cls"), "--catalog", catalog_dir().string(), "--kind", "dual"});
  EXPECT_EQ(r.code, 1);
  ASSERT_EQ(r.records.size(), 1u);
  const json& rec = r.records[0];
  EXPECT_EQ(rec["verdict"], "FAIL");
  EXPECT_EQ(rec["witness"]["counterexample"]["witness"], "F3-d2-02");
  EXPECT_EQ(rec["witness"]["counterexample"]["charpolys"][0]["dual"], "t + 1");
}

TEST(Cli, ExitCodesPartitionOutcomes) {
  const std::string laff = src("data/algebras/l_aff_3.lie");
  const std::string cat = catalog_dir().string();
  const std::vector<std::vector<std::string>> per_file = {
      {"chief-series"}, {"primitives"}, {"blocks"}, {"check-lemmas"}, {"witness"}};
  for (const auto& cmd : per_file) {
    auto ok = cmd;
    ok.push_back(laff);
    const Result pass = run(ok);
    EXPECT_EQ(pass.code, 0) << cmd[0] << pass.err;
    EXPECT_FALSE(has_verdict(pass, "FAIL"));

    auto missing = cmd;
    missing.push_back("/nonexistent/x.lie");
    EXPECT_EQ(run(missing).code, 2) << cmd[0];

    auto bad_flag = ok;
    bad_flag.push_back("--no-such-flag");
    EXPECT_EQ(run(bad_flag).code, 2) << cmd[0];

    auto capped = ok;
    capped.insert(capped.end(), {"--max-dim", "1"});
    const Result bounded = run(capped);
    EXPECT_EQ(bounded.code, 3) << cmd[0];
    EXPECT_TRUE(has_verdict(bounded, "BOUNDED"));
  }
  EXPECT_EQ(run({"check-class", src("specs/supersoluble.cls"), "--catalog", cat}).code, 0);
  EXPECT_EQ(run({"check-class", src("specs/supersoluble.cls"), "--catalog", "/nonexistent"}).code, 2);
  EXPECT_EQ(run({"check-class", src("specs/supersoluble.cls"), "--catalog", cat, "--kind", "sideways"}).code, 2);
  EXPECT_EQ(run({"verify-formation", src("specs/supersoluble.cls"), "--catalog", cat, "--mode", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify-formation", "/nonexistent.cls", "--catalog", cat}).code, 2);
  const Result capped = run({"verify-formation", src("specs/supersoluble.cls"), "--catalog", cat, "--max-dim", "2"});
  EXPECT_EQ(capped.code, 3);
  EXPECT_TRUE(has_verdict(capped, "BOUNDED"));
  const Result fail = run({"verify-formation", src("specs/eigset01_f3.cls"), "--catalog", cat});
  EXPECT_EQ(fail.code, 1);
  EXPECT_TRUE(has_verdict(fail, "FAIL"));
  EXPECT_EQ(run({"catalog", "generate", "--field", "7", "--maxdim", "2", "--out", "/tmp/x"}).code, 2);
  EXPECT_EQ(run({"catalog", "generate", "--field", "3", "--maxdim", "4", "--max-dim", "3", "--out", "/tmp/x"}).code, 3);
  EXPECT_EQ(run({"witness", laff, "--module", "99"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, GroupInputs) {
  const Result lemma = run({"check-lemmas", "builtin:Q8", "--which", "gp-sole"});
  ASSERT_EQ(lemma.code, 0) << lemma.err;
  EXPECT_EQ(lemma.records[0]["verdict"], "PASS");
  const Result s3 = run({"chief-series", "builtin:S3"});
  ASSERT_EQ(s3.code, 0);
  EXPECT_EQ(s3.records.back()["witness"]["factor_dims"], json::array({1, 1}));
  EXPECT_EQ(run({"chief-series", "builtin:S3", "--prime", "4"}).code, 2);
  EXPECT_EQ(run({"chief-series", src("data/algebras/l_aff_3.lie"), "--prime", "3"}).code, 2);
}

TEST(Cli, DeterministicReports) {
  const fs::path a = fs::temp_directory_path() / "schunck_cli_a.jsonl";
  const fs::path b = fs::temp_directory_path() / "schunck_cli_b.jsonl";
  const std::string cat = catalog_dir().string();
  ASSERT_EQ(run({"verify-formation", src("specs/mixed.cls"), "--catalog", cat, "--out", a.string(), "--threads", "1"}).code, 0);
  ASSERT_EQ(run({"verify-formation", src("specs/mixed.cls"), "--catalog", cat, "--out", b.string(), "--threads", "2"}).code, 0);
  unsetenv("SCHUNCK_THREADS");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string first = slurp(a);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b));
  fs::remove(a);
  fs::remove(b);
}
