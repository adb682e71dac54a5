#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "wfi/cli.hpp"
#include "wfi/report_json.hpp"

using namespace wfi;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("wfi_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

void write_file(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Cli, CriteriaPittExample) {
  auto r = run({"criteria", "--u", "pow(1/4)@d=1", "--v", "pow(0)", "--p", "4/3", "--q", "2", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "criteria");
  EXPECT_EQ(j.at("regime"), "I");
  EXPECT_EQ(j.at("constants").at("C3").at("finiteness"), "finite");
  EXPECT_NEAR(j.at("constants").at("C3").at("value").get<double>(), std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(j.at("holds").get<bool>());
}

TEST(Cli, CriteriaJsonRoundTrip) {
  auto r = run({"criteria", "--u", "ind(1)", "--v", "pow(0)", "--p", "4", "--q", "1"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = json::parse(r.out);
  auto rep = criterion_from_json(j);
  EXPECT_EQ(to_json(rep), j);
}

TEST(Cli, ValidationErrors) {
  EXPECT_EQ(run({"criteria", "--p", "0.5"}).code, cli::kValidation);
  EXPECT_EQ(run({"criteria", "--p", "1/2"}).code, cli::kValidation);
  EXPECT_EQ(run({"criteria", "--u", "pow(1/4)@d=2", "--d", "3"}).code, cli::kValidation);
  EXPECT_EQ(run({"criteria", "--u", "wobble(3)"}).code, cli::kValidation);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kValidation);
  EXPECT_EQ(run({"estimate", "--d", "2"}).code, cli::kValidation);
  EXPECT_EQ(run({"verify", "--suite", "no-such-suite"}).code, cli::kValidation);
  EXPECT_EQ(run({"hardy", "--kind", "HeadIntegral", "--p", "inf"}).code, cli::kValidation);
}

TEST(Cli, EstimatePlancherel) {
  auto r = run({"estimate", "--p", "2", "--q", "2", "--N", "1024", "--L", "32", "--budget", "8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto b = bracket_from_json(json::parse(r.out));
  EXPECT_NEAR(b.lower, 1.0, 1e-6);
  ASSERT_TRUE(b.upper.is_finite());
  EXPECT_NEAR(b.upper.value(), 1.0, 1e-12);
}

TEST(Cli, EstimateDeterministicUnderSeed) {
  std::vector<std::string> a{"estimate", "--u", "ind(1)", "--p", "4", "--q", "2", "--N", "512", "--L", "16",
                             "--budget", "4", "--seed", "11"};
  EXPECT_EQ(run(a).out, run(a).out);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("WFI_SEED", "not-a-number", 1);
  EXPECT_EQ(run({"criteria"}).code, cli::kValidation);
  ::setenv("WFI_SEED", "11", 1);
  EXPECT_EQ(run({"criteria"}).code, cli::kOk);
  ::unsetenv("WFI_SEED");
}

TEST(Cli, CsvPlotFiles) {
  auto d = scratch_dir("csv");
  auto r = run({"criteria", "--u", "ind(1)", "--p", "4", "--q", "1", "--format", "csv", "--out", d.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto rows = read_csv(d / "xi_over_U.csv");
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "t");
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_GT(std::stod(rows[i][0]), std::stod(rows[i - 1][0]));

  r = run({"estimate", "--N", "512", "--L", "16", "--budget", "4", "--format", "csv", "--out", d.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto res = read_csv(d / "ratio_vs_resolution.csv");
  EXPECT_GE(res.size(), 3u);  // header and two resolutions
  fs::remove_all(d);
}

TEST(Cli, EmptyReportWritesNothing) {
  auto d = scratch_dir("empty");
  auto r = run({"sweep", "--ps", "2,4", "--qs", "2", "--format", "csv", "--out", d.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  r = run({"hardy", "--kind", "HeadIntegral", "--u", "ind(1)", "--p", "2", "--q", "2", "--format", "csv", "--out",
           d.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(fs::is_empty(d));
  fs::remove_all(d);
}

TEST(Cli, SweepEntries) {
  auto r = run({"sweep", "--u", "pow(1/4)", "--ps", "4/3,2", "--qs", "2,4"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("entries").size(), 4u);
}

TEST(Cli, NormsFromFiles) {
  auto d = scratch_dir("norms");
  write_file(d / "seq.csv", "n,value\n1,1\n");
  write_file(d / "f.csv", "t,value\n0,1\n1,0\ntail,zero\n");
  auto r = run({"norms", "--kind", "theta", "--seq", (d / "seq.csv").string(), "--p", "4"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto n = norm_from_json(json::parse(r.out));
  ASSERT_EQ(n.values.size(), 1u);
  EXPECT_NEAR(n.values[0].second.value(), 1.35667985026478284, 1e-8);

  r = run({"norms", "--kind", "optimalY", "--f", (d / "f.csv").string(), "--u", "ind(1)", "--q", "2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NEAR(norm_from_json(json::parse(r.out)).values[0].second.value(), 1.0, 1e-12);

  EXPECT_EQ(run({"norms", "--kind", "morrey"}).code, cli::kValidation);
  fs::remove_all(d);
}

TEST(Cli, HardyReport) {
  auto r = run({"hardy", "--kind", "Reverse", "--u", "ind(1)", "--v", "pow(1)", "--p", "1", "--q", "1/2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto h = hardy_from_json(json::parse(r.out));
  ASSERT_TRUE(h.K.is_finite());
  EXPECT_NEAR(h.K.value(), 4 * std::pow(std::sqrt(2.0) - 1, 2), 1e-9);
}

TEST(Cli, JsonToFile) {
  auto d = scratch_dir("json");
  auto f = d / "rep.json";
  auto r = run({"criteria", "--out", f.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(f);
  EXPECT_EQ(json::parse(in).at("kind"), "criteria");
  fs::remove_all(d);
}
