#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = kstar::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(KSTAR_TEST_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("kstar_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ThresholdsTwenty) {
  const auto r = run({"thresholds", "--d", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "ksscm=12 kplus=12");
}

TEST(Cli, Table1Csv) {
  const auto r = run({"table1", "--dmax", "20", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "d,ksscm,kplus");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 18);
  EXPECT_NE(r.out.find("\n20,12,12\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n5,3,4\n"), std::string::npos);
}

TEST(Cli, DecomposePetersenProvenNone) {
  const auto r = run({"decompose", "--graph", data("petersen.txt"), "--k", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "proven-none\n");
}

TEST(Cli, DecomposeK33WritesStars) {
  const auto r = run({"decompose", "--graph", data("k33.txt"), "--k", "3", "--mode", "exact"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "found");
  int stars = 0;
  while (std::getline(in, line)) {
    ++stars;
    const auto colon = line.find(':');
    ASSERT_NE(colon, std::string::npos);
    std::istringstream edges(line.substr(colon + 1));
    int e, count = 0;
    while (edges >> e) ++count;
    EXPECT_EQ(count, 3);
  }
  EXPECT_EQ(stars, 3);
}

TEST(Cli, DecomposeRejectsMultigraphAsDomainError) {
  const auto r = run({"decompose", "--graph", data("multi.txt"), "--k", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"thresholds"}).code, 2);
  EXPECT_EQ(run({"thresholds", "--d", "20", "--unknown", "1"}).code, 2);
  EXPECT_EQ(run({"thresholds", "--d", "x"}).code, 2);
  EXPECT_EQ(run({"moments", "--d", "4", "--k", "3", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrors) {
  EXPECT_EQ(run({"thresholds", "--d", "2"}).code, 1);
  EXPECT_EQ(run({"moments", "--d", "4", "--k", "3", "--n", "5"}).code, 1);
  EXPECT_EQ(run({"fhat", "--d", "20", "--k", "13"}).code, 1);
  EXPECT_EQ(run({"decompose", "--graph", "/nonexistent/graph.txt", "--k", "3"}).code, 1);
}

TEST(Cli, FhatCsvSeries) {
  const std::string path = temp_path("fhat.csv");
  const auto r = run({"fhat", "--d", "20", "--k", "12", "--points", "50", "--out", path, "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sign_changes=1"), std::string::npos);
  EXPECT_NE(r.out.find("surviving_roots=1"), std::string::npos);
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,fhat");
  EXPECT_NE(csv.find("\n1,"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, MomentsJsonSchema) {
  const auto r = run({"moments", "--d", "4", "--k", "3", "--n", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["exact_EY"], "256/77");
  EXPECT_EQ(j["exact_EY2"], "5888/385");
  EXPECT_EQ(j["n"], 3);
}

TEST(Cli, LandscapeJson) {
  const auto r = run({"landscape", "--d", "7", "--k", "4", "--maximize", "--starts", "20", "--seed", "1", "--format",
                      "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["maximize"]["matches_bstar"].get<bool>());
  EXPECT_TRUE(j["negH_cholesky"].get<bool>());
}

TEST(Cli, SampleRoundTripsThroughDecompose) {
  const std::string path = temp_path("sample.txt");
  const auto s = run({"sample", "--n", "12", "--d", "4", "--simple", "--seed", "3", "--out", path});
  ASSERT_EQ(s.code, 0);
  EXPECT_TRUE(s.err.empty());
  const auto r = run({"decompose", "--graph", path, "--k", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "found");
  std::remove(path.c_str());
}

TEST(Cli, MissingSeedNotice) {
  const auto r = run({"sample", "--n", "6", "--d", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("seed 0"), std::string::npos);
  EXPECT_EQ(r.out, run({"sample", "--n", "6", "--d", "3", "--seed", "0"}).out);
}

TEST(Cli, ExperimentCsvDeterministic) {
  const std::vector<std::string> args = {"experiment", "existence", "--d", "4", "--k", "3", "--n", "6,12",
                                         "--trials", "8", "--seed", "5"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "n,trial,seed,simple,x1,x2,x3,x4,found,status,ms");
}

TEST(Cli, ExperimentJsonSummaries) {
  const std::string json_path = temp_path("leaf.json");
  const std::string csv_path = temp_path("leaf.csv");
  const auto r = run({"experiment", "leaf", "--d", "4", "--k", "3", "--n", "12", "--trials", "5", "--seed", "2",
                      "--csv", csv_path, "--json", json_path});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(slurp(json_path));
  EXPECT_EQ(j["experiment"], "leaf");
  EXPECT_TRUE(j["implication_holds"].get<bool>());
  EXPECT_EQ(slurp(csv_path).substr(0, 36), "n,trial,seed,condition,found,status,");
  const auto c = run({"experiment", "cycles", "--trials", "200", "--n", "50", "--seed", "1", "--format", "json"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["cycles"].size(), 4u);
  std::remove(json_path.c_str());
  std::remove(csv_path.c_str());
}

TEST(Cli, ScanSmallRange) {
  const auto r = run({"scan", "--dmin", "3", "--dmax", "12", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["all_within_one"].get<bool>());
}
