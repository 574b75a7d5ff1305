// Copyright 2026 The rrldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests of the rrldp binary. The harness points RRLDP_CLI_BIN at
// the built executable.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

std::string CliBinary() {
  const char* bin = std::getenv("RRLDP_CLI_BIN");
  if (bin == nullptr || *bin == '\0') {
    ADD_FAILURE() << "RRLDP_CLI_BIN is not set";
    return "";
  }
  return bin;
}

CliResult RunCli(const std::string& args, bool merge_stderr = false) {
  const std::string command =
      CliBinary() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    ADD_FAILURE() << "popen failed for: " << command;
    return result;
  }
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.stdout_text.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path TempDir() {
  const auto dir = std::filesystem::temp_directory_path() / "rrldp_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Cli, SampleSizeMatchesTable) {
  const CliResult result = RunCli(
      "sample-size --mechanism improved-christofides --epsilon 0.25 "
      "--pi-a 0.1 --p2 0.01 --var 0.1");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(result.stdout_text, "59\n");
}

TEST(Cli, CompareReportsThresholdsAndCrossover) {
  const CliResult result =
      RunCli("compare --n 10000 --epsilon 0.05 --p2 0.01");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("pi_a1 = "), std::string::npos);
  EXPECT_NE(result.stdout_text.find("interval_length = 0.1005"),
            std::string::npos);
  EXPECT_NE(result.stdout_text.find("ic_mc_lo = 0.495000"), std::string::npos);
  EXPECT_NE(result.stdout_text.find("ic_mc_hi = 0.505000"), std::string::npos);
}

TEST(Cli, CompareRanksMechanismsWhenAskedForAProportion) {
  const CliResult result =
      RunCli("compare --n 10000 --epsilon 0.25 --p2 0.05 --pi-a 0.1");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find(
                "ordering = improved-christofides < warner/simmons < "
                "christofides"),
            std::string::npos);
}

TEST(Cli, SimulateRequiresASeed) {
  const CliResult result = RunCli(
      "simulate --mechanism warner --epsilon 0.25 --n 100 --pi-a 0.1 "
      "--reps 10",
      /*merge_stderr=*/true);
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("--seed"), std::string::npos);
}

TEST(Cli, SimulateEmitsOneRowPerEpsilon) {
  const CliResult result = RunCli(
      "simulate --mechanism warner --epsilon 0.25 --epsilon 0.5 --n 100 "
      "--pi-a 0.1 --reps 100 --seed 7");
  EXPECT_EQ(result.exit_code, 0);
  const auto header_end = result.stdout_text.find('\n');
  EXPECT_EQ(result.stdout_text.substr(0, header_end),
            "mechanism,epsilon,var_theoretical,var_empirical,bias,R,N,pi_A,p2");
  int data_rows = 0;
  for (std::size_t pos = header_end + 1; pos < result.stdout_text.size();
       ++pos) {
    if (result.stdout_text[pos] == '\n') ++data_rows;
  }
  EXPECT_EQ(data_rows, 2);
}

TEST(Cli, SimulateIsByteIdenticalAcrossRunsAndThreadCounts) {
  const std::string base =
      "simulate --mechanism improved-christofides --epsilon 0.5 --n 60 "
      "--pi-a 0.2 --p2 0.2 --reps 400 --seed 123";
  const CliResult once = RunCli(base + " --threads 1");
  const CliResult twice = RunCli(base + " --threads 1");
  const CliResult parallel = RunCli(base + " --threads 4");
  EXPECT_EQ(once.exit_code, 0);
  EXPECT_EQ(once.stdout_text, twice.stdout_text);
  EXPECT_EQ(once.stdout_text, parallel.stdout_text);
}

TEST(Cli, ManifestSidecarReplaysByteIdentically) {
  const auto dir = TempDir();
  const auto out = dir / "replay.csv";
  std::error_code ec;
  std::filesystem::remove(out, ec);

  const CliResult first = RunCli(
      "simulate --mechanism simmons --epsilon 1 --n 80 --pi-a 0.25 "
      "--reps 200 --seed 9 --out " +
      out.string());
  ASSERT_EQ(first.exit_code, 0);
  const std::string original = ReadFile(out);
  ASSERT_FALSE(original.empty());
  const std::string manifest_path = out.string() + ".manifest.json";
  ASSERT_TRUE(std::filesystem::exists(manifest_path));

  std::filesystem::remove(out);
  const CliResult replay = RunCli("--from-manifest " + manifest_path);
  EXPECT_EQ(replay.exit_code, 0);
  EXPECT_EQ(ReadFile(out), original);
}

TEST(Cli, SweepAnalyticOnlyNeedsNoSeed) {
  const CliResult result = RunCli(
      "sweep --n 3252599 --pi-a 0.0778 --epsilon 0.05 --epsilon 0.25 "
      "--p2 0.01 --reps 0");
  EXPECT_EQ(result.exit_code, 0);
  // 4 mechanisms x 2 epsilons rows, all analytic.
  const auto rows = [&] {
    int count = 0;
    for (char c : result.stdout_text) count += c == '\n';
    return count - 1;
  }();
  EXPECT_EQ(rows, 8);
  EXPECT_NE(result.stdout_text.find(",,,0,3252599,"), std::string::npos);
}

TEST(Cli, DesignPrintsTheInverseParameterization) {
  const CliResult result =
      RunCli("design --mechanism warner --epsilon 1");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("\"schema\": \"rr-ldp/1\""),
            std::string::npos);
  EXPECT_NE(result.stdout_text.find("0.2689414"), std::string::npos);
}

TEST(Cli, OracleReportsExactMoments) {
  const CliResult result = RunCli(
      "oracle --mechanism warner --n 4 --pi-a 0.25 --p 0.25");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("\"mean\": 0.25"), std::string::npos);
  EXPECT_NE(result.stdout_text.find("\"variance\": 0.1875"),
            std::string::npos);
}

TEST(Cli, IngestReportsCountsAndProportion) {
  const auto dir = TempDir();
  const auto dataset = dir / "tiny.csv";
  {
    std::ofstream out(dataset);
    out << "SERIAL,HCOVANY\n1,1\n2,2\n3,2\n4,2\n";
  }
  const CliResult result = RunCli("ingest " + dataset.string());
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(result.stdout_text, "n = 4\npi_a = 0.250000\n");
}

TEST(Cli, IngestRejectsUnknownCodes) {
  const auto dir = TempDir();
  const auto dataset = dir / "bad.csv";
  {
    std::ofstream out(dataset);
    out << "SERIAL,HCOVANY\n1,1\n2,9\n";
  }
  const CliResult result =
      RunCli("ingest " + dataset.string(), /*merge_stderr=*/true);
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("unknown code"), std::string::npos);
  EXPECT_NE(result.stdout_text.find("row 2"), std::string::npos);
}

TEST(Cli, IngestSynthesizesDatasets) {
  const auto dir = TempDir();
  const auto dataset = dir / "synth.csv";
  const CliResult result = RunCli(
      "ingest --synthetic 1000 --pi-a 0.0778 --seed 5 --out " +
      dataset.string());
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("pi_a = 0.078000"), std::string::npos);
  const CliResult reread = RunCli("ingest " + dataset.string());
  EXPECT_EQ(reread.stdout_text, "n = 1000\npi_a = 0.078000\n");
}

TEST(Cli, SyntheticRequiresSeedAndOut) {
  const CliResult no_seed = RunCli("ingest --synthetic 100 --out /tmp/x.csv",
                                   /*merge_stderr=*/true);
  EXPECT_NE(no_seed.exit_code, 0);
  EXPECT_NE(no_seed.stdout_text.find("--seed"), std::string::npos);
  const CliResult no_out =
      RunCli("ingest --synthetic 100 --seed 1", /*merge_stderr=*/true);
  EXPECT_NE(no_out.exit_code, 0);
  EXPECT_NE(no_out.stdout_text.find("--out"), std::string::npos);
}

TEST(Cli, UnknownMechanismFails) {
  const CliResult result = RunCli(
      "sample-size --mechanism kuk --epsilon 0.5 --var 0.1",
      /*merge_stderr=*/true);
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("unknown mechanism"), std::string::npos);
}

TEST(Cli, SensitivityLevelExpandsToTheBudgetPreset) {
  const CliResult result = RunCli(
      "sweep --n 100 --pi-a 0.1 --sensitivity-level high --p2 0.01 --reps 0");
  EXPECT_EQ(result.exit_code, 0);
  // 4 mechanisms x the 4 preset budgets 0.05..0.5.
  int rows = 0;
  for (char c : result.stdout_text) rows += c == '\n';
  EXPECT_EQ(rows - 1, 16);
  EXPECT_NE(result.stdout_text.find("warner,0.05,"), std::string::npos);
  EXPECT_NE(result.stdout_text.find("improved-christofides,0.5,"),
            std::string::npos);

  const CliResult conflict = RunCli(
      "sweep --n 100 --pi-a 0.1 --sensitivity-level high --epsilon 1 "
      "--reps 0",
      /*merge_stderr=*/true);
  EXPECT_NE(conflict.exit_code, 0);
}

TEST(Cli, SimulateEmitsJsonReports) {
  const CliResult result = RunCli(
      "simulate --mechanism warner --epsilon 1 --n 100 --pi-a 0.1 --reps 50 "
      "--seed 4 --format json");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("\"schema\": \"rr-ldp/1\""),
            std::string::npos);
  EXPECT_NE(result.stdout_text.find("\"kind\": \"simulation-report\""),
            std::string::npos);
  EXPECT_NE(result.stdout_text.find("\"var_empirical\""), std::string::npos);
}

TEST(Cli, SimulateSurveysAnIngestedDataset) {
  const auto dir = TempDir();
  const auto dataset = dir / "survey_me.csv";
  {
    std::ofstream out(dataset);
    out << "SERIAL,HCOVANY\n";
    for (int i = 1; i <= 40; ++i) {
      out << i << ',' << (i % 10 == 0 ? 1 : 2) << "\n";
    }
  }
  const CliResult result = RunCli(
      "simulate --mechanism warner --epsilon 1 --reps 50 --seed 12 --input " +
      dataset.string());
  EXPECT_EQ(result.exit_code, 0);
  // The report row carries the dataset's N and proportion.
  EXPECT_NE(result.stdout_text.find(",50,40,0.1,"), std::string::npos);
}

TEST(Cli, IngestHonorsCodeOverrides) {
  const auto dir = TempDir();
  const auto dataset = dir / "coded.csv";
  {
    std::ofstream out(dataset);
    out << "ID,FLAG\n1,9\n2,7\n3,7\n4,7\n";
  }
  const CliResult result = RunCli("ingest " + dataset.string() +
                                  " --column FLAG --sensitive-code 9 "
                                  "--insensitive-code 7");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(result.stdout_text, "n = 4\npi_a = 0.250000\n");
}

TEST(Cli, UsageErrorsPrintHelp) {
  const CliResult result = RunCli("simulate --bogus-flag 1",
                                  /*merge_stderr=*/true);
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.stdout_text.find("Usage"), std::string::npos);
}

TEST(Cli, OutDirEnvironmentOverrideRedirectsRelativePaths) {
  const auto dir = TempDir() / "outdir";
  std::filesystem::create_directories(dir);
  const std::string command =
      "RRLDP_OUT_DIR=" + dir.string() + " " + CliBinary() +
      " sample-size --mechanism warner --epsilon 0.5 --var 0.1 "
      "--out nested.txt 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  pclose(pipe);
  EXPECT_EQ(ReadFile(dir / "nested.txt"), "40\n");
}

}  // namespace
