// Copyright 2026 The qpv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(QPV_BINARY) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string scenario_arg() { return std::string("--scenario ") + QPV_DEFAULT_SCENARIO; }

std::filesystem::path tmp(const std::string& name) {
  std::filesystem::create_directories(QPV_TEST_TMPDIR);
  return std::filesystem::path(QPV_TEST_TMPDIR) / name;
}

TEST(Cli, ValidateBundledScenario) {
  const auto r = run("validate " + scenario_arg());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"v_min\""), std::string::npos);
}

TEST(Cli, ValidationErrorsExitWithTwo) {
  const auto bad = tmp("bad.json");
  std::ofstream(bad) << "{\"assets\": []}";
  EXPECT_EQ(run("validate --scenario " + bad.string()).status, 2);
  EXPECT_EQ(run("price " + scenario_arg() + " --shots 0").status, 2);
  EXPECT_EQ(run("price " + scenario_arg() + " --schedule 0,x").status, 2);
  EXPECT_EQ(run("price " + scenario_arg() + " --market sideways").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(Cli, PriceIsReproducible) {
  const std::string args = "price " + scenario_arg() + " --market stable --seed 7";
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(run("price " + scenario_arg() + " --market stable --seed 8").out, a.out);
}

TEST(Cli, SweepWritesCsvAndJson) {
  const auto csv = tmp("sweep.csv");
  const auto json = tmp("sweep.json");
  const auto r = run("sweep " + scenario_arg() + " --shots 100 --seed 1,2 --out " + csv.string() +
                     " --json " + json.string());
  ASSERT_EQ(r.status, 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "method,M,n_queries,sigma_amplitude,sigma_euros,slope_running");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 14);
  EXPECT_TRUE(std::filesystem::exists(json));
}

TEST(Cli, FidelityRuns) {
  const auto r = run("fidelity " + scenario_arg() + " --market bullish --noise 0.01");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("state_preparation+qae"), std::string::npos);
}

}  // namespace
