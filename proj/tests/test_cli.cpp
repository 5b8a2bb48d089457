//------------------------------------------------------------------------------
//
//   Copyright 2026 The chandisc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <chandisc/cli.hpp>

#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using namespace chandisc;

std::string problem(char const *name)
{
  return (std::filesystem::path(CHANDISC_PROBLEMS_DIR) / name).string();
}

struct Result
{
  int         code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  std::ostringstream out;
  std::ostringstream err;
  int const          code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, FrontierEndpoints)
{
  auto const r = run({"frontier", "--problem", problem("bsc_example2.json"), "--px", "uniform",
                      "--s-points", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const t = read_csv(r.out);
  EXPECT_EQ(t.comments[0], "chandisc frontier csv");
  EXPECT_EQ(t.comments[1], "units: nats");
  EXPECT_EQ(t.header, (std::vector<std::string>{"s", "e0", "e1"}));
  ASSERT_EQ(t.rows.size(), 11u);
  EXPECT_EQ(t.rows.front()[1], 0.0);
  EXPECT_NEAR(t.rows.front()[2], 0.116321756586, 1e-12);
  EXPECT_NEAR(t.rows.back()[1], 0.153663586804, 1e-12);
  EXPECT_EQ(t.rows.back()[2], 0.0);
}

TEST(CliTest, SweepMatchesClosedForm)
{
  auto const r = run({"frontier", "--problem", problem("bsc_example1.json"), "--px", "sweep",
                      "--s-points", "21"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const t = read_csv(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"rate", "e0", "e1", "s", "px_0", "px_1"}));
  auto const cf = example1_closed_form(0.1, 0.1, 0.8, uniform_grid(101), uniform_grid(21));
  ASSERT_EQ(t.rows.size(), cf.points.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
  {
    EXPECT_NEAR(t.rows[i][0], cf.points[i].rate, 1e-11);
    EXPECT_NEAR(t.rows[i][1], cf.points[i].e0, 1e-11);
    EXPECT_NEAR(t.rows[i][2], cf.points[i].e1, 1e-11);
  }
}

TEST(CliTest, DegenerateIsSingleRow)
{
  for (char const *verb : {"surface", "np", "minimax"})
  {
    auto const r = run({verb, "--problem", problem("degenerate.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const t = read_csv(r.out);
    ASSERT_EQ(t.rows.size(), 1u) << verb;
    EXPECT_NEAR(t.rows[0][0], 0.368064207168, 1e-12);
    EXPECT_EQ(t.rows[0][1], 0.0);
  }
}

TEST(CliTest, NpAndMinimaxExamples)
{
  auto const np = run({"np", "--problem", problem("bsc_example2.json")});
  ASSERT_EQ(np.code, 0);
  auto const t = read_csv(np.out);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(t.rows[0][1], 0.116321756586, 1e-12);
  bool noted = false;
  for (auto const &c : t.comments)
  {
    noted = noted || c.find("identical for every alpha") != std::string::npos;
  }
  EXPECT_TRUE(noted);

  auto const mm = run({"minimax", "--problem", problem("bsc_example1.json")});
  ASSERT_EQ(mm.code, 0);
  for (auto const &row : read_csv(mm.out).rows)
  {
    EXPECT_NEAR(row[1], row[3] * 0.510825623766, 1e-11);
  }
}

TEST(CliTest, SimulateExactReport)
{
  auto const r = run({"simulate", "--problem", problem("bsc_example2.json"), "--px", "1,0",
                      "--s", "0.5", "--n", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["method"], "exact");
  EXPECT_EQ(j["runs"].size(), 1u);
  EXPECT_NEAR(j["runs"][0]["eps0"].get<double>(), 0.263901070900, 1e-11);
  EXPECT_NEAR(j["runs"][0]["eps1"].get<double>(), 0.149308345900, 1e-11);
  EXPECT_NEAR(j["theory_e0"].get<double>(), 0.0288768367028, 1e-12);
  EXPECT_EQ(j["problem_hash"].get<std::string>().size(), 16u);
}

TEST(CliTest, SimulateIsByteReproducible)
{
  std::vector<std::string> args{"simulate", "--problem", problem("bsc_example2.json"), "--n",
                                "6,8", "--method", "mc", "--trials", "2000", "--seed", "17"};
  auto const a = run(args);
  auto const b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto const j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["seed"], 17u);
  EXPECT_EQ(j["manifest"]["seed"], 17u);
}

TEST(CliTest, SimulateNeymanPearson)
{
  auto const r = run({"simulate", "--problem", problem("bsc_example2.json"), "--px", "1,0",
                      "--alpha", "0.3", "--n", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["runs"][0]["eps1"].get<double>(), 0.149308345900, 1e-11);
}

TEST(CliTest, MembershipWitness)
{
  auto const r = run({"membership", "--problem", problem("bsc_example2.json"), "--rate", "0.3",
                      "--e0", "0.02", "--e1", "0.03"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["member"].get<bool>());
  EXPECT_FALSE(j["witness"].is_null());
}

TEST(CliTest, OutFileAndJsonFormat)
{
  auto const path = std::filesystem::temp_directory_path() / "chandisc_cli_test.json";
  auto const r    = run({"np", "--problem", problem("bsc_example2.json"), "--out", path.string(),
                         "--units", "bits"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  auto const    j = nlohmann::json::parse(in);
  EXPECT_EQ(j["units"], "bits");
  EXPECT_NEAR(j["points"][0]["e"].get<double>(), 0.116321756586 / std::log(2.0), 1e-11);
  std::filesystem::remove(path);
}

TEST(CliTest, ExitCodes)
{
  auto const p2 = problem("bsc_example2.json");
  EXPECT_EQ(run({"simulate", "--problem", p2, "--trials", "0"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"simulate", "--problem", p2, "--s", "0.5", "--alpha", "0.1"}).code,
            cli::kExitValidation);
  EXPECT_EQ(run({"simulate", "--problem", p2, "--alpha", "1.5"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"simulate", "--problem", p2, "--n", "9,4"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"simulate", "--problem", p2, "--px", "0.2"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"frontier", "--problem", "/nonexistent.json"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitValidation);
  EXPECT_EQ(run({}).code, cli::kExitValidation);
  EXPECT_EQ(run({"np"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"simulate", "--problem", p2, "--n", "8000"}).code, cli::kExitBudget);
  EXPECT_EQ(run({"--version"}).code, cli::kExitOk);
}

}  // namespace
