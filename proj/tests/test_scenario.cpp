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

#include <gtest/gtest.h>

#include "qpv/error.hpp"
#include "qpv/scenario.hpp"
#include "support/index_tables.hpp"

namespace qpv {
namespace {

const char* kMinimal = R"({
  "assets": [{"name": "A", "eps_y1": 10, "nu": 5, "r1": 4, "r2": 4.5, "r_inf": 5.5},
             {"name": "B", "eps_y1": 20, "nu": 3, "r1": 3, "r2": 3.5, "r_inf": 3.5}],
  "holdings": [1, 2],
  "market_value": 100,
  "scenarios": {"stable": {"g": [1, 2], "sigma_e": 0.1, "sigma_r": 0.01,
                           "bound_e": 0.3, "bound_r": 0.03}}
})";

ErrorKind kind_of(const std::string& text) {
  try {
    parse_scenario_json(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::DomainError;
}

TEST(ScenarioFile, BundledFileMatchesTables) {
  const ScenarioFile file = load_scenario_file(QPV_DEFAULT_SCENARIO);
  ASSERT_EQ(file.portfolio.assets.size(), testing::kIndices.size());
  EXPECT_NEAR(file.riskfree_longterm, testing::kRiskFree, 1e-12);
  EXPECT_DOUBLE_EQ(file.portfolio.market_value, 5000.0);
  ASSERT_EQ(file.scenarios.size(), 3u);

  for (const auto& row : testing::kScenarios) {
    const PortfolioSpec parsed = file.portfolio_for(row.label);
    const PortfolioSpec typed = testing::portfolio(row);
    for (std::size_t j = 0; j < typed.assets.size(); ++j) {
      const auto& p = parsed.assets[j];
      const auto& t = typed.assets[j];
      EXPECT_EQ(p.name, t.name);
      EXPECT_DOUBLE_EQ(p.eps_first_year, t.eps_first_year);
      EXPECT_NEAR(p.risk_premium, t.risk_premium, 1e-15);
      EXPECT_NEAR(p.discount_y1, t.discount_y1, 1e-15);
      EXPECT_NEAR(p.discount_y2, t.discount_y2, 1e-15);
      EXPECT_NEAR(p.growth_rate, t.growth_rate, 1e-15);
      EXPECT_NEAR(p.longterm_discount(), testing::kIndices[j].r_inf / 100.0, 1e-15);
      EXPECT_DOUBLE_EQ(parsed.holdings[j], typed.holdings[j]);
    }
    const auto& sc = file.scenario(row.label);
    EXPECT_DOUBLE_EQ(sc.delta_e_bound, row.bound_e);
    EXPECT_DOUBLE_EQ(sc.delta_r_bound, row.bound_r);
    EXPECT_DOUBLE_EQ(sc.delta_e_sigma, 0.1);
    EXPECT_DOUBLE_EQ(sc.delta_r_sigma, 0.01);
  }
}

TEST(ScenarioFile, BearishGrowthIsReadAsPercent) {
  const ScenarioFile file = load_scenario_file(QPV_DEFAULT_SCENARIO);
  EXPECT_NEAR(file.scenario(MarketLabel::Bearish).growth_rates[0], -0.0005, 1e-15);
}

TEST(ScenarioFile, ParsesMinimalFile) {
  const ScenarioFile file = parse_scenario_json(kMinimal);
  EXPECT_NEAR(file.riskfree_longterm, 0.005, 1e-12);
  EXPECT_NEAR(file.portfolio_for(MarketLabel::Stable).assets[1].growth_rate, 0.02, 1e-15);
  EXPECT_THROW(file.scenario(MarketLabel::Bullish), Error);
}

TEST(ScenarioFile, RejectsInconsistentRiskFreeRate) {
  std::string text = kMinimal;
  text.replace(text.find("\"r_inf\": 3.5"), 12, "\"r_inf\": 3.6");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);
}

TEST(ScenarioFile, SchemaErrors) {
  EXPECT_EQ(kind_of("{not json"), ErrorKind::InvalidScenario);
  EXPECT_EQ(kind_of("[]"), ErrorKind::InvalidScenario);

  std::string text = kMinimal;
  text.replace(text.find("\"holdings\": [1, 2]"), 18, "\"holdings\": [1]");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);

  text = kMinimal;
  text.replace(text.find("\"g\": [1, 2]"), 11, "\"g\": [1]");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);

  text = kMinimal;
  text.replace(text.find("\"sigma_e\": 0.1"), 14, "\"sigma_e\": -1");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);

  text = kMinimal;
  text.replace(text.find("\"stable\""), 8, "\"sideways\"");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);

  text = kMinimal;
  text.replace(text.find("\"eps_y1\": 10"), 12, "\"eps_y1\": \"x\"");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);

  text = kMinimal;
  text.replace(text.find("\"holdings\": [1, 2]"), 18, "\"holdings\": [1, -2]");
  EXPECT_EQ(kind_of(text), ErrorKind::InvalidScenario);

  EXPECT_THROW(load_scenario_file("/nonexistent/scenario.json"), Error);
}

}  // namespace
}  // namespace qpv
