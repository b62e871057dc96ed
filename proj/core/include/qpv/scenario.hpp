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

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "qpv/valuation.hpp"

namespace qpv {

/// Parsed scenario file. Rates in the file are percentages; everything here
/// is already converted to fractions.
///
/// File layout (JSON):
///   assets[]    {name, eps_y1, nu, r1, r2, r_inf}      (rates in %)
///   holdings[]  share counts aligned with assets
///   market_value
///   scenarios   {bearish|stable|bullish: {g[] (%), sigma_e, sigma_r,
///                bound_e, bound_r, [mu_e], [mu_r]}}
struct ScenarioFile {
  /// Assets with growth_rate = 0; use portfolio_for() for a scenario.
  PortfolioSpec portfolio;
  double riskfree_longterm = 0.0;
  std::map<MarketLabel, MarketScenario> scenarios;

  const MarketScenario& scenario(MarketLabel label) const;
  /// Portfolio with each asset's growth rate taken from the scenario.
  PortfolioSpec portfolio_for(MarketLabel label) const;
};

/// r-bar_inf is recovered per asset as r_inf - nu and must agree across
/// assets to 1e-9. Throws InvalidScenario on any schema or range problem.
ScenarioFile parse_scenario_json(const std::string& text);
ScenarioFile load_scenario_file(const std::filesystem::path& path);

}  // namespace qpv
