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

#include "qpv/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpv/error.hpp"

namespace qpv {
namespace {

using nlohmann::json;

constexpr double kPercent = 0.01;
constexpr double kRiskFreeTolerance = 1e-9;

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::InvalidScenario, what);
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing '" + key + "'");
  if (!it->is_number()) fail(where + ": '" + key + "' must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) fail(where + ": '" + key + "' is not finite");
  return v;
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::vector<double> number_array(const json& obj, const char* key,
                                 const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) {
    fail(where + ": '" + key + "' must be an array");
  }
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) fail(where + ": '" + key + "' holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

const MarketScenario& ScenarioFile::scenario(MarketLabel label) const {
  const auto it = scenarios.find(label);
  if (it == scenarios.end()) {
    throw Error(ErrorKind::InvalidConfig,
                "scenario file has no '" + to_string(label) + "' scenario");
  }
  return it->second;
}

PortfolioSpec ScenarioFile::portfolio_for(MarketLabel label) const {
  const auto& sc = scenario(label);
  PortfolioSpec out = portfolio;
  for (std::size_t j = 0; j < out.assets.size(); ++j) {
    out.assets[j].growth_rate = sc.growth_rates[j];
  }
  return out;
}

ScenarioFile parse_scenario_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");

  ScenarioFile out;

  const auto assets = root.find("assets");
  if (assets == root.end() || !assets->is_array() || assets->empty()) {
    fail("'assets' must be a non-empty array");
  }
  bool have_riskfree = false;
  for (std::size_t j = 0; j < assets->size(); ++j) {
    const json& a = (*assets)[j];
    const std::string where = "assets[" + std::to_string(j) + "]";
    if (!a.is_object()) fail(where + " must be an object");
    AssetInput asset;
    asset.name = a.value("name", "asset" + std::to_string(j));
    asset.eps_first_year = number(a, "eps_y1", where);
    asset.risk_premium = number(a, "nu", where) * kPercent;
    asset.discount_y1 = number(a, "r1", where) * kPercent;
    asset.discount_y2 = number(a, "r2", where) * kPercent;
    const double r_inf = number(a, "r_inf", where) * kPercent;
    if (asset.discount_y1 <= -1.0 || asset.discount_y2 <= -1.0 ||
        r_inf <= -1.0) {
      fail(where + ": discount rates must exceed -100%");
    }
    const double riskfree = r_inf - asset.risk_premium;
    if (!have_riskfree) {
      out.riskfree_longterm = riskfree;
      have_riskfree = true;
    } else if (std::abs(riskfree - out.riskfree_longterm) > kRiskFreeTolerance) {
      fail(where + ": r_inf - nu = " + std::to_string(riskfree) +
           " disagrees with the shared long-term risk-free rate " +
           std::to_string(out.riskfree_longterm));
    }
    out.portfolio.assets.push_back(std::move(asset));
  }
  for (auto& asset : out.portfolio.assets) {
    asset.riskfree_longterm = out.riskfree_longterm;
  }

  out.portfolio.holdings = number_array(root, "holdings", "root");
  out.portfolio.market_value = number(root, "market_value", "root");
  try {
    out.portfolio.validate();
  } catch (const Error& e) {
    fail(e.what());
  }

  const auto scenarios = root.find("scenarios");
  if (scenarios == root.end() || !scenarios->is_object() ||
      scenarios->empty()) {
    fail("'scenarios' must be a non-empty object");
  }
  for (const auto& [key, s] : scenarios->items()) {
    MarketScenario sc;
    try {
      sc.label = parse_market_label(key);
    } catch (const Error&) {
      fail("unknown scenario '" + key + "'");
    }
    const std::string where = "scenarios." + key;
    if (!s.is_object()) fail(where + " must be an object");
    sc.growth_rates = number_array(s, "g", where);
    if (sc.growth_rates.size() != out.portfolio.assets.size()) {
      fail(where + ": 'g' needs one entry per asset");
    }
    for (double& g : sc.growth_rates) g *= kPercent;
    sc.delta_e_sigma = number(s, "sigma_e", where);
    sc.delta_r_sigma = number(s, "sigma_r", where);
    sc.delta_e_bound = number(s, "bound_e", where);
    sc.delta_r_bound = number(s, "bound_r", where);
    sc.delta_e_mean = number_or(s, "mu_e", 0.0, where);
    sc.delta_r_mean = number_or(s, "mu_r", 0.0, where);
    sc.validate();
    out.scenarios.emplace(sc.label, std::move(sc));
  }
  return out;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

}  // namespace qpv
