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

/**
 * @file
 * Modified Gordon-Shapiro intrinsic value of an EPS-driven asset, its
 * first-order expansion in the long-term shocks (delta_E, delta_r) and the
 * affine map of portfolio values onto [0, 1].
 *
 * All rates are decimal fractions (0.0523, not 5.23).
 */

#pragma once

#include <span>
#include <string>
#include <vector>

namespace qpv {

/// One asset under one market scenario.
struct AssetInput {
  std::string name;
  double eps_first_year = 0.0;        ///< E_1, euros per share
  double risk_premium = 0.0;          ///< nu
  double discount_y1 = 0.0;           ///< r_1
  double discount_y2 = 0.0;           ///< r_2
  double riskfree_longterm = 0.0;     ///< r-bar_inf, shared by all assets
  double growth_rate = 0.0;           ///< g, scenario dependent

  /// Long-term discount rate r_inf = r-bar (1 + delta_r) + nu.
  double longterm_discount(double delta_r = 0.0) const {
    return riskfree_longterm * (1.0 + delta_r) + risk_premium;
  }
};

struct PortfolioSpec {
  std::vector<AssetInput> assets;
  std::vector<double> holdings;  ///< share counts, aligned with assets
  double market_value = 0.0;

  /// Throws LengthMismatch / DomainError.
  void validate() const;
};

enum class MarketLabel { Bearish, Stable, Bullish };

std::string to_string(MarketLabel label);
/// Throws InvalidConfig for anything but bearish|stable|bullish.
MarketLabel parse_market_label(const std::string& text);

struct MarketScenario {
  MarketLabel label = MarketLabel::Stable;
  std::vector<double> growth_rates;
  double delta_e_sigma = 0.1;
  double delta_r_sigma = 0.01;
  double delta_e_bound = 0.3;
  double delta_r_bound = 0.03;
  double delta_e_mean = 0.0;
  double delta_r_mean = 0.0;

  /// Throws InvalidScenario if a sigma or bound is not strictly positive.
  void validate() const;
};

struct LinearCoefficients {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  std::size_t size() const { return a.size(); }
};

struct AssetCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Closed interval [v_min, v_max] of portfolio values mapped onto [0, 1].
class ValueScale {
 public:
  /// Throws DegenerateScale unless v_min < v_max.
  ValueScale(double v_min, double v_max);

  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  double span() const { return v_max_ - v_min_; }

 private:
  double v_min_;
  double v_max_;
};

struct Rescaled {
  double value = 0.0;
  bool clamped = false;
};

/// v_j from the truncated two-year-plus-perpetuity model with
/// E_2 = E_1 (1 + g)(1 + delta_e) and r_inf = r-bar (1 + delta_r) + nu.
/// Throws DegenerateDenominator if r_inf - g <= 0 or a (1 + r) factor <= 0.
double intrinsic_value_exact(const AssetInput& asset, double delta_e,
                             double delta_r);

/// First-order coefficients of intrinsic_value_exact around delta = 0.
AssetCoefficients linear_coefficients(const AssetInput& asset);
LinearCoefficients linear_coefficients(std::span<const AssetInput> assets);

/// sum_j w_j (a_j + b_j delta_e + c_j delta_r). delta_E is shared by all
/// assets.
double portfolio_value_linear(const PortfolioSpec& spec,
                              const LinearCoefficients& coeffs, double delta_e,
                              double delta_r);

/// Extremes of the linear portfolio value over the scenario's delta box.
/// Uses the two sign-determined corners when every b_j > 0 and c_j < 0,
/// otherwise all four corners.
ValueScale value_bounds(const PortfolioSpec& spec,
                        const LinearCoefficients& coeffs,
                        const MarketScenario& scenario);

/// (v - v_min) / span, clamped to [0, 1]; `clamped` reports edge noise.
Rescaled rescale(double value, const ValueScale& scale);
double unscale(double rescaled, const ValueScale& scale);

}  // namespace qpv
