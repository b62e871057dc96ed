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

#include "qpv/valuation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qpv/error.hpp"

namespace qpv {
namespace {

struct Discounting {
  double one_plus_r1;
  double one_plus_r2;
};

Discounting short_term_factors(const AssetInput& asset) {
  const double f1 = 1.0 + asset.discount_y1;
  const double f2 = 1.0 + asset.discount_y2;
  if (!(f1 > 0.0) || !(f2 > 0.0)) {
    throw Error(ErrorKind::DegenerateDenominator,
                "asset '" + asset.name + "': discount rates must exceed -1");
  }
  return {f1, f2};
}

double perpetuity_spread(const AssetInput& asset, double delta_r) {
  const double spread = asset.longterm_discount(delta_r) - asset.growth_rate;
  if (!(spread > 0.0)) {
    throw Error(ErrorKind::DegenerateDenominator,
                "asset '" + asset.name + "': r_inf - g must be positive, got " +
                    std::to_string(spread));
  }
  return spread;
}

}  // namespace

void PortfolioSpec::validate() const {
  if (holdings.size() != assets.size()) {
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(holdings.size()) + " holdings for " +
                    std::to_string(assets.size()) + " assets");
  }
  for (double w : holdings) {
    if (!(w >= 0.0)) {
      throw Error(ErrorKind::DomainError, "holdings must be non-negative");
    }
  }
}

std::string to_string(MarketLabel label) {
  switch (label) {
    case MarketLabel::Bearish: return "bearish";
    case MarketLabel::Stable: return "stable";
    case MarketLabel::Bullish: return "bullish";
  }
  return "unknown";
}

MarketLabel parse_market_label(const std::string& text) {
  if (text == "bearish") return MarketLabel::Bearish;
  if (text == "stable") return MarketLabel::Stable;
  if (text == "bullish") return MarketLabel::Bullish;
  throw Error(ErrorKind::InvalidConfig, "unknown market label '" + text + "'");
}

void MarketScenario::validate() const {
  if (!(delta_e_sigma > 0.0) || !(delta_r_sigma > 0.0)) {
    throw Error(ErrorKind::InvalidScenario,
                to_string(label) + ": sigmas must be positive");
  }
  if (!(delta_e_bound > 0.0) || !(delta_r_bound > 0.0)) {
    throw Error(ErrorKind::InvalidScenario,
                to_string(label) + ": bounds must be positive");
  }
}

ValueScale::ValueScale(double v_min, double v_max) : v_min_(v_min), v_max_(v_max) {
  if (!(v_min < v_max) || !std::isfinite(v_min) || !std::isfinite(v_max)) {
    throw Error(ErrorKind::DegenerateScale,
                "need v_min < v_max, got [" + std::to_string(v_min) + ", " +
                    std::to_string(v_max) + "]");
  }
}

double intrinsic_value_exact(const AssetInput& asset, double delta_e,
                             double delta_r) {
  const auto [f1, f2] = short_term_factors(asset);
  const double spread = perpetuity_spread(asset, delta_r);
  const double g = asset.growth_rate;
  const double eps2 = asset.eps_first_year * (1.0 + g) * (1.0 + delta_e);
  return asset.eps_first_year / f1 +
         eps2 / (f1 * f2) * (1.0 + (1.0 + g) / spread);
}

AssetCoefficients linear_coefficients(const AssetInput& asset) {
  const auto [f1, f2] = short_term_factors(asset);
  const double spread = perpetuity_spread(asset, 0.0);
  const double g = asset.growth_rate;
  const double first_year = asset.eps_first_year / f1;

  AssetCoefficients out;
  out.b = first_year * (1.0 + g) / f2 * (1.0 + (1.0 + g) / spread);
  out.c = -first_year * (1.0 + g) * (1.0 + g) / f2 * asset.riskfree_longterm /
          (spread * spread);
  out.a = first_year + out.b;
  return out;
}

LinearCoefficients linear_coefficients(std::span<const AssetInput> assets) {
  LinearCoefficients out;
  out.a.reserve(assets.size());
  out.b.reserve(assets.size());
  out.c.reserve(assets.size());
  for (const auto& asset : assets) {
    const auto k = linear_coefficients(asset);
    out.a.push_back(k.a);
    out.b.push_back(k.b);
    out.c.push_back(k.c);
  }
  return out;
}

double portfolio_value_linear(const PortfolioSpec& spec,
                              const LinearCoefficients& coeffs, double delta_e,
                              double delta_r) {
  const std::size_t n = spec.holdings.size();
  if (coeffs.a.size() != n || coeffs.b.size() != n || coeffs.c.size() != n) {
    throw Error(ErrorKind::LengthMismatch,
                "coefficients do not match " + std::to_string(n) + " holdings");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    total += spec.holdings[j] *
             (coeffs.a[j] + coeffs.b[j] * delta_e + coeffs.c[j] * delta_r);
  }
  return total;
}

ValueScale value_bounds(const PortfolioSpec& spec,
                        const LinearCoefficients& coeffs,
                        const MarketScenario& scenario) {
  const double be = scenario.delta_e_bound;
  const double br = scenario.delta_r_bound;

  bool sign_structure = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (spec.holdings.size() == coeffs.size() && spec.holdings[j] == 0.0) {
      continue;
    }
    sign_structure = sign_structure && coeffs.b[j] > 0.0 && coeffs.c[j] < 0.0;
  }

  if (sign_structure) {
    return ValueScale(portfolio_value_linear(spec, coeffs, -be, +br),
                      portfolio_value_linear(spec, coeffs, +be, -br));
  }

  const std::array<double, 4> corners{
      portfolio_value_linear(spec, coeffs, -be, -br),
      portfolio_value_linear(spec, coeffs, -be, +br),
      portfolio_value_linear(spec, coeffs, +be, -br),
      portfolio_value_linear(spec, coeffs, +be, +br),
  };
  const auto [lo, hi] = std::minmax_element(corners.begin(), corners.end());
  return ValueScale(*lo, *hi);
}

Rescaled rescale(double value, const ValueScale& scale) {
  const double t = (value - scale.v_min()) / scale.span();
  if (t < 0.0) return {0.0, true};
  if (t > 1.0) return {1.0, true};
  return {t, false};
}

double unscale(double rescaled, const ValueScale& scale) {
  return scale.v_min() + rescaled * scale.span();
}

}  // namespace qpv
