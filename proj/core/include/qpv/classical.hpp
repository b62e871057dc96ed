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

#include <cstdint>

#include "qpv/grid.hpp"
#include "qpv/valuation.hpp"

namespace qpv {

enum class SamplingMode { DiscreteGrid, ContinuousTruncated };

struct McConfig {
  std::int64_t n_samples = 1000;
  std::uint64_t seed = 0;
  SamplingMode sampling_mode = SamplingMode::DiscreteGrid;

  void validate() const;
};

struct McResult {
  double mean = 0.0;   ///< euros
  double sigma = 0.0;  ///< standard error s / sqrt(n), euros
  std::int64_t n_queries = 0;
};

/// Plain Monte Carlo over (delta_E, delta_r). DiscreteGrid draws joint grid
/// indices by p(i); ContinuousTruncated rejection-samples each bounded
/// normal. Each sample is one query.
McResult mc_estimate(const PortfolioSpec& spec,
                     const LinearCoefficients& coeffs,
                     const MarketScenario& scenario, const JointGrid& grid,
                     const McConfig& cfg);

/// sum_i p(i) V_i over the whole grid (at most 2^20 states).
double brute_force_mean(const JointGrid& grid, const PortfolioSpec& spec,
                        const LinearCoefficients& coeffs);

}  // namespace qpv
