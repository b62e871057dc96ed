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
 * Discretisation of the bounded normal shocks onto q-bit grids and the joint
 * (delta_E, delta_r) distribution over n = q_E + q_r qubits.
 *
 * Joint index layout: the low q_E bits select the delta_E point, the high
 * q_r bits select the delta_r point.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "qpv/valuation.hpp"

namespace qpv {

struct GridSpec {
  int bits = 2;
  double mean = 0.0;
  double sigma = 1.0;
  double lower = -1.0;
  double upper = 1.0;

  /// Throws InvalidGrid.
  void validate() const;
};

struct DiscreteDistribution {
  std::vector<double> points;  ///< strictly increasing
  std::vector<double> probs;   ///< non-negative, sums to 1

  std::size_t size() const { return points.size(); }
  double mean() const;
};

class JointGrid {
 public:
  JointGrid(DiscreteDistribution delta_e, DiscreteDistribution delta_r);

  const DiscreteDistribution& delta_e_dist() const { return delta_e_; }
  const DiscreteDistribution& delta_r_dist() const { return delta_r_; }

  int bits_e() const { return bits_e_; }
  int bits_r() const { return bits_r_; }
  int num_qubits() const { return bits_e_ + bits_r_; }
  std::size_t size() const { return probs_.size(); }

  std::size_t e_index(std::size_t i) const { return i & e_mask_; }
  std::size_t r_index(std::size_t i) const { return i >> bits_e_; }
  double delta_e(std::size_t i) const { return delta_e_.points[e_index(i)]; }
  double delta_r(std::size_t i) const { return delta_r_.points[r_index(i)]; }

  const std::vector<double>& probs() const { return probs_; }

 private:
  DiscreteDistribution delta_e_;
  DiscreteDistribution delta_r_;
  int bits_e_;
  int bits_r_;
  std::size_t e_mask_;
  std::vector<double> probs_;
};

/// 2^q equally spaced points on [lower, upper] (endpoints exact) weighted by
/// the normal pdf at each point and normalised.
DiscreteDistribution discretize_truncated_normal(const GridSpec& spec);

JointGrid joint_grid(const GridSpec& e_spec, const GridSpec& r_spec);

/// The grids a market scenario implies at `bits` per register.
JointGrid scenario_grid(const MarketScenario& scenario, int bits);

/// f(i) = rescale(portfolio_value_linear(delta_E(i), delta_r(i))).
std::vector<double> grid_values_to_payoff(const JointGrid& grid,
                                          const PortfolioSpec& spec,
                                          const LinearCoefficients& coeffs,
                                          const ValueScale& scale);

}  // namespace qpv
