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

#include "qpv/grid.hpp"

#include <cmath>
#include <string>

#include "qpv/error.hpp"

namespace qpv {
namespace {

constexpr int kMaxBitsPerRegister = 20;

}  // namespace

void GridSpec::validate() const {
  if (bits < 1 || bits > kMaxBitsPerRegister) {
    throw Error(ErrorKind::InvalidGrid,
                "bits must be in [1, 20], got " + std::to_string(bits));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidGrid, "sigma must be positive");
  }
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(ErrorKind::InvalidGrid, "need lower < upper");
  }
}

double DiscreteDistribution::mean() const {
  // Sum mirrored pairs first so symmetric grids cancel exactly.
  const std::size_t n = points.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    total += probs[k] * points[k] + probs[n - 1 - k] * points[n - 1 - k];
  }
  if (n % 2 == 1) total += probs[n / 2] * points[n / 2];
  return total;
}

DiscreteDistribution discretize_truncated_normal(const GridSpec& spec) {
  spec.validate();
  const std::size_t n = std::size_t{1} << spec.bits;
  const double last = static_cast<double>(n - 1);

  DiscreteDistribution out;
  out.points.resize(n);
  out.probs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    out.points[k] = ((last - kk) * spec.lower + kk * spec.upper) / last;
  }
  out.points.front() = spec.lower;
  out.points.back() = spec.upper;

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double z = (out.points[k] - spec.mean) / spec.sigma;
    out.probs[k] = std::exp(-0.5 * z * z);
    total += out.probs[k];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::InvalidGrid,
                "all grid weights underflow; sigma too small for the bounds");
  }
  for (double& p : out.probs) p /= total;
  return out;
}

JointGrid::JointGrid(DiscreteDistribution delta_e, DiscreteDistribution delta_r)
    : delta_e_(std::move(delta_e)), delta_r_(std::move(delta_r)) {
  const auto log2_exact = [](std::size_t n) {
    int bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    if (n == 0 || (std::size_t{1} << bits) != n) {
      throw Error(ErrorKind::InvalidGrid, "register size must be a power of 2");
    }
    return bits;
  };
  if (delta_e_.points.size() != delta_e_.probs.size() ||
      delta_r_.points.size() != delta_r_.probs.size()) {
    throw Error(ErrorKind::LengthMismatch, "points and probs differ in length");
  }
  bits_e_ = log2_exact(delta_e_.size());
  bits_r_ = log2_exact(delta_r_.size());
  e_mask_ = delta_e_.size() - 1;
  for (const auto* d : {&delta_e_, &delta_r_}) {
    double total = 0.0;
    for (double p : d->probs) {
      if (!(p >= 0.0)) throw Error(ErrorKind::InvalidGrid, "negative weight");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw Error(ErrorKind::InvalidGrid, "weights must sum to 1");
    }
  }

  probs_.resize(delta_e_.size() * delta_r_.size());
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    probs_[i] = delta_e_.probs[e_index(i)] * delta_r_.probs[r_index(i)];
  }
}

JointGrid joint_grid(const GridSpec& e_spec, const GridSpec& r_spec) {
  return JointGrid(discretize_truncated_normal(e_spec),
                   discretize_truncated_normal(r_spec));
}

JointGrid scenario_grid(const MarketScenario& scenario, int bits) {
  const GridSpec e{bits, scenario.delta_e_mean, scenario.delta_e_sigma,
                   -scenario.delta_e_bound, scenario.delta_e_bound};
  const GridSpec r{bits, scenario.delta_r_mean, scenario.delta_r_sigma,
                   -scenario.delta_r_bound, scenario.delta_r_bound};
  return joint_grid(e, r);
}

std::vector<double> grid_values_to_payoff(const JointGrid& grid,
                                          const PortfolioSpec& spec,
                                          const LinearCoefficients& coeffs,
                                          const ValueScale& scale) {
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = portfolio_value_linear(spec, coeffs, grid.delta_e(i),
                                            grid.delta_r(i));
    f[i] = rescale(v, scale).value;
  }
  return f;
}

}  // namespace qpv
