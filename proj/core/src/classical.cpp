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

#include "qpv/classical.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qpv/error.hpp"
#include "qpv/rng.hpp"

namespace qpv {
namespace {

constexpr std::int64_t kBatchSize = 1 << 16;
constexpr std::size_t kMaxBruteForceStates = std::size_t{1} << 20;
constexpr int kMaxRejections = 1'000'000;

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double truncated_normal(Rng& rng, double mean, double sigma, double bound) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double x = mean + sigma * rng.normal();
    if (x >= -bound && x <= bound) return x;
  }
  throw Error(ErrorKind::DomainError,
              "rejection sampler cannot hit the truncation window");
}

}  // namespace

void McConfig::validate() const {
  if (n_samples < 2) {
    throw Error(ErrorKind::InvalidConfig, "Monte Carlo needs at least 2 samples");
  }
}

McResult mc_estimate(const PortfolioSpec& spec,
                     const LinearCoefficients& coeffs,
                     const MarketScenario& scenario, const JointGrid& grid,
                     const McConfig& cfg) {
  cfg.validate();

  std::vector<double> grid_values;
  std::vector<double> cdf;
  if (cfg.sampling_mode == SamplingMode::DiscreteGrid) {
    grid_values.resize(grid.size());
    cdf.resize(grid.size());
    double running = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid_values[i] = portfolio_value_linear(spec, coeffs, grid.delta_e(i),
                                              grid.delta_r(i));
      running += grid.probs()[i];
      cdf[i] = running;
    }
  }

  double shift = 0.0;
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::int64_t drawn = 0;
  for (std::uint64_t batch = 0; drawn < cfg.n_samples; ++batch) {
    Rng rng(cfg.seed, batch);
    const std::int64_t count = std::min(kBatchSize, cfg.n_samples - drawn);
    for (std::int64_t s = 0; s < count; ++s) {
      double v = 0.0;
      if (cfg.sampling_mode == SamplingMode::DiscreteGrid) {
        v = grid_values[rng.categorical(cdf)];
      } else {
        const double de = truncated_normal(rng, scenario.delta_e_mean,
                                           scenario.delta_e_sigma,
                                           scenario.delta_e_bound);
        const double dr = truncated_normal(rng, scenario.delta_r_mean,
                                           scenario.delta_r_sigma,
                                           scenario.delta_r_bound);
        v = portfolio_value_linear(spec, coeffs, de, dr);
      }
      if (drawn == 0 && s == 0) shift = v;
      const double d = v - shift;
      sum.add(d);
      sum_sq.add(d * d);
    }
    drawn += count;
  }

  const auto n = static_cast<double>(cfg.n_samples);
  const double mean_shifted = sum.value() / n;
  const double variance =
      std::max(0.0, (sum_sq.value() - n * mean_shifted * mean_shifted) / (n - 1.0));
  return {shift + mean_shifted, std::sqrt(variance / n), cfg.n_samples};
}

double brute_force_mean(const JointGrid& grid, const PortfolioSpec& spec,
                        const LinearCoefficients& coeffs) {
  if (grid.size() > kMaxBruteForceStates) {
    throw Error(ErrorKind::InvalidGrid, "grid too large for exact summation");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    total.add(grid.probs()[i] *
              portfolio_value_linear(spec, coeffs, grid.delta_e(i), grid.delta_r(i)));
  }
  return total.value();
}

}  // namespace qpv
