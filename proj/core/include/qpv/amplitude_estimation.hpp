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
 * Maximum-likelihood amplitude estimation over several circuits with
 * different Grover powers, query accounting, the generalised estimation
 * error and the map from amplitude estimates back to euros.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qpv/circuit.hpp"
#include "qpv/valuation.hpp"

namespace qpv {

struct Schedule {
  std::vector<int> grover_powers;
  std::int64_t shots_per_circuit = 1000;

  /// Throws InvalidSchedule.
  void validate() const;
  std::size_t num_circuits() const { return grover_powers.size(); }
  /// First `count` circuits.
  Schedule prefix(std::size_t count) const;
};

/// Parses "0,1,2,4"; throws InvalidSchedule.
std::vector<int> parse_grover_powers(const std::string& text);

struct ShotRecord {
  int grover_power = 0;
  std::int64_t shots = 0;
  std::int64_t good = 0;

  bool operator==(const ShotRecord&) const = default;
};

struct MleResult {
  double theta = 0.0;
  double amplitude = 0.0;  ///< sin^2(theta)
};

inline constexpr double kThetaClamp = 1e-8;

/// sum_k good_k ln sin^2((2 m_k + 1) theta)
///       + (shots_k - good_k) ln cos^2((2 m_k + 1) theta).
/// Zero-count terms contribute 0. Throws DomainError unless 0 < theta < pi/2.
double log_likelihood(double theta, std::span<const ShotRecord> records);

/// Global maximiser on [eps, pi/2 - eps]: dense scan with
/// 1e4 * max(2 m_k + 1) points, then golden-section refinement to 1e-10.
/// Ties go to the smaller theta.
MleResult mle_estimate(std::span<const ShotRecord> records);

/// n_s * sum_k (2 m_k + 1).
std::int64_t query_count(const Schedule& schedule);

/// sqrt(p1 (1 - p1) / (n_s sum_k (2 m_k + 1)^2)).
double estimation_error(double p1, const Schedule& schedule);

struct ValueEstimate {
  double rescaled = 0.0;  ///< f-hat in [0, 1]
  double value = 0.0;     ///< euros
  double sigma = 0.0;     ///< euros
};

/// Inverts the payoff encoding and the value scale. In linear-rotation
/// mode f-hat = (a - 1/2) / c + 1/2 clamped to [0, 1], and the error is
/// scaled by 1/c.
ValueEstimate amplitude_to_value(double a_hat, double sigma_amplitude,
                                 EncodingMode mode, double scaling,
                                 const ValueScale& scale);

struct EstimateReport {
  double theta_hat = 0.0;
  double a_hat = 0.0;
  double f_hat = 0.0;
  double value_estimate = 0.0;
  double sigma_amplitude = 0.0;
  double sigma_euros = 0.0;
  std::int64_t n_queries = 0;
  Schedule schedule;
  EncodingMode mode = EncodingMode::Exact;
  double scaling = 0.25;
  std::vector<ShotRecord> records;
};

/// MLE, plug-in error at p1 = a_hat, and conversion to euros.
EstimateReport estimate_from_records(std::span<const ShotRecord> records,
                                     const Schedule& schedule,
                                     EncodingMode mode, double scaling,
                                     const ValueScale& scale);

/// Runs every circuit of the schedule on the simulator; circuit k samples
/// with the substream (seed, k).
std::vector<ShotRecord> simulate_records(const AmplitudeOracle& oracle,
                                         const Schedule& schedule,
                                         std::uint64_t seed);

}  // namespace qpv
