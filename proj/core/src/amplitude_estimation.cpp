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

#include "qpv/amplitude_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qpv/error.hpp"
#include "qpv/rng.hpp"

namespace qpv {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kScanDensity = 1e4;
constexpr double kThetaTolerance = 1e-10;

// Unchecked likelihood; -inf where a counted outcome has probability 0.
double log_likelihood_unchecked(double theta,
                                std::span<const ShotRecord> records) {
  double total = 0.0;
  for (const auto& r : records) {
    const double angle = (2.0 * r.grover_power + 1.0) * theta;
    const double s = std::sin(angle);
    const double c = std::cos(angle);
    const auto good = static_cast<double>(r.good);
    const auto bad = static_cast<double>(r.shots - r.good);
    if (good > 0.0) total += good * std::log(s * s);
    if (bad > 0.0) total += bad * std::log(c * c);
  }
  return total;
}

double golden_section_max(double lo, double hi,
                          std::span<const ShotRecord> records) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = log_likelihood_unchecked(x1, records);
  double f2 = log_likelihood_unchecked(x2, records);
  while (hi - lo > kThetaTolerance) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = log_likelihood_unchecked(x1, records);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = log_likelihood_unchecked(x2, records);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void Schedule::validate() const {
  if (grover_powers.empty()) {
    throw Error(ErrorKind::InvalidSchedule, "schedule needs at least one circuit");
  }
  if (shots_per_circuit < 1) {
    throw Error(ErrorKind::InvalidSchedule, "shots per circuit must be >= 1");
  }
  for (int m : grover_powers) {
    if (m < 0) throw Error(ErrorKind::InvalidSchedule, "Grover powers must be >= 0");
  }
}

Schedule Schedule::prefix(std::size_t count) const {
  count = std::min(count, grover_powers.size());
  return Schedule{{grover_powers.begin(),
                   grover_powers.begin() + static_cast<std::ptrdiff_t>(count)},
                  shots_per_circuit};
}

std::vector<int> parse_grover_powers(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidSchedule, "bad schedule entry '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || value < 0) {
      throw Error(ErrorKind::InvalidSchedule, "bad schedule entry '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidSchedule, "empty schedule");
  return out;
}

double log_likelihood(double theta, std::span<const ShotRecord> records) {
  if (!(theta > 0.0 && theta < kHalfPi)) {
    throw Error(ErrorKind::DomainError, "theta must lie in (0, pi/2)");
  }
  if (records.empty()) throw Error(ErrorKind::DomainError, "no shot records");
  return log_likelihood_unchecked(theta, records);
}

MleResult mle_estimate(std::span<const ShotRecord> records) {
  if (records.empty()) throw Error(ErrorKind::DomainError, "no shot records");
  int max_factor = 1;
  for (const auto& r : records) {
    if (r.good < 0 || r.good > r.shots || r.grover_power < 0) {
      throw Error(ErrorKind::DomainError, "inconsistent shot record");
    }
    max_factor = std::max(max_factor, 2 * r.grover_power + 1);
  }

  const double lo = kThetaClamp;
  const double hi = kHalfPi - kThetaClamp;
  const auto points = static_cast<std::size_t>(kScanDensity * max_factor);
  const double step = (hi - lo) / static_cast<double>(points - 1);

  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points; ++k) {
    const double theta = k + 1 == points ? hi : lo + step * static_cast<double>(k);
    const double v = log_likelihood_unchecked(theta, records);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }

  const double grid_theta = best + 1 == points ? hi : lo + step * static_cast<double>(best);
  const double left = std::max(lo, grid_theta - step);
  const double right = std::min(hi, grid_theta + step);
  double theta = golden_section_max(left, right, records);
  if (log_likelihood_unchecked(theta, records) < best_value) theta = grid_theta;

  return {theta, std::sin(theta) * std::sin(theta)};
}

std::int64_t query_count(const Schedule& schedule) {
  schedule.validate();
  std::int64_t per_shot = 0;
  for (int m : schedule.grover_powers) per_shot += 2 * static_cast<std::int64_t>(m) + 1;
  return schedule.shots_per_circuit * per_shot;
}

double estimation_error(double p1, const Schedule& schedule) {
  schedule.validate();
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw Error(ErrorKind::DomainError, "P(1) must lie in [0, 1]");
  }
  double weight = 0.0;
  for (int m : schedule.grover_powers) {
    const double k = 2.0 * m + 1.0;
    weight += k * k;
  }
  return std::sqrt(p1 * (1.0 - p1) /
                   (static_cast<double>(schedule.shots_per_circuit) * weight));
}

ValueEstimate amplitude_to_value(double a_hat, double sigma_amplitude,
                                 EncodingMode mode, double scaling,
                                 const ValueScale& scale) {
  double f = a_hat;
  double gain = 1.0;
  if (mode == EncodingMode::LinearRotation) {
    if (!(scaling > 0.0)) {
      throw Error(ErrorKind::DomainError, "scaling c must be positive");
    }
    f = (a_hat - 0.5) / scaling + 0.5;
    gain = 1.0 / scaling;
  }
  f = std::clamp(f, 0.0, 1.0);
  return {f, unscale(f, scale), sigma_amplitude * scale.span() * gain};
}

EstimateReport estimate_from_records(std::span<const ShotRecord> records,
                                     const Schedule& schedule,
                                     EncodingMode mode, double scaling,
                                     const ValueScale& scale) {
  const MleResult mle = mle_estimate(records);
  EstimateReport out;
  out.theta_hat = mle.theta;
  out.a_hat = mle.amplitude;
  out.sigma_amplitude = estimation_error(mle.amplitude, schedule);
  const ValueEstimate v =
      amplitude_to_value(mle.amplitude, out.sigma_amplitude, mode, scaling, scale);
  out.f_hat = v.rescaled;
  out.value_estimate = v.value;
  out.sigma_euros = v.sigma;
  out.n_queries = query_count(schedule);
  out.schedule = schedule;
  out.mode = mode;
  out.scaling = scaling;
  out.records.assign(records.begin(), records.end());
  return out;
}

std::vector<ShotRecord> simulate_records(const AmplitudeOracle& oracle,
                                         const Schedule& schedule,
                                         std::uint64_t seed) {
  schedule.validate();
  std::vector<ShotRecord> records;
  records.reserve(schedule.num_circuits());

  StateVector state = oracle.prepare();
  int power = 0;
  for (std::size_t k = 0; k < schedule.num_circuits(); ++k) {
    const int m = schedule.grover_powers[k];
    if (m < power) {
      state = oracle.prepare();
      power = 0;
    }
    for (; power < m; ++power) apply_q(state, oracle);
    const ShotSample shots =
        sample_shots(state, schedule.shots_per_circuit, mix_seed(seed, k));
    records.push_back({m, shots.shots, shots.good});
  }
  return records;
}

}  // namespace qpv
