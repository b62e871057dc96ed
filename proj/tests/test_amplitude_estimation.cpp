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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qpv/amplitude_estimation.hpp"
#include "qpv/analysis.hpp"
#include "qpv/error.hpp"

namespace qpv {
namespace {

constexpr double kPi = std::numbers::pi;

// Counts at their expected values for a given theta.
std::vector<ShotRecord> expected_records(double theta, const std::vector<int>& powers,
                                         std::int64_t shots = 1000) {
  std::vector<ShotRecord> out;
  for (int m : powers) {
    const double p = std::pow(std::sin((2 * m + 1) * theta), 2);
    out.push_back({m, shots, std::llround(p * static_cast<double>(shots))});
  }
  return out;
}

TEST(LogLikelihood, SingleCircuitPeaksAtQuarterPi) {
  const std::vector<ShotRecord> r{{0, 100, 50}};
  const double peak = log_likelihood(kPi / 4, r);
  EXPECT_NEAR(peak, 100 * std::log(0.5), 1e-12);
  EXPECT_LT(log_likelihood(kPi / 4 - 0.01, r), peak);
  EXPECT_LT(log_likelihood(kPi / 4 + 0.01, r), peak);
}

TEST(LogLikelihood, ZeroCountsContributeNothing) {
  const std::vector<ShotRecord> all_good{{0, 10, 10}};
  EXPECT_NEAR(log_likelihood(kPi / 2 - 1e-9, all_good), 0.0, 1e-12);
}

TEST(LogLikelihood, RejectsThetaOutsideOpenInterval) {
  const std::vector<ShotRecord> r{{0, 10, 5}};
  for (double theta : {0.0, -0.1, kPi / 2, 2.0}) {
    try {
      log_likelihood(theta, r);
      FAIL() << theta;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
  }
}

TEST(Mle, SingleCircuitFrequency) {
  const std::vector<ShotRecord> r{{0, 1000, 250}};
  const auto est = mle_estimate(r);
  EXPECT_NEAR(est.amplitude, 0.25, 1e-8);
  EXPECT_NEAR(est.theta, kPi / 6, 1e-8);
}

TEST(Mle, BoundaryCountsClampToTheEdges) {
  const std::vector<ShotRecord> none{{0, 100, 0}, {1, 100, 0}};
  EXPECT_LE(mle_estimate(none).theta, 1e-6);
  EXPECT_GE(mle_estimate(none).theta, kThetaClamp);
  const std::vector<ShotRecord> all{{0, 100, 100}};
  EXPECT_GE(mle_estimate(all).theta, kPi / 2 - 1e-6);
  EXPECT_LE(mle_estimate(all).theta, kPi / 2 - kThetaClamp);
}

TEST(Mle, RecoversThetaFromExpectedCounts) {
  const auto r = expected_records(0.4, {0, 1, 2, 4, 8});
  EXPECT_NEAR(mle_estimate(r).theta, 0.4, 2e-3);
}

TEST(Mle, UnamplifiedCircuitResolvesAliasing) {
  // sin^2(5 theta) alone has several equally likely roots in (0, pi/2).
  const double theta = 0.886;
  const auto only_m2 = expected_records(theta, {2});
  const auto with_m0 = expected_records(theta, {0, 2});
  EXPECT_GT(std::abs(mle_estimate(only_m2).theta - theta), 0.05);
  EXPECT_NEAR(mle_estimate(with_m0).theta, theta, 2e-3);
}

TEST(Mle, InvariantUnderRecordOrder) {
  auto r = expected_records(0.9, {0, 1, 2, 4, 8, 16});
  const double theta = mle_estimate(r).theta;
  std::mt19937_64 gen(1);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(r.begin(), r.end(), gen);
    EXPECT_NEAR(mle_estimate(r).theta, theta, 1e-9);
  }
}

TEST(Mle, RejectsInconsistentRecords) {
  const std::vector<ShotRecord> bad{{0, 10, 11}};
  EXPECT_THROW(mle_estimate(bad), Error);
  EXPECT_THROW(mle_estimate(std::vector<ShotRecord>{}), Error);
}

TEST(Queries, CountExamples) {
  EXPECT_EQ(query_count(Schedule{{0, 0}, 1000}), 2000);
  EXPECT_EQ(query_count(Schedule{{0, 2}, 1000}), 6000);
  EXPECT_EQ(query_count(Schedule{{0}, 1}), 1);
  EXPECT_EQ(query_count(Schedule{{0, 1, 2, 4}, 100}), 100 * (1 + 3 + 5 + 9));
  EXPECT_THROW(query_count(Schedule{{}, 1000}), Error);
  EXPECT_THROW(query_count(Schedule{{0}, 0}), Error);
  EXPECT_THROW(query_count(Schedule{{-1}, 10}), Error);
}

TEST(EstimationError, SpotValues) {
  EXPECT_NEAR(estimation_error(0.5, Schedule{{0, 2}, 1000}), 0.0031008683647302114, 1e-15);
  EXPECT_NEAR(estimation_error(0.5, Schedule{{0}, 1000}), 0.015811388300841897, 1e-15);
  EXPECT_EQ(estimation_error(0.0, Schedule{{0}, 1000}), 0.0);
  EXPECT_THROW(estimation_error(1.5, Schedule{{0}, 1000}), Error);
}

TEST(EstimationError, MonotoneInShotsAndCircuits) {
  const Schedule base{kExponentialSchedule, 100};
  for (std::size_t m = 1; m < kExponentialSchedule.size(); ++m) {
    EXPECT_LT(estimation_error(0.3, base.prefix(m + 1)), estimation_error(0.3, base.prefix(m)));
  }
  EXPECT_LT(estimation_error(0.3, Schedule{{0, 1}, 200}), estimation_error(0.3, Schedule{{0, 1}, 100}));
}

TEST(EstimationError, ClassicalRepetitionScalesAsInverseRoot) {
  std::vector<double> n;
  std::vector<double> s;
  for (std::size_t m = 1; m <= 7; ++m) {
    const Schedule sch{std::vector<int>(m, 0), 1000};
    n.push_back(static_cast<double>(query_count(sch)));
    s.push_back(estimation_error(0.5, sch));
  }
  EXPECT_NEAR(loglog_slope(n, s), -0.5, 1e-12);
}

TEST(EstimationError, ExponentialScheduleApproachesInverseLinear) {
  const Schedule full{kExponentialSchedule, 1000};
  const auto local = [&](std::size_t m) {
    const auto a = full.prefix(m - 1);
    const auto b = full.prefix(m);
    return std::log(estimation_error(0.5, b) / estimation_error(0.5, a)) /
           std::log(static_cast<double>(query_count(b)) / static_cast<double>(query_count(a)));
  };
  EXPECT_NEAR(local(7), -1.0, 0.05);
  EXPECT_LT(local(7), local(3));
}

TEST(ValueConversion, EuroErrorOfTheTwoCircuitSchedule) {
  const ValueScale scale(3666.60, 6656.09);
  const auto v = amplitude_to_value(0.5, 0.0031008683647302114, EncodingMode::Exact, 0.25, scale);
  EXPECT_NEAR(v.sigma, 9.27, 0.005);
  EXPECT_NEAR(v.value, 0.5 * (3666.60 + 6656.09), 1e-9);
  EXPECT_EQ(v.rescaled, 0.5);
}

TEST(ValueConversion, LinearModeInverts) {
  const ValueScale scale(0.0, 10.0);
  const auto v = amplitude_to_value(0.5 + 0.25 * 0.2, 0.01, EncodingMode::LinearRotation, 0.25, scale);
  EXPECT_NEAR(v.rescaled, 0.7, 1e-15);
  EXPECT_NEAR(v.value, 7.0, 1e-14);
  EXPECT_NEAR(v.sigma, 0.4, 1e-15);
  EXPECT_EQ(amplitude_to_value(1.0, 0.0, EncodingMode::LinearRotation, 0.25, scale).rescaled, 1.0);
}

TEST(ScheduleParsing, AcceptsAndRejects) {
  EXPECT_EQ(parse_grover_powers("0,1,2,4"), (std::vector<int>{0, 1, 2, 4}));
  EXPECT_EQ(parse_grover_powers("3"), std::vector<int>{3});
  for (const char* bad : {"", "0,,1", "a", "1,-2", "1.5", "0,1x"}) {
    EXPECT_THROW(parse_grover_powers(bad), Error) << bad;
  }
}

TEST(Simulation, EstimateWithinThreeSigma) {
  const JointGrid g(DiscreteDistribution{{-1.0, 1.0}, {0.5, 0.5}}, DiscreteDistribution{{0.0}, {1.0}});
  const AmplitudeOracle oracle(g, PayoffEncoding{EncodingMode::Exact, 0.25, {0.3, 0.3}});
  const Schedule sch{{0, 1, 2, 4}, 1000};
  const auto rec = simulate_records(oracle, sch, 2024);
  ASSERT_EQ(rec.size(), 4u);
  const auto rep = estimate_from_records(rec, sch, EncodingMode::Exact, 0.25, ValueScale(0.0, 1.0));
  EXPECT_NEAR(rep.a_hat, 0.3, 3 * estimation_error(0.3, sch));
  EXPECT_EQ(rep.n_queries, 18000);
  EXPECT_EQ(rec, simulate_records(oracle, sch, 2024));
}

TEST(Simulation, NonMonotoneScheduleRestartsFromA) {
  const JointGrid g(DiscreteDistribution{{-1.0, 1.0}, {0.5, 0.5}}, DiscreteDistribution{{0.0}, {1.0}});
  const AmplitudeOracle oracle(g, PayoffEncoding{EncodingMode::Exact, 0.25, {0.25, 0.25}});
  const auto rec = simulate_records(oracle, Schedule{{1, 0}, 200}, 1);
  EXPECT_EQ(rec[0].good, 200);  // sin^2(3 pi / 6) = 1
  EXPECT_LT(rec[1].good, 200);
}

}  // namespace
}  // namespace qpv
