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

#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "qpv/analysis.hpp"

namespace {

using namespace qpv;

const PricingProblem& stable_problem(int bits) {
  static const ScenarioFile file = load_scenario_file(QPV_DEFAULT_SCENARIO);
  static std::map<int, PricingProblem> cache;
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, build_problem(file, MarketLabel::Stable, bits)).first;
  return it->second;
}

AmplitudeOracle oracle(int bits) {
  const auto& p = stable_problem(bits);
  return AmplitudeOracle(p.grid, PayoffEncoding{EncodingMode::Exact, 0.25, p.payoff});
}

void BM_ApplyQ(benchmark::State& state) {
  const auto o = oracle(static_cast<int>(state.range(0)));
  StateVector s = o.prepare();
  for (auto _ : state) {
    apply_q(s, o);
    benchmark::DoNotOptimize(s[0]);
  }
  state.SetLabel(std::to_string(o.num_qubits()) + " qubits");
}
BENCHMARK(BM_ApplyQ)->Arg(2)->Arg(4)->Arg(6);

void BM_MleEstimate(benchmark::State& state) {
  const auto o = oracle(2);
  Schedule schedule{kExponentialSchedule, 1000};
  schedule = schedule.prefix(static_cast<std::size_t>(state.range(0)));
  const auto records = simulate_records(o, schedule, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mle_estimate(records));
}
BENCHMARK(BM_MleEstimate)->DenseRange(1, 7, 2)->Unit(benchmark::kMillisecond);

void BM_SampleShots(benchmark::State& state) {
  const StateVector s = amplified_state(oracle(2), 2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_shots(s, state.range(0), 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleShots)->Arg(1000)->Arg(100000);

void BM_MonteCarlo(benchmark::State& state) {
  const auto& p = stable_problem(2);
  const McConfig cfg{state.range(0), 5, SamplingMode::DiscreteGrid};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_estimate(p.portfolio, p.coeffs, p.scenario, p.grid, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
