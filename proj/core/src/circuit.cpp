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

#include "qpv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qpv/error.hpp"
#include "qpv/rng.hpp"

namespace qpv {
namespace {

constexpr double kOracleTolerance = 1e-12;

void rotate_pair(Amplitude& zero, Amplitude& one, double c, double s) {
  const Amplitude a0 = zero;
  const Amplitude a1 = one;
  zero = c * a0 - s * a1;
  one = s * a0 + c * a1;
}

int log2_exact(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits),
      amplitudes_(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0}) {
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    throw Error(ErrorKind::LengthMismatch,
                "expected 2^" + std::to_string(num_qubits) + " amplitudes");
  }
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return std::sqrt(total);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return out;
}

double StateVector::max_imag() const {
  double worst = 0.0;
  for (const auto& a : amplitudes_) worst = std::max(worst, std::abs(a.imag()));
  return worst;
}

void apply_gate(StateVector& state, const RyGate& gate) {
  const std::size_t bit = std::size_t{1} << gate.target;
  const double c = std::cos(0.5 * gate.angle);
  const double s = std::sin(0.5 * gate.angle);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if ((i & bit) != 0) continue;
    if ((i & gate.control_mask) != gate.control_values) continue;
    rotate_pair(state[i], state[i | bit], c, s);
  }
}

GateDecomposition GateDecomposition::shifted(int offset) const {
  GateDecomposition out{num_qubits + offset, gates};
  for (auto& g : out.gates) {
    g.target += offset;
    g.control_mask <<= offset;
    g.control_values <<= offset;
  }
  return out;
}

GateDecomposition GateDecomposition::adjoint() const {
  GateDecomposition out{num_qubits, {gates.rbegin(), gates.rend()}};
  for (auto& g : out.gates) g.angle = -g.angle;
  return out;
}

void GateDecomposition::apply(StateVector& state) const {
  for (const auto& g : gates) apply_gate(state, g);
}

GateDecomposition grover_rudolph_decompose(const DiscreteDistribution& dist) {
  const std::size_t n = dist.probs.size();
  const int q = log2_exact(n);
  if (n == 0 || (std::size_t{1} << q) != n) {
    throw Error(ErrorKind::InvalidGrid, "distribution size must be 2^q");
  }

  GateDecomposition out;
  out.num_qubits = q;
  for (int level = 0; level < q; ++level) {
    const int target = q - 1 - level;
    const std::size_t block = std::size_t{1} << (q - level);
    const std::size_t half = block / 2;
    const std::uint64_t mask = ((std::uint64_t{1} << level) - 1) << (q - level);
    for (std::size_t prefix = 0; prefix < (std::size_t{1} << level); ++prefix) {
      const std::size_t start = prefix * block;
      double left = 0.0;
      double total = 0.0;
      for (std::size_t k = 0; k < block; ++k) {
        total += dist.probs[start + k];
        if (k < half) left += dist.probs[start + k];
      }
      double angle = 0.0;
      if (total > 0.0) {
        const double ratio = std::clamp(left / total, 0.0, 1.0);
        angle = 2.0 * std::acos(std::sqrt(ratio));
      }
      out.gates.push_back(RyGate{target, angle, mask,
                                 static_cast<std::uint64_t>(start)});
    }
  }
  return out;
}

GateDecomposition joint_loading_circuit(const JointGrid& grid) {
  GateDecomposition out = grover_rudolph_decompose(grid.delta_e_dist());
  const auto r = grover_rudolph_decompose(grid.delta_r_dist()).shifted(grid.bits_e());
  out.num_qubits = grid.num_qubits();
  out.gates.insert(out.gates.end(), r.gates.begin(), r.gates.end());
  return out;
}

std::string to_string(EncodingMode mode) {
  return mode == EncodingMode::Exact ? "exact" : "linear";
}

EncodingMode parse_encoding_mode(const std::string& text) {
  if (text == "exact") return EncodingMode::Exact;
  if (text == "linear" || text == "linear_rotation") {
    return EncodingMode::LinearRotation;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown encoding mode '" + text + "'");
}

void PayoffEncoding::validate() const {
  if (mode == EncodingMode::LinearRotation &&
      !(scaling > 0.0 && scaling <= 0.5)) {
    throw Error(ErrorKind::DomainError, "scaling c must lie in (0, 0.5]");
  }
  for (double f : f_values) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw Error(ErrorKind::DomainError, "payoff values must lie in [0, 1]");
    }
  }
}

double PayoffEncoding::half_angle(std::size_t i) const {
  const double f = f_values[i];
  if (mode == EncodingMode::Exact) return std::asin(std::sqrt(f));
  return scaling * (f - 0.5) + 0.25 * std::numbers::pi;
}

double PayoffEncoding::ancilla_one_probability(std::size_t i) const {
  const double s = std::sin(half_angle(i));
  return s * s;
}

std::size_t PayoffEncoding::gate_count() const {
  if (mode == EncodingMode::Exact) return f_values.size();
  return static_cast<std::size_t>(log2_exact(f_values.size())) + 1;
}

StateVector prepare_p(const JointGrid& grid) {
  StateVector state(grid.num_qubits() + 1);
  state[0] = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    state[StateVector::index(i, 0)] = std::sqrt(grid.probs()[i]);
  }
  return state;
}

namespace {

void apply_w_signed(StateVector& state, const PayoffEncoding& enc,
                    double sign) {
  if (state.size() != 2 * enc.f_values.size()) {
    throw Error(ErrorKind::ModeMismatch,
                std::to_string(enc.f_values.size()) +
                    " payoff values for a register of " +
                    std::to_string(state.size() / 2) + " states");
  }
  for (std::size_t i = 0; i < enc.f_values.size(); ++i) {
    const double half = sign * enc.half_angle(i);
    rotate_pair(state[StateVector::index(i, 0)], state[StateVector::index(i, 1)],
                std::cos(half), std::sin(half));
  }
}

}  // namespace

void apply_w(StateVector& state, const PayoffEncoding& enc) {
  apply_w_signed(state, enc, 1.0);
}

void apply_w_adjoint(StateVector& state, const PayoffEncoding& enc) {
  apply_w_signed(state, enc, -1.0);
}

double ancilla_one_probability(const StateVector& state) {
  double total = 0.0;
  for (std::size_t i = 1; i < state.size(); i += 2) total += std::norm(state[i]);
  return total;
}

AmplitudeOracle::AmplitudeOracle(const JointGrid& grid, PayoffEncoding encoding)
    : num_grid_qubits_(grid.num_qubits()),
      encoding_(std::move(encoding)),
      loading_(joint_loading_circuit(grid)) {
  encoding_.validate();
  if (encoding_.f_values.size() != grid.size()) {
    throw Error(ErrorKind::ModeMismatch,
                "payoff has " + std::to_string(encoding_.f_values.size()) +
                    " values for a grid of " + std::to_string(grid.size()));
  }
  shifted_loading_ = loading_.shifted(1);
  shifted_loading_adjoint_ = shifted_loading_.adjoint();

  const StateVector direct = prepare_p(grid);
  direct_loading_.assign(direct.amplitudes().begin(), direct.amplitudes().end());

  StateVector via_gates(num_qubits());
  shifted_loading_.apply(via_gates);
  for (std::size_t i = 0; i < via_gates.size(); ++i) {
    if (std::abs(via_gates[i] - direct_loading_[i]) > kOracleTolerance) {
      throw Error(ErrorKind::DomainError,
                  "loading circuit does not reproduce sqrt(p) at index " +
                      std::to_string(i));
    }
  }
  if (prepare().max_imag() > kOracleTolerance) {
    throw Error(ErrorKind::DomainError, "A|0> is not real");
  }
}

StateVector AmplitudeOracle::prepare() const {
  StateVector state(num_qubits(), direct_loading_);
  apply_w(state, encoding_);
  return state;
}

void AmplitudeOracle::apply(StateVector& state) const {
  shifted_loading_.apply(state);
  apply_w(state, encoding_);
}

void AmplitudeOracle::apply_adjoint(StateVector& state) const {
  apply_w_adjoint(state, encoding_);
  shifted_loading_adjoint_.apply(state);
}

std::size_t AmplitudeOracle::gate_count() const {
  return loading_gate_count() + encoding_.gate_count();
}

std::size_t AmplitudeOracle::grover_gate_count() const {
  return 2 * gate_count() + 2;
}

void apply_s_chi(StateVector& state) {
  for (std::size_t i = 1; i < state.size(); i += 2) state[i] = -state[i];
}

void apply_s_zero(StateVector& state) { state[0] = -state[0]; }

void apply_q(StateVector& state, const AmplitudeOracle& oracle) {
  apply_s_chi(state);
  oracle.apply_adjoint(state);
  apply_s_zero(state);
  oracle.apply(state);
}

StateVector amplified_state(const AmplitudeOracle& oracle, int grover_power) {
  StateVector state = oracle.prepare();
  for (int k = 0; k < grover_power; ++k) apply_q(state, oracle);
  return state;
}

ShotSample sample_distribution(std::span<const double> probs,
                               std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorKind::DomainError, "need at least one shot");
  std::vector<double> cdf(probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    running += std::max(probs[i], 0.0);
    cdf[i] = running;
  }
  if (!(running > 0.0)) {
    throw Error(ErrorKind::DomainError, "distribution has no mass");
  }

  ShotSample out;
  out.shots = shots;
  out.histogram.assign(probs.size(), 0);
  Rng rng(seed);
  for (std::int64_t s = 0; s < shots; ++s) ++out.histogram[rng.categorical(cdf)];
  for (std::size_t i = 1; i < out.histogram.size(); i += 2) {
    out.good += static_cast<std::int64_t>(out.histogram[i]);
  }
  return out;
}

ShotSample sample_shots(const StateVector& state, std::int64_t shots,
                        std::uint64_t seed) {
  const auto probs = state.probabilities();
  return sample_distribution(probs, shots, seed);
}

double compound_depolarizing(double rate_per_gate, std::size_t gates) {
  if (!(rate_per_gate >= 0.0 && rate_per_gate <= 1.0)) {
    throw Error(ErrorKind::DomainError, "noise rate must lie in [0, 1]");
  }
  return 1.0 - std::pow(1.0 - rate_per_gate, static_cast<double>(gates));
}

std::vector<double> depolarize(std::span<const double> probs,
                               double lambda_total) {
  if (!(lambda_total >= 0.0 && lambda_total <= 1.0)) {
    throw Error(ErrorKind::DomainError, "lambda must lie in [0, 1]");
  }
  const double uniform = 1.0 / static_cast<double>(probs.size());
  std::vector<double> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = (1.0 - lambda_total) * probs[i] + lambda_total * uniform;
  }
  return out;
}

}  // namespace qpv
