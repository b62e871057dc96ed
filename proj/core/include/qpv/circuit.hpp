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
 * Dense statevector simulation of the amplitude-estimation circuits:
 * loading operator P, payoff rotation W, A = W (P x 1), the reflections
 * S_chi and S_0, the Grover operator Q = A S_0 A^dagger S_chi, readout and
 * shot sampling.
 *
 * Layout: basis index = (grid_index << 1) | ancilla, i.e. the ancilla is the
 * least significant bit and grid qubit k sits at bit k + 1.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qpv/grid.hpp"

namespace qpv {

using Amplitude = std::complex<double>;

class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits);
  StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }

  Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }

  double norm() const;
  std::vector<double> probabilities() const;
  double max_imag() const;

  static constexpr std::size_t index(std::size_t grid_index, int ancilla) {
    return (grid_index << 1) | static_cast<std::size_t>(ancilla & 1);
  }

 private:
  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// Y rotation exp(-i angle Y / 2) on `target`, applied only on basis states
/// whose bits under `control_mask` equal `control_values`.
struct RyGate {
  int target = 0;
  double angle = 0.0;
  std::uint64_t control_mask = 0;
  std::uint64_t control_values = 0;
};

void apply_gate(StateVector& state, const RyGate& gate);

struct GateDecomposition {
  int num_qubits = 0;
  std::vector<RyGate> gates;

  std::size_t gate_count() const { return gates.size(); }
  /// Same circuit acting on qubits [offset, offset + num_qubits).
  GateDecomposition shifted(int offset) const;
  GateDecomposition adjoint() const;
  void apply(StateVector& state) const;
};

/// Binary-tree state preparation: the most significant qubit is split first
/// and every node rotates by 2 acos(sqrt(P(left half | prefix))). Empty
/// subtrees get angle 0. Qubit k of the result is bit k of the point index.
GateDecomposition grover_rudolph_decompose(const DiscreteDistribution& dist);

/// Loading circuit for a joint grid on grid qubits only (no ancilla); the
/// delta_E register on the low bits, delta_r above it.
GateDecomposition joint_loading_circuit(const JointGrid& grid);

enum class EncodingMode { Exact, LinearRotation };

std::string to_string(EncodingMode mode);
/// Accepts "exact" and "linear" / "linear_rotation".
EncodingMode parse_encoding_mode(const std::string& text);

/// How f(i) is written into the ancilla.
///   Exact:          P(anc = 1 | i) = f(i)
///   LinearRotation: P(anc = 1 | i) = sin^2(c (f(i) - 1/2) + pi/4)
struct PayoffEncoding {
  EncodingMode mode = EncodingMode::Exact;
  double scaling = 0.25;
  std::vector<double> f_values;

  void validate() const;
  /// Half rotation angle on the ancilla for grid state i.
  double half_angle(std::size_t i) const;
  double ancilla_one_probability(std::size_t i) const;
  /// Rotations needed for W on hardware: one multi-controlled Ry per state
  /// in exact mode; 1 + n controlled Ry for the affine linear-rotation map.
  std::size_t gate_count() const;
};

/// sqrt(p(i)) on |i>|0> by direct amplitude assignment.
StateVector prepare_p(const JointGrid& grid);

/// Ry(2 half_angle(i)) on the ancilla of each grid branch. Throws
/// ModeMismatch if f_values does not cover the grid register.
void apply_w(StateVector& state, const PayoffEncoding& enc);
void apply_w_adjoint(StateVector& state, const PayoffEncoding& enc);

double ancilla_one_probability(const StateVector& state);

/// The state-preparation operator A = W (P x 1) as a reusable unitary.
class AmplitudeOracle {
 public:
  /// Verifies that the gate-level P reproduces direct assignment and that
  /// A|0> is real, both within 1e-12.
  AmplitudeOracle(const JointGrid& grid, PayoffEncoding encoding);

  int num_qubits() const { return num_grid_qubits_ + 1; }
  int num_grid_qubits() const { return num_grid_qubits_; }
  const PayoffEncoding& encoding() const { return encoding_; }
  const GateDecomposition& loading() const { return loading_; }

  /// A|0>, built from direct assignment.
  StateVector prepare() const;
  void apply(StateVector& state) const;
  void apply_adjoint(StateVector& state) const;

  std::size_t loading_gate_count() const { return loading_.gate_count(); }
  std::size_t gate_count() const;
  /// Gates in one Q: two copies of A plus one gate per reflection.
  std::size_t grover_gate_count() const;

 private:
  int num_grid_qubits_;
  PayoffEncoding encoding_;
  GateDecomposition loading_;
  GateDecomposition shifted_loading_;
  GateDecomposition shifted_loading_adjoint_;
  std::vector<Amplitude> direct_loading_;
};

/// Negates every amplitude with ancilla = 1.
void apply_s_chi(StateVector& state);
/// Negates the all-zeros basis state (grid register and ancilla).
void apply_s_zero(StateVector& state);
/// Q = A S_0 A^dagger S_chi, applied right to left.
void apply_q(StateVector& state, const AmplitudeOracle& oracle);
/// Q^m A |0>.
StateVector amplified_state(const AmplitudeOracle& oracle, int grover_power);

struct ShotSample {
  std::int64_t shots = 0;
  std::int64_t good = 0;  ///< ancilla = 1 outcomes
  std::vector<std::uint64_t> histogram;
};

/// n_s projective measurements of every qubit, driven by Rng(seed).
ShotSample sample_shots(const StateVector& state, std::int64_t shots,
                        std::uint64_t seed);
/// Same, from an explicit outcome distribution over 2^k outcomes.
ShotSample sample_distribution(std::span<const double> probs,
                               std::int64_t shots, std::uint64_t seed);

/// 1 - (1 - rate)^gates.
double compound_depolarizing(double rate_per_gate, std::size_t gates);
/// (1 - lambda) p + lambda / size.
std::vector<double> depolarize(std::span<const double> probs,
                               double lambda_total);

}  // namespace qpv
