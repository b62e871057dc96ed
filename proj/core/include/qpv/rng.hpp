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
#include <random>
#include <span>

namespace qpv {

/// splitmix64 finaliser; used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic generator. The engine is mt19937_64, whose output sequence
/// is fixed by the standard; the transforms below are written out so that
/// draws do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix_seed(seed, stream)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, cached second variate).
  double normal();
  /// Index drawn from the cumulative weights `cdf` (last entry is the total).
  std::size_t categorical(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qpv
