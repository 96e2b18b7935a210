// Copyright 2026 The liftkit Authors
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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace liftkit {

// Versioned random stream used by every stochastic routine.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Uniform doubles take the top 53 bits of one draw; normals use the Box-Muller
// transform on two uniforms. Neither depends on the standard
// library's distribution classes, so streams are reproducible across
// toolchains and can be re-implemented in other languages.
//
// Stream derivation: Rng::stream(base, {k0, k1, ...}) folds each key into the
// base seed with SplitMix64 and seeds the engine with the result. Experiments
// derive one stream per (base seed, d, m, trial) so trial outcomes do not
// depend on scheduling order.
class Rng {
 public:
  static constexpr const char* kVersion = "liftkit-rng/1 mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t base, std::initializer_list<std::uint64_t> keys);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform();

  double normal();

  // Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal();

  std::uint64_t index_below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace liftkit
