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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "liftkit/certificate.hpp"
#include "liftkit/designs.hpp"
#include "liftkit/measurement.hpp"
#include "liftkit/solver.hpp"

namespace liftkit {

enum class EnsembleKind { stabilizer, projected_stabilizer, mub, haar };

EnsembleKind parse_ensemble_kind(const std::string& name);
std::string to_string(EnsembleKind kind);

/// stabilizer needs d = 2^n (n <= 4), projected_stabilizer 2 <= d <= 16,
/// mub a prime d; haar draws `haar_size` vectors from `seed`.
DesignEnsemble build_ensemble(EnsembleKind kind, int d, std::uint64_t seed = 0, int haar_size = 4096);

/// Worker count: LIFTKIT_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. Exceptions are rethrown
/// on the calling thread after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Unit vector with iid complex Gaussian entries, normalized.
ComplexVec haar_signal(int d, Rng& rng);

struct PhaseDiagramSpec {
  std::vector<int> d_range;
  std::vector<int> m_range;
  int trials_per_cell = 30;
  double success_threshold = 1e-3;
  EnsembleKind ensemble_kind = EnsembleKind::projected_stabilizer;
  std::uint64_t seed = 0;
  SolverConfig solver;
};

struct PhaseCell {
  int d = 0;
  int m = 0;
  int trials = 0;
  int successes = 0;
  double frequency = 0.0;
  double mean_iterations = 0.0;
};

struct PhaseDiagramResult {
  PhaseDiagramSpec spec;
  std::vector<PhaseCell> cells;  // d-major, in the order of d_range then m_range

  const PhaseCell& at(int d, int m) const;
};

/// Trial k of cell (d, m) uses Rng::stream(seed, {d, m, k}) for the signal,
/// the sampled vectors and the solver initialization.
PhaseDiagramResult run_phase_diagram(const PhaseDiagramSpec& spec);

void write_phase_csv(std::ostream& out, const PhaseDiagramResult& r);

/// Grayscale heatmap (black 0, white 1), 12 px cells, d on the vertical axis
/// and m on the horizontal axis, with a red polyline at m = 4d - 4.
void write_phase_svg(std::ostream& out, const PhaseDiagramResult& r);

struct ConverseRow {
  int m = 0;
  long long trials = 0;
  long long events = 0;      // indistinguishable draws
  double frequency = 0.0;
  double predicted = 0.0;    // (1 - p)^m
  double sigma = 0.0;        // sample standard error of frequency
  bool within_5sigma = false;
};

struct ConverseOmegaRow {
  double omega = 0.0;
  int m_min = 0;          // smallest m with -m log(1 - p) >= omega
  double bound = 0.0;     // omega d (d + 1) / 4
  double failure_at_m_min = 0.0;  // (1 - p)^{m_min}
  bool bound_ok = false;  // m_min >= bound and failure_at_m_min <= e^{-omega}
};

struct ConverseReport {
  int d = 0;
  double p = 0.0;  // 2 / ((d + 1) d)
  bool overlaps_equal = false;  // every vector outside the basis of x, z has equal overlaps 1/d
  std::vector<ConverseRow> rows;
  std::vector<ConverseOmegaRow> omega_rows;
};

/// x = u_1, z = u_2 from the standard basis of mub_maximal(d). When m_values
/// is empty a default list is used.
ConverseReport run_converse(int d, const std::vector<double>& omegas, long long trials,
                            std::uint64_t seed, std::vector<int> m_values = {});

void write_converse_csv(std::ostream& out, const ConverseReport& r);

/// Wraps moment_tail_experiment with a Haar-random signal drawn from `seed`.
MomentReport run_moments(int d, EnsembleKind kind, double gamma, int t, long long samples,
                         std::uint64_t seed);

void write_moments_csv(std::ostream& out, const MomentReport& r);

struct CertificateTrial {
  int trial = 0;
  bool success = false;
  int legs_used = 0;
  int successful_legs = 0;
  double tangent_error = 0.0;
  double complement_norm = 0.0;
  bool is_valid = false;
  bool contraction_ok = false;  // ||Q_i||_2 <= ||Q_{i-1}||_2 / 2 for every recorded step
  double lambda_min = 0.0;
  double span_residual = 0.0;
  bool guarantee = false;
  bool recovery_converged = false;
  double phase_distance = 0.0;  // between extracted signal and x
  int m_total = 0;
};

struct CertificateSuiteReport {
  int d = 0;
  GolfingParams params;  // resolved
  std::vector<CertificateTrial> trials;
  long long legs_total = 0;
  long long legs_successful = 0;
  double success_rate = 0.0;       // golfing runs reaching r successes
  double leg_success_rate = 0.0;   // per-leg xi frequency
};

CertificateSuiteReport run_certificate_suite(int d, EnsembleKind kind, const GolfingParams& params,
                                             int trials, std::uint64_t seed,
                                             const SolverConfig& solver = {});

void write_certificate_csv(std::ostream& out, const CertificateSuiteReport& r);

}  // namespace liftkit
