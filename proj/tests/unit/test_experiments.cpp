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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "liftkit/experiments.hpp"
#include "support.hpp"

using namespace liftkit;
using namespace liftkit::testing;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::string phase_csv_with_threads(const PhaseDiagramSpec& spec, const char* threads) {
  setenv("LIFTKIT_THREADS", threads, 1);
  std::ostringstream out;
  write_phase_csv(out, run_phase_diagram(spec));
  unsetenv("LIFTKIT_THREADS");
  return out.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("ensemble kinds", "[experiments]") {
  for (auto kind : {EnsembleKind::stabilizer, EnsembleKind::projected_stabilizer, EnsembleKind::mub, EnsembleKind::haar})
    CHECK(parse_ensemble_kind(to_string(kind)) == kind);
  CHECK(parse_ensemble_kind("projected") == EnsembleKind::projected_stabilizer);
  CHECK_THROWS_AS(parse_ensemble_kind("sic"), std::invalid_argument);
  CHECK(build_ensemble(EnsembleKind::stabilizer, 4).size() == 60);
  CHECK(build_ensemble(EnsembleKind::mub, 5).size() == 30);
  CHECK(build_ensemble(EnsembleKind::haar, 3, 1, 17).size() == 17);
  CHECK_THROWS_AS(build_ensemble(EnsembleKind::stabilizer, 6), std::invalid_argument);
  CHECK_THROWS_AS(build_ensemble(EnsembleKind::mub, 6), std::invalid_argument);
}

TEST_CASE("parallel_for", "[experiments]") {
  setenv("LIFTKIT_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("LIFTKIT_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("phase diagram in d = 2", "[experiments]") {
  PhaseDiagramSpec spec;
  spec.d_range = {2};
  spec.m_range = {1, 6};
  spec.ensemble_kind = EnsembleKind::stabilizer;
  spec.seed = 5;
  const PhaseDiagramResult r = run_phase_diagram(spec);
  REQUIRE(r.cells.size() == 2);
  CHECK(r.at(2, 6).trials == 30);
  CHECK(r.at(2, 1).successes <= 1);

  // The lift in d = 2 is identifiable exactly when every one of the three
  // bases was drawn at least once. Replay each trial's draws to count those.
  const DesignEnsemble e = stabilizer_states(1);
  std::vector<int> basis_of(e.size(), -1);
  int bases = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (basis_of[i] >= 0) continue;
    for (std::size_t j = i; j < e.size(); ++j)
      if (std::abs(std::norm(e.vectors[i].dot(e.vectors[j])) - 0.5) > 0.25) basis_of[j] = bases;
    ++bases;
  }
  REQUIRE(bases == 3);
  int covered = 0;
  for (std::uint64_t k = 0; k < 30; ++k) {
    Rng rng = Rng::stream(spec.seed, {2, 6, k});
    haar_signal(2, rng);
    std::vector<bool> seen(3, false);
    for (auto i : sample_indices(e, 6, rng)) seen[basis_of[i]] = true;
    covered += seen[0] && seen[1] && seen[2];
  }
  INFO("trials covering all three bases: " << covered);
  CHECK(r.at(2, 6).successes == covered);

  // The complete design used once each always recovers.
  Rng rng(41);
  int complete = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexVec x = haar_signal(2, rng);
    complete += lift_distance(recover(measure(x, e.vectors)).X_hat, x) < 1e-3;
  }
  CHECK(complete == 30);
  CHECK_THAT(r.at(2, 6).frequency, WithinAbs(r.at(2, 6).successes / 30.0, 1e-15));
  CHECK_THROWS_AS(r.at(3, 6), std::out_of_range);

  PhaseDiagramSpec bad = spec;
  bad.trials_per_cell = 0;
  CHECK_THROWS_AS(run_phase_diagram(bad), std::invalid_argument);
  bad = spec;
  bad.m_range = {0};
  CHECK_THROWS_AS(run_phase_diagram(bad), std::invalid_argument);
}

TEST_CASE("phase diagram output is independent of the thread count", "[experiments]") {
  PhaseDiagramSpec spec;
  spec.d_range = {2, 3};
  spec.m_range = {2, 5, 9};
  spec.trials_per_cell = 4;
  spec.seed = 17;
  const std::string one = phase_csv_with_threads(spec, "1");
  const std::string three = phase_csv_with_threads(spec, "3");
  CHECK(one == three);
  CHECK(count_lines(one) == 1 + 6);
  CHECK(one.rfind("d,m,trials,successes,frequency,mean_iterations\n", 0) == 0);
}

TEST_CASE("phase diagram SVG", "[experiments]") {
  PhaseDiagramSpec spec;
  spec.d_range = {2, 3};
  spec.m_range = {1, 4, 8};
  spec.trials_per_cell = 2;
  const PhaseDiagramResult r = run_phase_diagram(spec);
  std::ostringstream out;
  write_phase_svg(out, r);
  const std::string svg = out.str();
  CHECK_THAT(svg, ContainsSubstring("<svg"));
  CHECK_THAT(svg, ContainsSubstring("</svg>"));
  CHECK_THAT(svg, ContainsSubstring("stroke=\"#ff0000\""));
  std::size_t cells = 0;
  for (std::size_t pos = svg.find("width=\"12\""); pos != std::string::npos; pos = svg.find("width=\"12\"", pos + 1))
    ++cells;
  CHECK(cells == 6);
}

TEST_CASE("converse experiment", "[experiments]") {
  const ConverseReport r = run_converse(3, {1.0, 2.0}, 20000, 7);
  CHECK(r.overlaps_equal);
  CHECK_THAT(r.p, WithinAbs(1.0 / 6.0, 1e-15));
  for (const auto& row : r.rows) {
    INFO("m=" << row.m << " freq=" << row.frequency << " predicted=" << row.predicted);
    CHECK_THAT(row.predicted, WithinAbs(std::pow(5.0 / 6.0, row.m), 1e-14));
    CHECK(row.within_5sigma);
  }
  REQUIRE(r.omega_rows.size() == 2);
  CHECK(r.omega_rows[0].m_min == 6);
  CHECK_THAT(r.omega_rows[0].bound, WithinAbs(3.0, 1e-15));
  CHECK(r.omega_rows[0].bound_ok);
  CHECK(r.omega_rows[1].bound_ok);
  for (int d : {5, 7}) CHECK(run_converse(d, {1.0}, 1000, 1).overlaps_equal);
  CHECK_THROWS_AS(run_converse(4, {1.0}, 10, 1), std::invalid_argument);

  std::ostringstream out;
  write_converse_csv(out, r);
  CHECK(count_lines(out.str()) == 2 + static_cast<int>(r.rows.size() + r.omega_rows.size()));
}

TEST_CASE("moment experiment", "[experiments]") {
  const MomentReport r = run_moments(8, EnsembleKind::stabilizer, 1.0 / 3.0, 3, 20000, 3);
  CHECK(r.mean_ok);
  CHECK(r.moments_ok);
  CHECK(r.tail_ok);
  REQUIRE(r.moments.size() == 3);
  std::ostringstream out;
  write_moments_csv(out, r);
  CHECK(count_lines(out.str()) == 4);
  CHECK(out.str().rfind("k,exact_moment,moment_bound,tail_frequency,tail_bound\n", 0) == 0);
}

TEST_CASE("certificate suite", "[experiments]") {
  GolfingParams p;
  const CertificateSuiteReport r = run_certificate_suite(4, EnsembleKind::stabilizer, p, 3, 11);
  REQUIRE(r.trials.size() == 3);
  CHECK(r.params.r == 4);
  long long legs = 0;
  for (const auto& t : r.trials) {
    legs += t.legs_used;
    CHECK(t.contraction_ok);
    CHECK(t.span_residual <= 1e-8);
    CHECK(t.m_total == t.legs_used * r.params.m_per_leg);
    if (t.guarantee) {
      CHECK(t.recovery_converged);
      CHECK(t.phase_distance <= 1e-5);
    }
  }
  CHECK(legs == r.legs_total);
  CHECK(r.leg_success_rate <= 1.0);
  std::ostringstream out;
  write_certificate_csv(out, r);
  CHECK(count_lines(out.str()) == 4);
  CHECK_THROWS_AS(run_certificate_suite(3, EnsembleKind::mub, p, 1, 1), std::invalid_argument);
}

TEST_CASE("phase diagram success grows with m", "[experiments]") {
  PhaseDiagramSpec spec;
  spec.d_range = {4};
  spec.m_range = {4, 6, 8, 10, 24, 26, 28, 30};
  spec.trials_per_cell = 10;
  spec.ensemble_kind = EnsembleKind::stabilizer;
  spec.seed = 99;
  const PhaseDiagramResult r = run_phase_diagram(spec);
  double low = 0.0, high = 0.0;
  for (int m : {4, 6}) low += r.at(4, m).frequency / 2.0;
  for (int m : {28, 30}) high += r.at(4, m).frequency / 2.0;
  CHECK(high >= low);
  for (const auto& c : r.cells) CHECK(c.frequency == static_cast<double>(c.successes) / c.trials);
}
