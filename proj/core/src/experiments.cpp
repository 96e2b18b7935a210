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

#include "liftkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace liftkit {

EnsembleKind parse_ensemble_kind(const std::string& name) {
  if (name == "stabilizer") return EnsembleKind::stabilizer;
  if (name == "projected_stabilizer" || name == "projected") return EnsembleKind::projected_stabilizer;
  if (name == "mub") return EnsembleKind::mub;
  if (name == "haar") return EnsembleKind::haar;
  throw std::invalid_argument("unknown ensemble '" + name +
                              "' (expected stabilizer, projected_stabilizer, mub or haar)");
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::stabilizer: return "stabilizer";
    case EnsembleKind::projected_stabilizer: return "projected_stabilizer";
    case EnsembleKind::mub: return "mub";
    case EnsembleKind::haar: return "haar";
  }
  return "unknown";
}

DesignEnsemble build_ensemble(EnsembleKind kind, int d, std::uint64_t seed, int haar_size) {
  switch (kind) {
    case EnsembleKind::stabilizer: {
      int n = 0;
      while ((1 << n) < d) ++n;
      if ((1 << n) != d) throw std::invalid_argument("stabilizer ensemble needs d to be a power of two");
      return stabilizer_states(n);
    }
    case EnsembleKind::projected_stabilizer: return projected_stabilizer_design(d);
    case EnsembleKind::mub: return mub_maximal(d);
    case EnsembleKind::haar: return haar_ensemble(d, haar_size, seed);
  }
  throw std::invalid_argument("unknown ensemble kind");
}

int worker_count() {
  if (const char* env = std::getenv("LIFTKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ComplexVec haar_signal(int d, Rng& rng) {
  ComplexVec x(d);
  for (int j = 0; j < d; ++j) x(j) = rng.complex_normal();
  return x / x.norm();
}

const PhaseCell& PhaseDiagramResult::at(int d, int m) const {
  for (const auto& c : cells)
    if (c.d == d && c.m == m) return c;
  throw std::out_of_range("phase diagram has no cell d=" + std::to_string(d) + " m=" + std::to_string(m));
}

PhaseDiagramResult run_phase_diagram(const PhaseDiagramSpec& spec) {
  if (spec.trials_per_cell < 1) throw std::invalid_argument("phase diagram: trials_per_cell must be >= 1");
  if (!(spec.success_threshold > 0.0)) throw std::invalid_argument("phase diagram: threshold must be positive");
  for (int m : spec.m_range)
    if (m < 1) throw std::invalid_argument("phase diagram: m values must be >= 1");
  validate(spec.solver);

  std::vector<DesignEnsemble> ensembles;
  ensembles.reserve(spec.d_range.size());
  for (int d : spec.d_range)
    ensembles.push_back(build_ensemble(spec.ensemble_kind, d, splitmix64(spec.seed ^ static_cast<std::uint64_t>(d))));

  const std::size_t nd = spec.d_range.size();
  const std::size_t nm = spec.m_range.size();
  const auto trials = static_cast<std::size_t>(spec.trials_per_cell);
  std::vector<char> success(nd * nm * trials, 0);
  std::vector<int> iterations(nd * nm * trials, 0);

  parallel_for(nd * nm * trials, [&](std::size_t task) {
    const std::size_t trial = task % trials;
    const std::size_t cell = task / trials;
    const std::size_t di = cell / nm;
    const std::size_t mi = cell % nm;
    const int d = spec.d_range[di];
    const int m = spec.m_range[mi];
    Rng rng = Rng::stream(spec.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m),
                                      static_cast<std::uint64_t>(trial)});
    const ComplexVec x = haar_signal(d, rng);
    auto vectors = sample_vectors(ensembles[di], m, rng);
    const MeasurementRecord rec = measure(x, std::move(vectors));
    SolverConfig cfg = spec.solver;
    cfg.seed = rng.next_u64();
    const SolverResult res = recover(rec, cfg);
    success[task] = lift_distance(res.X_hat, x) < spec.success_threshold;
    iterations[task] = res.iterations;
  });

  PhaseDiagramResult out;
  out.spec = spec;
  for (std::size_t di = 0; di < nd; ++di)
    for (std::size_t mi = 0; mi < nm; ++mi) {
      PhaseCell c;
      c.d = spec.d_range[di];
      c.m = spec.m_range[mi];
      c.trials = spec.trials_per_cell;
      double iters = 0.0;
      for (std::size_t k = 0; k < trials; ++k) {
        const std::size_t task = (di * nm + mi) * trials + k;
        c.successes += success[task];
        iters += iterations[task];
      }
      c.frequency = static_cast<double>(c.successes) / static_cast<double>(c.trials);
      c.mean_iterations = iters / static_cast<double>(c.trials);
      out.cells.push_back(c);
    }
  return out;
}

void write_phase_csv(std::ostream& out, const PhaseDiagramResult& r) {
  out << "d,m,trials,successes,frequency,mean_iterations\n";
  out << std::setprecision(17);
  for (const auto& c : r.cells)
    out << c.d << ',' << c.m << ',' << c.trials << ',' << c.successes << ',' << c.frequency << ','
        << c.mean_iterations << '\n';
}

void write_phase_svg(std::ostream& out, const PhaseDiagramResult& r) {
  constexpr int kCell = 12;
  constexpr int kLeft = 44;
  constexpr int kTop = 10;
  constexpr int kBottom = 34;
  std::vector<int> ds = r.spec.d_range;
  std::vector<int> ms = r.spec.m_range;
  std::sort(ds.begin(), ds.end());
  std::sort(ms.begin(), ms.end());
  const int width = kLeft + static_cast<int>(ms.size()) * kCell + 10;
  const int height = kTop + static_cast<int>(ds.size()) * kCell + kBottom;
  // Largest d on the top row, so d grows upwards.
  const auto row_of = [&](std::size_t di) { return static_cast<int>(ds.size() - 1 - di); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t di = 0; di < ds.size(); ++di)
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
      const PhaseCell& c = r.at(ds[di], ms[mi]);
      const int g = static_cast<int>(std::lround(255.0 * std::clamp(c.frequency, 0.0, 1.0)));
      out << "<rect x=\"" << kLeft + static_cast<int>(mi) * kCell << "\" y=\"" << kTop + row_of(di) * kCell
          << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\"rgb(" << g << ',' << g << ','
          << g << ")\"/>\n";
    }

  // m = 4d - 4, placed by linear interpolation along the (sorted) m axis.
  const auto column_of = [&](double m) {
    if (ms.size() == 1) return 0.0;
    if (m <= ms.front()) return 0.0;
    if (m >= ms.back()) return static_cast<double>(ms.size() - 1);
    std::size_t k = 1;
    while (ms[k] < m) ++k;
    return static_cast<double>(k - 1) + (m - ms[k - 1]) / static_cast<double>(ms[k] - ms[k - 1]);
  };
  out << std::fixed << std::setprecision(2);
  if (!ms.empty() && !ds.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#ff0000\" stroke-width=\"2\" points=\"";
    for (std::size_t di = 0; di < ds.size(); ++di) {
      const double xpix = kLeft + (column_of(4.0 * ds[di] - 4.0) + 0.5) * kCell;
      const double ypix = kTop + (row_of(di) + 0.5) * kCell;
      out << (di ? " " : "") << xpix << ',' << ypix;
    }
    out << "\"/>\n";
  }
  out << std::defaultfloat;
  out << "<text x=\"4\" y=\"" << kTop + 10 << "\" font-family=\"sans-serif\" font-size=\"10\">d="
      << (ds.empty() ? 0 : ds.back()) << "</text>\n";
  out << "<text x=\"4\" y=\"" << kTop + static_cast<int>(ds.size()) * kCell
      << "\" font-family=\"sans-serif\" font-size=\"10\">d=" << (ds.empty() ? 0 : ds.front()) << "</text>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"10\">m=" << (ms.empty() ? 0 : ms.front()) << "</text>\n";
  out << "<text x=\"" << width - 10 << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">m=" << (ms.empty() ? 0 : ms.back())
      << "</text>\n";
  out << "</svg>\n";
}

ConverseReport run_converse(int d, const std::vector<double>& omegas, long long trials, std::uint64_t seed,
                            std::vector<int> m_values) {
  if (!is_prime(d)) throw std::invalid_argument("converse: d must be prime, got " + std::to_string(d));
  if (trials < 1) throw std::invalid_argument("converse: trials must be >= 1");
  const DesignEnsemble e = mub_maximal(d);
  const ComplexVec& x = e.vectors[0];
  const ComplexVec& z = e.vectors[1];

  ConverseReport r;
  r.d = d;
  r.p = 2.0 / (static_cast<double>(d + 1) * d);
  std::vector<char> distinguishes(e.size());
  r.overlaps_equal = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double ox = std::norm(e.vectors[i].dot(x));
    const double oz = std::norm(e.vectors[i].dot(z));
    distinguishes[i] = std::abs(ox - oz) > 1e-12;
    if (i >= static_cast<std::size_t>(d) &&
        (std::abs(ox - 1.0 / d) > 1e-12 || std::abs(oz - 1.0 / d) > 1e-12))
      r.overlaps_equal = false;
  }

  const double log_keep = -std::log1p(-r.p);
  for (double omega : omegas) {
    ConverseOmegaRow row;
    row.omega = omega;
    row.m_min = static_cast<int>(std::ceil(omega / log_keep - 1e-12));
    row.bound = omega * d * (d + 1) / 4.0;
    row.failure_at_m_min = std::pow(1.0 - r.p, row.m_min);
    row.bound_ok = row.m_min >= row.bound && row.failure_at_m_min <= std::exp(-omega) * (1.0 + 1e-12);
    r.omega_rows.push_back(row);
  }

  if (m_values.empty()) {
    m_values = {1, d, (d * (d + 1) + 3) / 4, d * (d + 1) / 2, d * (d + 1)};
    for (const auto& row : r.omega_rows) m_values.push_back(row.m_min);
    std::sort(m_values.begin(), m_values.end());
    m_values.erase(std::unique(m_values.begin(), m_values.end()), m_values.end());
  }

  for (int m : m_values) {
    if (m < 1) throw std::invalid_argument("converse: m must be >= 1");
    ConverseRow row;
    row.m = m;
    row.trials = trials;
    for (long long k = 0; k < trials; ++k) {
      Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m),
                                   static_cast<std::uint64_t>(k)});
      bool hidden = true;
      for (auto idx : sample_indices(e, m, rng)) hidden = hidden && !distinguishes[idx];
      row.events += hidden;
    }
    const double n = static_cast<double>(trials);
    row.frequency = static_cast<double>(row.events) / n;
    row.predicted = std::pow(1.0 - r.p, m);
    row.sigma = std::sqrt(row.frequency * (1.0 - row.frequency) / n);
    row.within_5sigma = std::abs(row.frequency - row.predicted) <= 5.0 * row.sigma + 1e-15;
    r.rows.push_back(row);
  }
  return r;
}

void write_converse_csv(std::ostream& out, const ConverseReport& r) {
  out << std::setprecision(17);
  out << "d,m,trials,events,frequency,predicted,sigma,within_5sigma\n";
  for (const auto& row : r.rows)
    out << r.d << ',' << row.m << ',' << row.trials << ',' << row.events << ',' << row.frequency << ','
        << row.predicted << ',' << row.sigma << ',' << (row.within_5sigma ? 1 : 0) << '\n';
  out << "d,omega,m_min,bound,failure_at_m_min,bound_ok\n";
  for (const auto& row : r.omega_rows)
    out << r.d << ',' << row.omega << ',' << row.m_min << ',' << row.bound << ',' << row.failure_at_m_min
        << ',' << (row.bound_ok ? 1 : 0) << '\n';
}

MomentReport run_moments(int d, EnsembleKind kind, double gamma, int t, long long samples, std::uint64_t seed) {
  const DesignEnsemble e = build_ensemble(kind, d, splitmix64(seed));
  Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(d)});
  const ComplexVec x = haar_signal(d, rng);
  return moment_tail_experiment(e, x, t, gamma, samples, rng.next_u64());
}

void write_moments_csv(std::ostream& out, const MomentReport& r) {
  out << std::setprecision(17);
  out << "k,exact_moment,moment_bound,tail_frequency,tail_bound\n";
  for (const auto& row : r.moments)
    out << row.k << ',' << row.exact << ',' << row.bound << ',' << r.tail_frequency << ',' << r.tail_bound
        << '\n';
}

CertificateSuiteReport run_certificate_suite(int d, EnsembleKind kind, const GolfingParams& params, int trials,
                                             std::uint64_t seed, const SolverConfig& solver) {
  if (trials < 1) throw std::invalid_argument("certificate suite: trials must be >= 1");
  const DesignEnsemble e = build_ensemble(kind, d, splitmix64(seed));
  CertificateSuiteReport r;
  r.d = d;
  r.params = resolve_params(params, d);
  GolfingParams base = r.params;
  if (!base.override_checks) {
    const DesignReport dr = verify_design(e, base.t_order, 1e-8);
    if (!dr.passed)
      throw std::invalid_argument("certificate suite: ensemble '" + e.label + "' is not a " +
                                  std::to_string(base.t_order) + "-design");
    base.assume_verified = true;
  }

  r.trials.resize(trials);
  std::vector<long long> legs(trials, 0), good_legs(trials, 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
    Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k)});
    const ComplexVec x = haar_signal(d, rng);
    GolfingParams p = base;
    p.seed = rng.next_u64();
    const GolfingReport g = golfing_certificate(x, e, p);

    CertificateTrial& t = r.trials[k];
    t.trial = static_cast<int>(k);
    t.success = g.success;
    t.legs_used = g.certificate.legs_used;
    t.successful_legs = static_cast<int>(g.q_sequence.size()) - 1;
    t.tangent_error = g.certificate.tangent_error;
    t.complement_norm = g.certificate.complement_norm;
    t.is_valid = g.certificate.is_valid;
    t.contraction_ok = true;
    for (std::size_t i = 1; i < g.q_norms.size(); ++i)
      t.contraction_ok = t.contraction_ok && g.q_norms[i] <= 0.5 * g.q_norms[i - 1] * (1.0 + 1e-12);
    t.m_total = static_cast<int>(g.vectors.size());
    t.lambda_min = injectivity_spectrum(x, g.vectors).lambda_min;
    t.span_residual = span_residual(g.certificate.Y, g.vectors);
    t.guarantee = t.lambda_min > -0.5 && t.is_valid && t.span_residual <= 1e-8;

    SolverConfig cfg = solver;
    cfg.seed = rng.next_u64();
    const SolverResult res = recover(measure(x, g.vectors), cfg);
    t.recovery_converged = res.converged;
    t.phase_distance = phase_distance(extract_signal(res).x_hat, x);

    legs[k] = static_cast<long long>(g.legs.size());
    for (const auto& leg : g.legs) good_legs[k] += (leg.golf1 && leg.golf2);
  });

  int successes = 0;
  for (int k = 0; k < trials; ++k) {
    r.legs_total += legs[k];
    r.legs_successful += good_legs[k];
    successes += r.trials[k].success;
  }
  r.success_rate = static_cast<double>(successes) / trials;
  r.leg_success_rate = r.legs_total ? static_cast<double>(r.legs_successful) / r.legs_total : 0.0;
  return r;
}

void write_certificate_csv(std::ostream& out, const CertificateSuiteReport& r) {
  out << std::setprecision(17);
  out << "trial,d,r,success,legs_used,successful_legs,tangent_error,complement_norm,is_valid,contraction_ok,"
         "lambda_min,span_residual,guarantee,recovery_converged,phase_distance,m_total\n";
  for (const auto& t : r.trials)
    out << t.trial << ',' << r.d << ',' << r.params.r << ',' << t.success << ',' << t.legs_used << ','
        << t.successful_legs << ',' << t.tangent_error << ',' << t.complement_norm << ',' << t.is_valid << ','
        << t.contraction_ok << ',' << t.lambda_min << ',' << t.span_residual << ',' << t.guarantee << ','
        << t.recovery_converged << ',' << t.phase_distance << ',' << t.m_total << '\n';
}

}  // namespace liftkit
