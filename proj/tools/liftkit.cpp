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

// liftkit command-line tool.
//
// Exit codes: 0 success, 1 a reported check failed, 2 usage error (bad
// arguments, unreadable input).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftkit/certificate.hpp"
#include "liftkit/designs.hpp"
#include "liftkit/experiments.hpp"
#include "liftkit/measurement.hpp"
#include "liftkit/solver.hpp"

using namespace liftkit;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "4,8,16", "2:10" or "2:32:2".
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::vector<int> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stoi(p, &used));
        if (used != p.size()) throw std::invalid_argument(p);
      } catch (const std::exception&) {
        throw UsageError("not an integer list: '" + text + "'");
      }
    }
    if (parts.size() == 1) {
      out.push_back(parts[0]);
    } else if (parts.size() == 2 || parts.size() == 3) {
      const int step = parts.size() == 3 ? parts[2] : 1;
      if (step <= 0 || parts[1] < parts[0]) throw UsageError("bad range '" + item + "'");
      for (int v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    } else {
      throw UsageError("bad range '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("not a number list: '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

// Writes to `path`, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_signal(std::ostream& out, const ComplexVec& x) {
  out << "j,re,im\n" << std::setprecision(17);
  for (Eigen::Index j = 0; j < x.size(); ++j) out << j << ',' << x(j).real() << ',' << x(j).imag() << '\n';
}

ComplexVec read_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::vector<cplx> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string j, re, im;
    std::getline(ss, j, ',');
    std::getline(ss, re, ',');
    std::getline(ss, im, ',');
    values.emplace_back(std::stod(re), std::stod(im));
  }
  ComplexVec x(static_cast<Eigen::Index>(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j) x(static_cast<Eigen::Index>(j)) = values[j];
  return x;
}

std::string ensemble_help() { return "stabilizer | projected | mub | haar"; }

// Reads `key = value` lines and returns them as long options.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

// Splices config-file options in front of the command-line options so the
// command line wins.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (config.empty()) return args;
  std::size_t insert_at = 1;
  while (insert_at < args.size() && insert_at < 3 && !args[insert_at].empty() && args[insert_at][0] != '-')
    ++insert_at;
  const auto extra = config_arguments(config);
  args.insert(args.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
  return args;
}

nlohmann::json to_json(const CertificateSuiteReport& r) {
  nlohmann::json j;
  j["d"] = r.d;
  j["params"] = {{"b", r.params.b},
                 {"c", r.params.c},
                 {"r", r.params.r},
                 {"l", r.params.l},
                 {"m_per_leg", r.params.m_per_leg},
                 {"gamma", r.params.gamma},
                 {"t_order", r.params.t_order},
                 {"c1", r.params.c1}};
  j["legs_total"] = r.legs_total;
  j["legs_successful"] = r.legs_successful;
  j["success_rate"] = r.success_rate;
  j["leg_success_rate"] = r.leg_success_rate;
  j["trials"] = nlohmann::json::array();
  for (const auto& t : r.trials)
    j["trials"].push_back({{"trial", t.trial},
                           {"success", t.success},
                           {"legs_used", t.legs_used},
                           {"successful_legs", t.successful_legs},
                           {"tangent_error", t.tangent_error},
                           {"complement_norm", t.complement_norm},
                           {"is_valid", t.is_valid},
                           {"contraction_ok", t.contraction_ok},
                           {"lambda_min", t.lambda_min},
                           {"span_residual", t.span_residual},
                           {"guarantee", t.guarantee},
                           {"recovery_converged", t.recovery_converged},
                           {"phase_distance", t.phase_distance},
                           {"m_total", t.m_total}});
  return j;
}

DesignEnsemble ensemble_from(const std::string& design_file, const std::string& kind, int d, std::uint64_t seed,
                             int haar_size) {
  if (!design_file.empty()) return load_design(design_file);
  if (d < 1) throw UsageError("--d is required");
  return build_ensemble(parse_ensemble_kind(kind), d, seed, haar_size);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liftkit: phase retrieval from design-sampled intensity measurements"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.footer(
      "Every verb accepts --config FILE with one `key = value` per line (keys are long option names);\n"
      "command-line options override the file. LIFTKIT_THREADS caps the worker pool.\n"
      "Exit codes: 0 success, 1 a reported check failed, 2 usage error.");

  // Shared option values.
  int d = 0, m = 0, t = 0, trials = 0, haar_size = 4096, max_iters = 5000;
  double gamma = -1.0, tol = 1e-9, threshold = 1e-3, relaxation = 1.0;
  std::uint64_t seed = 0;
  std::string ensemble = "stabilizer", out, in, design_file, signal_out, signal_in, svg, csv;
  std::string d_list, m_list, omega_list = "1,2,3", variant = "feasibility", method = "reflections";
  GolfingParams golf;

  auto* design = app.add_subcommand("design", "Generate or verify a design file");
  design->require_subcommand(1);
  auto* gen = design->add_subcommand("gen", "Write a design file");
  gen->add_option("--ensemble", ensemble, ensemble_help())->capture_default_str();
  gen->add_option("--d", d, "Dimension")->required();
  gen->add_option("--size", haar_size, "Number of vectors for haar")->capture_default_str();
  gen->add_option("--seed", seed, "Seed for haar");
  gen->add_option("--out", out, "Output path (default stdout)");
  gen->footer("File format: line 'LIFTKIT-DESIGN v1', optional '# label: ...', then 'd N t',\n"
              "then N rows 'weight re_0 im_0 ... re_{d-1} im_{d-1}'.");

  auto* verify = design->add_subcommand("verify", "Check the t-design property");
  verify->add_option("--in", in, "Design file (alternative to --ensemble/--d)");
  verify->add_option("--ensemble", ensemble, ensemble_help())->capture_default_str();
  verify->add_option("--d", d, "Dimension");
  verify->add_option("--t", t, "Design order to test (default: claimed order, at least 1)");
  verify->add_option("--tol", tol, "Frame-potential tolerance")->default_val(1e-8);
  verify->add_option("--seed", seed, "Seed for haar");
  verify->add_option("--size", haar_size, "Number of vectors for haar");

  auto* measure_cmd = app.add_subcommand("measure", "Sample design vectors and measure a Haar-random signal");
  measure_cmd->add_option("--ensemble", ensemble, ensemble_help())->capture_default_str();
  measure_cmd->add_option("--design", design_file, "Design file instead of --ensemble");
  measure_cmd->add_option("--d", d, "Dimension");
  measure_cmd->add_option("--m", m, "Number of measurements")->required();
  measure_cmd->add_option("--seed", seed, "Seed for the signal and the draws");
  measure_cmd->add_option("--signal", signal_in, "Signal CSV (j,re,im) instead of a random one");
  measure_cmd->add_option("--signal-out", signal_out, "Write the signal as CSV j,re,im");
  measure_cmd->add_option("--out", out, "Record CSV (default stdout)");
  measure_cmd->footer("Record CSV: 'd,m,seed,label' and its values, then 'i,re_0..re_{d-1},im_0..im_{d-1},y';\n"
                      "row i=0 carries the intensity y_0 with empty vector columns, rows 1..m the measurements.");

  auto* recover_cmd = app.add_subcommand("recover", "Recover the lifted signal from a record");
  recover_cmd->add_option("--in", in, "Record CSV")->required();
  recover_cmd->add_option("--variant", variant, "feasibility | trace_min")->capture_default_str();
  recover_cmd->add_option("--method", method, "reflections | projections")->capture_default_str();
  recover_cmd->add_option("--tol", tol, "Residual tolerance")->capture_default_str();
  recover_cmd->add_option("--max-iters", max_iters, "Iteration cap")->capture_default_str();
  recover_cmd->add_option("--relaxation", relaxation, "Relaxation in (0, 2)")->capture_default_str();
  recover_cmd->add_option("--seed", seed, "Initialization seed");
  recover_cmd->add_option("--signal", signal_in, "True signal CSV; report the phase distance");
  recover_cmd->add_option("--threshold", threshold, "Phase-distance threshold with --signal")->capture_default_str();
  recover_cmd->add_option("--out", out, "Estimate CSV (default stdout)");
  recover_cmd->footer("Estimate CSV: 'j,re,im' rows of the leading eigenvector scaled by sqrt(lambda_1).\n"
                      "Exit 1 when the solver did not converge or the phase distance exceeds --threshold.");

  auto* phase = app.add_subcommand("phasediagram", "Empirical success probability over (d, m)");
  phase->add_option("--d", d_list, "Dimensions: list '4,8' or range 'a:b[:step]'")->required();
  phase->add_option("--m", m_list, "Measurement counts: list or range")->required();
  phase->add_option("--trials", trials, "Trials per cell")->default_val(30);
  phase->add_option("--threshold", threshold, "Success threshold on ||X - xx*||_2")->capture_default_str();
  phase->add_option("--ensemble", ensemble, ensemble_help())->default_val("projected");
  phase->add_option("--seed", seed, "Base seed");
  phase->add_option("--tol", tol, "Solver tolerance")->capture_default_str();
  phase->add_option("--max-iters", max_iters, "Solver iteration cap")->capture_default_str();
  phase->add_option("--out", out, "CSV path (default stdout)");
  phase->add_option("--svg", svg, "Heatmap SVG path");
  phase->footer("CSV: d,m,trials,successes,frequency,mean_iterations (one row per cell, d-major).");

  auto* conv = app.add_subcommand("converse", "Indistinguishability experiment for two basis states");
  conv->add_option("--d", d, "Prime dimension")->required();
  conv->add_option("--omega", omega_list, "Comma-separated omega values")->capture_default_str();
  conv->add_option("--m", m_list, "Measurement counts (default: a standard list)");
  conv->add_option("--trials", trials, "Trials per m")->default_val(10000);
  conv->add_option("--seed", seed, "Base seed");
  conv->add_option("--out", out, "CSV path (default stdout)");
  conv->footer("CSV section 1: d,m,trials,events,frequency,predicted,sigma,within_5sigma\n"
               "CSV section 2: d,omega,m_min,bound,failure_at_m_min,bound_ok\n"
               "Exit 1 when a row misses 5 sigma or a bound check fails.");

  auto* moments = app.add_subcommand("moments", "Overlap moments and tail frequency");
  moments->add_option("--d", d, "Dimension")->required();
  moments->add_option("--ensemble", ensemble, ensemble_help())->capture_default_str();
  moments->add_option("--t", t, "Moment order (default: claimed design order)");
  moments->add_option("--gamma", gamma, "Truncation exponent (default 1 - 2/t, clipped at 0)");
  moments->add_option("--trials", trials, "Monte-Carlo samples")->default_val(100000);
  moments->add_option("--seed", seed, "Seed");
  moments->add_option("--out", out, "CSV path (default stdout)");
  moments->footer("CSV: k,exact_moment,moment_bound,tail_frequency,tail_bound\n"
                  "Exit 1 when the mean, a moment bound or the tail bound fails.");

  auto* certify = app.add_subcommand("certify", "Golfing certificates cross-checked against recovery");
  certify->add_option("--d", d, "Dimension")->required();
  certify->add_option("--ensemble", ensemble, ensemble_help())->capture_default_str();
  certify->add_option("--trials", trials, "Golfing runs")->default_val(5);
  certify->add_option("--seed", seed, "Base seed");
  certify->add_option("--t", golf.t_order, "Design order")->capture_default_str();
  certify->add_option("--gamma", golf.gamma, "Truncation exponent (default 1 - 2/t)");
  certify->add_option("--b", golf.b, "Complement contraction")->capture_default_str();
  certify->add_option("--c", golf.c, "Tangent contraction")->capture_default_str();
  certify->add_option("--r", golf.r, "Required successful legs (default ceil(log2 d) + 2)");
  certify->add_option("--l", golf.l, "Leg cap (default 10 r)");
  certify->add_option("--m-per-leg", golf.m_per_leg, "Vectors per leg (default ceil(c1 t d^(2-gamma) ln d))");
  certify->add_option("--c1", golf.c1, "Constant in the default per-leg size")->capture_default_str();
  certify->add_option("--out", out, "JSON report path (default stdout)");
  certify->add_option("--csv", csv, "Per-trial CSV path");
  certify->footer("JSON: {d, params, legs_total, legs_successful, success_rate, leg_success_rate, trials[]}.\n"
                  "CSV: trial,d,r,success,legs_used,successful_legs,tangent_error,complement_norm,is_valid,\n"
                  "     contraction_ok,lambda_min,span_residual,guarantee,recovery_converged,phase_distance,m_total\n"
                  "Exit 1 when a successful run breaks a certificate bound or a guaranteed recovery fails.");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "liftkit: " << e.what() << '\n';
    return kUsage;
  }
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      const DesignEnsemble e = ensemble_from("", ensemble, d, seed, haar_size);
      Output o(out);
      write_design(o.stream(), e);
      return kOk;
    }
    if (verify->parsed()) {
      const DesignEnsemble e = ensemble_from(in, ensemble, d, seed, haar_size);
      const int order = t > 0 ? t : std::max(1, e.order_claim);
      const DesignReport r = verify_design(e, order, tol);
      std::cout << std::setprecision(17) << "label " << e.label << "\nd " << e.dim << "\nN " << e.size()
                << "\nt " << order << "\nframe_potential " << r.frame_potential << "\ntarget_potential "
                << r.target_potential << "\n";
      if (r.operator_deviation) std::cout << "operator_deviation " << *r.operator_deviation << "\n";
      std::cout << "passed " << (r.passed ? "true" : "false") << "\n";
      return r.passed ? kOk : kCheckFailed;
    }
    if (measure_cmd->parsed()) {
      const DesignEnsemble e = ensemble_from(design_file, ensemble, d, seed, haar_size);
      if (m < 1) throw UsageError("--m must be >= 1");
      ComplexVec x;
      if (!signal_in.empty()) {
        x = read_signal(signal_in);
        if (x.size() != e.dim) throw UsageError("signal dimension does not match the ensemble");
        x.normalize();
      } else {
        Rng rng = Rng::stream(seed, {0});
        x = haar_signal(e.dim, rng);
      }
      Rng draws = Rng::stream(seed, {1});
      const MeasurementRecord rec = measure(x, sample_vectors(e, m, draws), seed, e.label);
      Output o(out);
      write_record_csv(o.stream(), rec);
      if (!signal_out.empty()) {
        Output s(signal_out);
        write_signal(s.stream(), x);
      }
      return kOk;
    }
    if (recover_cmd->parsed()) {
      const MeasurementRecord rec = load_record(in);
      SolverConfig cfg;
      if (variant == "feasibility") cfg.variant = SolverVariant::feasibility;
      else if (variant == "trace_min") cfg.variant = SolverVariant::trace_min;
      else throw UsageError("unknown variant '" + variant + "'");
      if (method == "reflections") cfg.method = SolverMethod::reflections;
      else if (method == "projections") cfg.method = SolverMethod::projections;
      else throw UsageError("unknown method '" + method + "'");
      cfg.tol = tol;
      cfg.max_iters = max_iters;
      cfg.relaxation = relaxation;
      cfg.seed = seed;
      const SolverResult res = recover(rec, cfg);
      const SignalEstimate est = extract_signal(res);
      Output o(out);
      write_signal(o.stream(), est.x_hat);
      std::cerr << std::setprecision(6) << "iterations " << res.iterations << " converged "
                << (res.converged ? "true" : "false") << " affine " << res.affine_residual << " cone "
                << res.cone_residual << " trace_gap " << res.trace_gap << " eig_gap " << est.eig_gap << "\n";
      bool ok = res.converged;
      if (!signal_in.empty()) {
        const ComplexVec x = read_signal(signal_in);
        if (x.size() != rec.signal_dim) throw UsageError("signal dimension does not match the record");
        const double dist = phase_distance(est.x_hat, x);
        std::cerr << "phase_distance " << dist << "\n";
        ok = ok && dist <= threshold;
      }
      return ok ? kOk : kCheckFailed;
    }
    if (phase->parsed()) {
      PhaseDiagramSpec spec;
      spec.d_range = parse_int_list(d_list);
      spec.m_range = parse_int_list(m_list);
      spec.trials_per_cell = trials;
      spec.success_threshold = threshold;
      spec.ensemble_kind = parse_ensemble_kind(ensemble);
      spec.seed = seed;
      spec.solver.tol = tol;
      spec.solver.max_iters = max_iters;
      const PhaseDiagramResult r = run_phase_diagram(spec);
      Output o(out);
      write_phase_csv(o.stream(), r);
      if (!svg.empty()) {
        Output s(svg);
        write_phase_svg(s.stream(), r);
      }
      return kOk;
    }
    if (conv->parsed()) {
      const auto omegas = parse_real_list(omega_list);
      std::vector<int> ms;
      if (!m_list.empty()) ms = parse_int_list(m_list);
      const ConverseReport r = run_converse(d, omegas, trials, seed, ms);
      Output o(out);
      write_converse_csv(o.stream(), r);
      bool ok = r.overlaps_equal;
      for (const auto& row : r.rows) ok = ok && row.within_5sigma;
      for (const auto& row : r.omega_rows) ok = ok && row.bound_ok;
      return ok ? kOk : kCheckFailed;
    }
    if (moments->parsed()) {
      const EnsembleKind kind = parse_ensemble_kind(ensemble);
      int order = t;
      if (order <= 0) order = std::max(1, build_ensemble(kind, d, seed).order_claim);
      const double g = gamma >= 0.0 ? gamma : std::max(0.0, 1.0 - 2.0 / order);
      const MomentReport r = run_moments(d, kind, g, order, trials, seed);
      Output o(out);
      write_moments_csv(o.stream(), r);
      return r.mean_ok && r.moments_ok && r.tail_ok ? kOk : kCheckFailed;
    }
    if (certify->parsed()) {
      golf.seed = seed;
      const CertificateSuiteReport r = run_certificate_suite(d, parse_ensemble_kind(ensemble), golf, trials, seed);
      {
        Output o(out);
        o.stream() << std::setw(2) << to_json(r) << '\n';
      }
      if (!csv.empty()) {
        Output c(csv);
        write_certificate_csv(c.stream(), r);
      }
      bool ok = true;
      for (const auto& tr : r.trials) {
        if (tr.success) ok = ok && tr.is_valid && tr.contraction_ok;
        if (tr.guarantee) ok = ok && tr.recovery_converged && tr.phase_distance <= 1e-5;
      }
      return ok ? kOk : kCheckFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "liftkit: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "liftkit: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "liftkit: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "liftkit: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
