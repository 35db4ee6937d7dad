// Copyright 2026 The esd-lab Authors
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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "esdlab/channels.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/qmat.hpp"
#include "esdlab/stochastic.hpp"
#include "state_io.hpp"

namespace esdlab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class FlagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kMinReliableTrajectories = 1000;
constexpr double kNumericHorizon = 50.0;  // in units of 1 / reference rate
constexpr double kNumericTol = 1e-9;      // ditto

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RateFlags {
  std::string model = "global";
  std::optional<double> gamma;
  std::optional<double> gamma_a;
  std::optional<double> gamma_b;
  std::string units = "gammat";
};

void add_rate_flags(CLI::App* sub, RateFlags& f) {
  sub->add_option("--model", f.model, "Noise model")
      ->check(CLI::IsMember({"global", "local"}))
      ->capture_default_str();
  sub->add_option("--gamma", f.gamma, "Global dephasing rate");
  sub->add_option("--gamma-a", f.gamma_a, "Local dephasing rate on qubit A");
  sub->add_option("--gamma-b", f.gamma_b, "Local dephasing rate on qubit B");
  sub->add_option("--units", f.units, "Time units: gammat (reference rate x time) or seconds")
      ->check(CLI::IsMember({"gammat", "seconds"}))
      ->capture_default_str();
}

// Rates plus the time convention. In gammat units every time on the command
// line and in the output is reference_rate * t, where the reference rate is
// Gamma (global) or max(Gamma_A, Gamma_B) (local).
struct TimeFrame {
  DephasingRates rates;
  double reference_rate;
  bool gammat;

  double to_raw(double v) const { return gammat ? v / reference_rate : v; }
  double to_user(double raw) const { return gammat ? raw * reference_rate : raw; }
};

double require_rate(const std::optional<double>& v, const char* flag, bool gammat) {
  if (!v) {
    if (gammat) return 1.0;
    throw FlagError(std::string(flag) + " is required with --units seconds");
  }
  if (!std::isfinite(*v) || *v < 0.0) {
    throw FlagError(std::string(flag) + " must be a finite rate >= 0");
  }
  return *v;
}

TimeFrame resolve(const RateFlags& f) {
  const bool gammat = f.units == "gammat";
  std::optional<DephasingRates> rates;
  double reference = 0.0;
  if (f.model == "global") {
    if (f.gamma_a || f.gamma_b) {
      throw FlagError("--gamma-a/--gamma-b are only valid with --model local; use --gamma");
    }
    const double g = require_rate(f.gamma, "--gamma", gammat);
    rates = DephasingRates::global(g);
    reference = g;
  } else {
    if (f.gamma) {
      throw FlagError("--gamma is only valid with --model global; use --gamma-a/--gamma-b");
    }
    const double ga = require_rate(f.gamma_a, "--gamma-a", gammat);
    const double gb = require_rate(f.gamma_b, "--gamma-b", gammat);
    rates = DephasingRates::local(ga, gb);
    reference = std::max(ga, gb);
  }
  if (gammat && reference == 0.0) {
    throw FlagError("--units gammat needs a non-zero rate to scale time");
  }
  return TimeFrame{*rates, reference, gammat};
}

double require_time(double v, const char* flag) {
  if (!std::isfinite(v) || v < 0.0) throw FlagError(std::string(flag) + " must be finite and >= 0");
  return v;
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + *path + "' for writing");
  file << text;
  if (!file) throw IoError("failed writing '" + *path + "'");
}

// ---------------------------------------------------------------------------
// evolve

std::string evolve_text(const LoadedState& state, const TimeFrame& frame, double t_raw) {
  if (state.x) return dump_state(to_json(evolve_closed_form(*state.x, frame.rates, t_raw)));
  return dump_state(to_json(apply_channel(kraus_set(frame.rates, t_raw), state.rho)));
}

// ---------------------------------------------------------------------------
// curve

std::string curve_csv(const LoadedState& state, const TimeFrame& frame, double t_max, int steps) {
  std::ostringstream os;
  os << "t,concurrence,negativity,re_rho14,re_rho23\n";
  for (int k = 0; k < steps; ++k) {
    const double t_user = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
    const double t_raw = frame.to_raw(t_user);
    double conc = 0.0;
    std::optional<DensityMatrix> rho;
    if (state.x) {
      const XState xt = evolve_closed_form(*state.x, frame.rates, t_raw);
      conc = concurrence_x_state(xt).value;
      rho = embed(xt);
    } else {
      rho = apply_channel(kraus_set(frame.rates, t_raw), state.rho);
      conc = concurrence_general(*rho).value;
    }
    os << g17(t_user) << ',' << g17(conc) << ',' << g17(negativity(*rho)) << ','
       << g17((*rho)(0, 3).real()) << ',' << g17((*rho)(1, 2).real()) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// esd

ordered_json esd_json(const EsdReport& r, const TimeFrame& frame) {
  ordered_json j;
  j["classification"] = std::string(to_string(r.classification));
  j["binding_branch"] =
      r.binding_branch ? ordered_json(std::string(to_string(*r.binding_branch))) : ordered_json();
  if (r.t_c) {
    j["gamma_t_c"] = *r.t_c * frame.reference_rate;
    j["t_c"] = *r.t_c;
  } else {
    j["gamma_t_c"] = nullptr;
    j["t_c"] = nullptr;
  }
  return j;
}

std::string esd_text(const LoadedState& state, const TimeFrame& frame) {
  std::optional<XState> x = state.x ? state.x : as_x_state(state.rho);
  if (!x) {
    throw UnsupportedError(
        "esd: the state is not of X form (entries off the diagonal and anti-diagonal must be 0)");
  }
  const DephasingRates& rates = frame.rates;
  EsdReport analytic;
  if (rates.model() == NoiseModel::Global) {
    if (x->z() != Complex{}) {
      throw UnsupportedError(
          "esd: global noise needs z = 0; the z coherence lies in the decoherence-free "
          "subspace span{|+->, |-+>} and never decays, so no finite death time exists");
    }
    if (rates.gamma() <= 0.0) throw FlagError("esd: --gamma must be > 0");
    analytic = esd_time_global(*x, rates.gamma());
  } else {
    if (rates.gamma_a() + rates.gamma_b() <= 0.0) {
      throw FlagError("esd: --gamma-a + --gamma-b must be > 0");
    }
    analytic = esd_time_local(*x, rates.gamma_a(), rates.gamma_b());
  }

  const double ref = frame.reference_rate > 0.0 ? frame.reference_rate
                                                : std::max(rates.gamma_a(), rates.gamma_b());
  double horizon = kNumericHorizon / ref;
  if (analytic.t_c) horizon = std::max(horizon, 2.0 * *analytic.t_c);
  const double tol = kNumericTol / ref;
  const XState initial = *x;
  const EsdReport numeric = esd_time_numeric(
      [&](double t) { return concurrence_x_state(evolve_closed_form(initial, rates, t)); },
      horizon, tol);

  TimeFrame report_frame = frame;
  report_frame.reference_rate = ref;
  ordered_json doc;
  doc["model"] = std::string(to_string(rates.model()));
  doc["units"] = frame.gammat ? "gammat" : "seconds";
  doc["reference_rate"] = ref;
  const ordered_json analytic_json = esd_json(analytic, report_frame);
  for (const auto& [key, value] : analytic_json.items()) doc[key] = value;
  ordered_json num = esd_json(numeric, report_frame);
  num["horizon_gamma_t"] = horizon * ref;
  num["tolerance_gamma_t"] = tol * ref;
  doc["numeric"] = std::move(num);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// validate

std::string element_name(int i, int j) {
  return "rho" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::string format_z(double z) {
  if (std::isinf(z)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", z);
  return buf;
}

std::string validate_text(const LoadedState& state, const TimeFrame& frame, double t_user,
                          std::size_t n, std::uint64_t seed, unsigned workers, bool& pass) {
  const double t_raw = frame.to_raw(t_user);
  StochasticConfig cfg;
  cfg.rates = frame.rates;
  cfg.trajectories = n;
  cfg.seed = seed;
  cfg.workers = workers;

  const EnsembleEstimate est = ensemble_evolve(state.rho, t_raw, cfg);
  const DensityMatrix predicted = apply_channel(kraus_set(frame.rates, t_raw), state.rho);
  const ComparisonReport report = compare_to_channel(est, predicted);
  pass = report.pass;

  std::ostringstream os;
  char line[256];
  os << "model: " << to_string(frame.rates.model()) << '\n';
  if (frame.rates.model() == NoiseModel::Global) {
    os << "gamma: " << g17(frame.rates.gamma()) << '\n';
  } else {
    os << "gamma_a: " << g17(frame.rates.gamma_a()) << '\n'
       << "gamma_b: " << g17(frame.rates.gamma_b()) << '\n';
  }
  os << "t: " << g17(t_user) << " (" << (frame.gammat ? "gammat" : "seconds") << ")\n"
     << "trajectories: " << n << '\n'
     << "seed: " << seed << '\n';
  std::snprintf(line, sizeof line, "%-8s %-4s %22s %22s %22s %10s\n", "element", "part",
                "estimate", "prediction", "stderr", "z-score");
  os << line;
  for (const ElementComparison& e : report.elements) {
    const std::string name = element_name(e.row, e.col);
    const struct {
      const char* part;
      double est, pred, se, z;
    } parts[] = {{"re", e.estimate.real(), e.predicted.real(), e.stderr_re, e.z_re},
                 {"im", e.estimate.imag(), e.predicted.imag(), e.stderr_im, e.z_im}};
    for (const auto& p : parts) {
      // + 0.0 folds negative zero so the table never shows "-0".
      std::snprintf(line, sizeof line, "%-8s %-4s %22.15e %22.15e %22.15e %10s\n", name.c_str(),
                    p.part, p.est + 0.0, p.pred + 0.0, p.se, format_z(p.z).c_str());
      os << line;
    }
  }
  os << "max z-score: " << format_z(report.max_z) << " (limit " << kZScoreLimit << ")\n"
     << "result: " << (report.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// fig1: reference curves under global noise. Case I dies at gamma t = ln(2)/2,
// case II (b = 0) decays exponentially; both start at C = 1/3.

XState fig1_case_one() { return XState(1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 3, 0.0); }
XState fig1_case_two() { return XState(1.0 / 3, 0.0, 1.0 / 3, 1.0 / 3, 1.0 / 6, 0.0); }

std::string fig1_text(const std::string& dir) {
  const TimeFrame frame{DephasingRates::global(1.0), 1.0, true};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());

  const std::filesystem::path base(dir);
  const std::string path_one = (base / "fig1_case_I.csv").string();
  const std::string path_two = (base / "fig1_case_II.csv").string();
  const XState one = fig1_case_one();
  emit(curve_csv(LoadedState{embed(one), one}, frame, 2.0, 401), path_one, std::cout);
  const XState two = fig1_case_two();
  emit(curve_csv(LoadedState{embed(two), two}, frame, 2.0, 401), path_two, std::cout);

  const EsdReport r = esd_time_global(one, 1.0);
  std::ostringstream os;
  os << "case I: " << to_string(r.classification) << ", gamma_t_c = " << g17(*r.t_c) << '\n'
     << "case II: " << to_string(esd_time_global(two, 1.0).classification) << '\n'
     << "wrote " << path_one << '\n'
     << "wrote " << path_two << '\n';
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit entanglement under classical dephasing noise", "esd-lab"};
  app.require_subcommand(1, 1);

  RateFlags rate_flags;
  std::string state_path;
  std::optional<std::string> out_path;
  double t = 0.0;
  double t_max = 0.0;
  int steps = 201;
  std::size_t trajectories = 200000;
  std::uint64_t seed = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string fig_dir = ".";

  CLI::App* evolve = app.add_subcommand("evolve", "Evolve a state for time t");
  evolve->add_option("state", state_path, "State file (JSON)")->required();
  add_rate_flags(evolve, rate_flags);
  evolve->add_option("--t", t, "Evolution time")->required();
  evolve->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* curve = app.add_subcommand("curve", "Concurrence and negativity on a time grid (CSV)");
  curve->add_option("state", state_path, "State file (JSON)")->required();
  add_rate_flags(curve, rate_flags);
  curve->add_option("--t-max", t_max, "Last grid time")->required();
  curve->add_option("--steps", steps, "Number of grid points, endpoints included")
      ->capture_default_str();
  curve->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* esd = app.add_subcommand("esd", "Entanglement sudden death report");
  esd->add_option("state", state_path, "State file (JSON)")->required();
  add_rate_flags(esd, rate_flags);
  esd->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* validate = app.add_subcommand("validate", "Monte Carlo ensemble vs Kraus channel");
  validate->add_option("state", state_path, "State file (JSON); default: the sudden-death reference state");
  add_rate_flags(validate, rate_flags);
  validate->add_option("--t", t, "Evolution time")->required();
  validate->add_option("--trajectories", trajectories, "Number of noise realizations")
      ->capture_default_str();
  validate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  validate->add_option("--workers", workers, "Worker threads (does not change results)");
  validate->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* fig1 = app.add_subcommand("fig1", "Write the sudden-death and exponential-decay reference curves as CSV");
  fig1->add_option("--out", fig_dir, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadFlags;
  }

  try {
    if (evolve->parsed()) {
      const TimeFrame frame = resolve(rate_flags);
      const double t_raw = frame.to_raw(require_time(t, "--t"));
      emit(evolve_text(load_state_file(state_path), frame, t_raw), out_path, out);
    } else if (curve->parsed()) {
      if (steps < 2) throw FlagError("--steps must be >= 2");
      if (!std::isfinite(t_max) || t_max <= 0.0) throw FlagError("--t-max must be > 0");
      const TimeFrame frame = resolve(rate_flags);
      emit(curve_csv(load_state_file(state_path), frame, t_max, steps), out_path, out);
    } else if (esd->parsed()) {
      const TimeFrame frame = resolve(rate_flags);
      emit(esd_text(load_state_file(state_path), frame), out_path, out);
    } else if (validate->parsed()) {
      const TimeFrame frame = resolve(rate_flags);
      require_time(t, "--t");
      if (trajectories == 0) throw FlagError("--trajectories must be >= 1");
      if (trajectories < kMinReliableTrajectories) {
        err << "warning: " << trajectories << " trajectories is below "
            << kMinReliableTrajectories << "; 5-sigma bounds are unreliable\n";
      }
      const XState default_state = fig1_case_one();
      const LoadedState state = state_path.empty() ? LoadedState{embed(default_state), default_state}
                                                   : load_state_file(state_path);
      bool pass = false;
      emit(validate_text(state, frame, t, trajectories, seed, workers, pass), out_path, out);
      return pass ? kExitOk : kExitValidationFailed;
    } else if (fig1->parsed()) {
      out << fig1_text(fig_dir);
    }
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const StateFileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace esdlab::cli
