// Copyright 2026 The scissorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// scissorsim: command-line front end.
//
// Exit codes: 0 on success, 1 on bad input, 2 when a built-in comparison
// fails its tolerance.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scissorsim/harness.h"
#include "scissorsim/io.h"
#include "scissorsim/tomography.h"

namespace {

using namespace scissorsim;

constexpr int kToleranceFailure = 2;

Profile load_profile(const std::string &path) {
  return path.empty() ? paper_profile() : profile_from_json(read_json_file(path));
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Output {
 public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Json analytic_entry(const CircuitConfig &config) {
  const AnalyticOutput a = analytic_model(config);
  Json qubit{{"re", {{a.qubit(0, 0).real(), a.qubit(0, 1).real()}, {a.qubit(1, 0).real(), a.qubit(1, 1).real()}}},
             {"im", {{a.qubit(0, 0).imag(), a.qubit(0, 1).imag()}, {a.qubit(1, 0).imag(), a.qubit(1, 1).imag()}}}};
  return {{"g2", a.g2},
          {"N", a.n},
          {"L", a.l},
          {"vacuum_weight", a.vacuum_weight},
          {"qubit_weight", a.qubit_weight},
          {"G_nom", a.g_nom},
          {"G_saturated", config.gamma1 > 0.0 ? a.qubit_weight / config.gamma1 : 0.0},
          {"P", a.success_probability},
          {"P_pattern", a.pattern_probability},
          {"qubit", qubit}};
}

int run_analytic(const std::string &config_path, const std::string &out_path) {
  const Profile profile = load_profile(config_path);
  Json j;
  j["config"] = to_json(profile.config);
  Json rows = Json::array();
  if (profile.g2_values.empty()) {
    rows.push_back(analytic_entry(profile.config));
  } else {
    for (double g2 : profile.g2_values) rows.push_back(analytic_entry(with_g2(profile.config, g2)));
  }
  j["results"] = std::move(rows);
  Output(out_path).stream() << j.dump(2) << '\n';
  return 0;
}

struct SimulateArgs {
  std::string config;
  std::int64_t pulses = 1'000'000;
  std::uint64_t seed = 1;
  std::string mode = "exact";
  double g2 = -1.0;
  std::string inputs;
  std::string detector_efficiency;
  std::string counts_prefix;
  std::string out;
};

int run_simulate(const SimulateArgs &args) {
  const Profile profile = load_profile(args.config);
  ExperimentPlan plan;
  plan.config = args.g2 >= 0.0 ? with_g2(profile.config, args.g2) : profile.config;
  plan.n_pulses = args.pulses;
  plan.seed = args.seed;
  plan.mode = parse_run_mode(args.mode);
  if (!args.inputs.empty()) {
    plan.inputs.clear();
    for (const auto &p : split(args.inputs, ',')) plan.inputs.push_back(parse_polarization(p));
  }
  for (const auto &item : split(args.detector_efficiency, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("detector efficiency entries look like D1=0.95");
    plan.detector_efficiency[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  const RunReport report = run_experiment(plan);
  if (!args.counts_prefix.empty()) {
    for (const auto &p : report.inputs) {
      std::ofstream amp(args.counts_prefix + "_" + to_string(p.input) + ".csv");
      std::ofstream ref(args.counts_prefix + "_" + to_string(p.input) + "_noamp.csv");
      if (!amp || !ref) throw std::runtime_error("cannot write counts under " + args.counts_prefix);
      write_counts_csv(amp, p.amp_rows);
      write_counts_csv(ref, p.noamp_rows);
    }
  }
  Json j = to_json(report);
  bool ok = true;
  for (const auto &p : report.inputs) {
    for (double f : {p.fidelity_input, p.fidelity_qubit, p.fidelity_output}) ok = ok && f >= 0.0 && f <= 1.0;
  }
  j["result"] = ok ? "PASS" : "FAIL";
  Output(args.out).stream() << j.dump(2) << '\n';
  return ok ? 0 : kToleranceFailure;
}

struct TomoArgs {
  std::string counts;
  std::string noamp;
  double efficiency = 0.5 * 0.64;
  std::string target;
  std::string out;
};

std::vector<CountsRow> load_counts(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_counts_csv(in);
}

CountsRecord total_record(const std::vector<CountsRow> &rows) {
  CountsRecord r;
  std::map<std::pair<std::string, std::string>, double> c3;
  for (const auto &row : rows) {
    c3[{row.basis, row.herald_pattern}] = row.c3;
    r.c4 += row.c4;
    r.by_detector[row.detector] += row.c4;
  }
  for (const auto &[_, v] : c3) r.c3 += v;
  return r;
}

int run_tomo(const TomoArgs &args) {
  const auto rows = load_counts(args.counts);
  const auto counts = basis_counts(rows);
  const QubitState q = reconstruct_qubit(counts, args.efficiency);
  Json j;
  j["state"] = to_json(q);
  j["purity"] = qubit_purity(q.matrix);
  j["bloch"] = {bloch_vector(q.matrix)[0], bloch_vector(q.matrix)[1], bloch_vector(q.matrix)[2]};
  if (!args.target.empty()) {
    const auto t = polarization_amplitudes(parse_polarization(args.target));
    const double fq = state_fidelity(q.matrix, Eigen::Vector2cd(t.alpha, t.beta));
    j["fidelity_qubit"] = fq;
    j["fidelity_output"] = (1.0 - q.vacuum_weight) * fq;
  }
  if (!args.noamp.empty()) {
    const auto ref_rows = load_counts(args.noamp);
    const CountsRecord amp = total_record(rows), ref = total_record(ref_rows);
    j["G_m"] = measured_gain(amp, ref);
    j["G_m_std_error"] = measured_gain_std_error(amp, ref);
    j["P_estimate"] = success_probability_estimate(amp, ref);
    j["gamma1_estimate"] = ref.c3 > 0.0 ? ref.c4 / ref.c3 / args.efficiency : 0.0;
  }
  Output(args.out).stream() << j.dump(2) << '\n';
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string param = "g2";
  double from = 1.0;
  double to = 1000.0;
  int points = 25;
  bool log = false;
  std::string out;
};

int run_sweep(const SweepArgs &args) {
  const Profile profile = load_profile(args.config);
  SweepSpec spec{parse_sweep_parameter(args.param), args.from, args.to, args.points, args.log};
  const auto rows = sweep(spec, profile.config);
  write_sweep_csv(Output(args.out).stream(), rows, spec.parameter);
  return 0;
}

int run_reproduce(const std::string &what, const std::string &config_path, const std::string &out_path) {
  const Profile profile = load_profile(config_path);
  ReproductionReport rep;
  if (what == "table1") {
    rep = reproduce_table1(profile);
  } else if (what == "table2") {
    rep = reproduce_table2(profile);
  } else {
    rep = reproduce_fig3(profile);
  }
  Output(out_path).stream() << to_json(rep).dump(2) << '\n';
  return rep.passed() ? 0 : kToleranceFailure;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-stage heralded qubit amplifier simulator"};
  app.require_subcommand(1);

  std::string config, out;

  auto *analytic = app.add_subcommand("analytic", "Closed-form amplifier output");
  analytic->add_option("--config", config, "Profile or CircuitConfig JSON (default: built-in paper profile)");
  analytic->add_option("--out", out, "Output file (default: stdout)");

  SimulateArgs sim;
  auto *simulate = app.add_subcommand("simulate", "Simulated experiment with tomography and gain estimation");
  simulate->add_option("--config", sim.config, "Profile or CircuitConfig JSON");
  simulate->add_option("--pulses", sim.pulses, "Pulses per (input, basis) setting")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--mode", sim.mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  simulate->add_option("--g2", sim.g2, "Override the gain setting");
  simulate->add_option("--inputs", sim.inputs, "Comma-separated input polarizations (default H,V,D,A,R,L)");
  simulate->add_option("--detector-efficiency", sim.detector_efficiency, "Per-detector factors, e.g. D1=0.95,D5=0.9");
  simulate->add_option("--counts", sim.counts_prefix, "Write counts CSV files with this prefix");
  simulate->add_option("--out", sim.out, "Output file (default: stdout)");

  TomoArgs tomo;
  auto *tomo_cmd = app.add_subcommand("tomo", "State reconstruction from a counts CSV");
  tomo_cmd->add_option("--counts", tomo.counts, "Counts CSV (basis,detector,herald_pattern,C3,C4)")->required();
  tomo_cmd->add_option("--noamp", tomo.noamp, "Reference (no amplification) counts CSV for gain estimation");
  tomo_cmd->add_option("--efficiency", tomo.efficiency, "Analyzer detection efficiency")->check(CLI::Range(0.0, 1.0));
  tomo_cmd->add_option("--target", tomo.target, "Ideal input polarization for fidelities");
  tomo_cmd->add_option("--out", tomo.out, "Output file (default: stdout)");

  SweepArgs sw;
  auto *sweep_cmd = app.add_subcommand("sweep", "Parameter sweep (CSV)");
  sweep_cmd->add_option("--config", sw.config, "Profile or CircuitConfig JSON");
  sweep_cmd->add_option("--param", sw.param, "g2, tau, delta, gamma1 or V")
      ->check(CLI::IsMember({"g2", "tau", "delta", "gamma1", "V"}));
  sweep_cmd->add_option("--from", sw.from, "First grid value")->required();
  sweep_cmd->add_option("--to", sw.to, "Last grid value")->required();
  sweep_cmd->add_option("--points", sw.points, "Number of grid points");
  sweep_cmd->add_flag("--log", sw.log, "Geometric grid");
  sweep_cmd->add_option("--out", sw.out, "Output file (default: stdout)");

  std::string target;
  auto *reproduce = app.add_subcommand("reproduce", "Reproduce a published table or figure trend");
  reproduce->add_option("target", target, "table1, table2 or fig3")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "fig3"}));
  reproduce->add_option("--config", config, "Profile JSON (default: built-in paper profile)");
  reproduce->add_option("--out", out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analytic) return run_analytic(config, out);
    if (*simulate) return run_simulate(sim);
    if (*tomo_cmd) return run_tomo(tomo);
    if (*sweep_cmd) return run_sweep(sw);
    if (*reproduce) return run_reproduce(target, config, out);
  } catch (const std::exception &e) {
    std::cerr << "scissorsim: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
