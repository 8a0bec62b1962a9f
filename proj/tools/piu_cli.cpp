// Copyright 2026 The piu Authors
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


// Command-line driver: simulate, validate, claim, convergence.
//
// Exit codes: 0 success / pass, 1 analysed but negative verdict,
// 2 input or usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "piu/io/json.hpp"
#include "piu/io/timeline_csv.hpp"
#include "piu/piu.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

// Stream ids under --seed, one per command.
constexpr std::uint64_t kSimulateStream = 0;
constexpr std::uint64_t kValidateStream = 1;
constexpr std::uint64_t kConvergenceStream = 2;

struct Options {
  std::uint64_t seed = 1;
  std::optional<double> horizon;
  std::size_t replications = 100;
  double confidence = 0.95;
  double significance = 0.05;
  int bins = 20;
  double epsilon = 1e-9;
  int resamples = 1000;
  bool bonferroni = false;
  std::optional<int> target_sil;
  std::string out;
  std::string spec_path;
  std::string timeline_path;
  std::string fleet_path;
  std::string checklist_path;
  std::string bands_path;
  std::optional<std::string> version;
  std::vector<std::size_t> n_values;
};

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return in;
}

json read_json_file(const std::string &path) {
  std::ifstream in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw piu::io::FormatError(path + ": " + e.what());
  }
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << content;
}

piu::SuiteConfig suite_from(const Options &o) {
  piu::SuiteConfig s;
  s.significance = o.significance;
  s.k_bins = o.bins;
  s.epsilon = o.epsilon;
  s.resamples = o.resamples;
  s.bonferroni = o.bonferroni;
  return s;
}

json config_json(const std::string &command, const Options &o) {
  json j;
  j["command"] = command;
  j["seed"] = o.seed;
  j["horizon"] = o.horizon ? json(*o.horizon) : json(nullptr);
  j["replications"] = o.replications;
  j["confidence"] = o.confidence;
  j["significance"] = o.significance;
  j["bins"] = o.bins;
  j["epsilon"] = o.epsilon;
  j["resamples"] = o.resamples;
  j["bonferroni"] = o.bonferroni;
  j["target_sil"] = o.target_sil ? json(*o.target_sil) : json(nullptr);
  j["version"] = o.version ? json(*o.version) : json(nullptr);
  j["n_values"] = o.n_values;
  j["paths"] = {{"spec", o.spec_path},         {"timeline", o.timeline_path},
                {"fleet", o.fleet_path},       {"checklist", o.checklist_path},
                {"bands", o.bands_path},       {"out", o.out}};
  return j;
}

double horizon_from(const Options &o, const json &spec) {
  if (o.horizon) {
    return *o.horizon;
  }
  if (!spec.contains("horizon")) {
    throw piu::io::FormatError("no horizon: give --horizon or a 'horizon' field");
  }
  return spec.at("horizon").get<double>();
}

int cmd_simulate(const Options &o) {
  json spec = read_json_file(o.spec_path);
  std::string model = spec.value("model", spec.contains("states") ? "modular" : "");
  piu::RngStream rng(o.seed, kSimulateStream);
  json meta;
  meta["config"] = config_json("simulate", o);
  meta["spec"] = spec;
  meta["model"] = model;
  meta["rng"] = "xoshiro256** seeded by splitmix64(mix64(seed, stream_id))";
  meta["stream_id"] = kSimulateStream;

  std::optional<piu::EventTimeline> timeline;
  if (model == "renewal") {
    const auto dist = piu::io::distribution_from_json(spec.at("dist"));
    const std::string start = spec.value("start", "ordinary");
    if (start != "ordinary" && start != "equilibrium") {
      throw piu::io::FormatError("start must be 'ordinary' or 'equilibrium'");
    }
    timeline = piu::simulate_renewal(dist, horizon_from(o, spec), rng,
                                     start == "equilibrium"
                                         ? piu::RenewalStart::equilibrium
                                         : piu::RenewalStart::ordinary);
    meta["theoretical_rate"] = 1.0 / piu::mean_of(dist);
  } else if (model == "nhpp") {
    const auto profile = piu::io::intensity_from_json(spec.at("profile"));
    const double horizon = horizon_from(o, spec);
    timeline = piu::simulate_nhpp(profile, horizon, rng);
    meta["nhpp_method"] = piu::kNhppMethodInverse;
    meta["expected_count"] = profile.cumulative(horizon);
    if (profile.kind() == "constant") {
      meta["theoretical_rate"] = profile.rate(0.0);
    }
  } else if (model == "superposition") {
    auto sup = piu::io::superposition_from_json(spec);
    sup.horizon = horizon_from(o, spec);
    auto result = piu::simulate_superposition(sup, rng);
    meta["theoretical_rate"] = result.theoretical_rate;
    meta["components"] = sup.components.size();
    timeline = std::move(result.timeline);
  } else if (model == "rare_event") {
    const double p = spec.at("p_fault").get<double>();
    const double step = spec.at("step_duration").get<double>();
    const double steps = spec.at("n_steps").get<double>();
    if (!(steps >= 1.0)) {
      throw piu::io::FormatError("n_steps must be >= 1");
    }
    timeline = piu::rare_event_hitting(p, static_cast<std::uint64_t>(steps),
                                       step, rng);
    meta["theoretical_rate"] = p / step;
  } else if (model == "modular") {
    const auto m = piu::io::semi_markov_from_json(spec);
    timeline = piu::simulate_modular(m, horizon_from(o, spec), rng);
    meta["theoretical_rate"] = piu::asymptotic_failure_rate(m);
    json warnings = json::array();
    for (const auto &w : piu::rarity_warning(m)) {
      std::cerr << "rarity warning: " << w.message << "\n";
      warnings.push_back(w.message);
    }
    meta["rarity_warnings"] = warnings;
  } else {
    throw piu::io::FormatError(
        "unknown model '" + model +
        "' (expected renewal, nhpp, superposition, rare_event or modular)");
  }
  meta["window_end"] = timeline->window_end();
  meta["events"] = timeline->size();

  std::ostringstream csv;
  piu::io::write_timeline_csv(csv, *timeline);
  write_file(o.out + ".csv", csv.str());
  write_file(o.out + ".meta.json", meta.dump(2) + "\n");
  std::cout << "wrote " << o.out << ".csv (" << timeline->size()
            << " events) and " << o.out << ".meta.json\n";
  return kExitPass;
}

int cmd_validate(const Options &o) {
  std::ifstream in = open_input(o.timeline_path);
  const auto units = piu::io::read_timeline_csv(in);
  const piu::EventTimeline timeline =
      units.size() == 1 ? units.front() : piu::superpose(units);
  piu::RngStream rng(o.seed, kValidateStream);
  const auto report = piu::assess_poisson(timeline, suite_from(o), rng);

  std::string text = piu::to_text(report);
  if (units.size() > 1) {
    text += "  note: " + std::to_string(units.size()) +
            " units superposed into one timeline\n";
  }
  std::cout << text;
  if (!o.out.empty()) {
    json j = piu::io::to_json(report);
    j["config"] = config_json("validate", o);
    j["units"] = units.size();
    write_file(o.out + ".json", j.dump(2) + "\n");
    write_file(o.out + ".txt", text);
  }
  return report.overall ? kExitPass : kExitNegative;
}

int cmd_claim(const Options &o) {
  std::ifstream fleet_in = open_input(o.fleet_path);
  const auto fleet = piu::io::read_fleet_jsonl(fleet_in);
  const auto checklist = piu::io::checklist_from_json(read_json_file(o.checklist_path));
  piu::SilBands bands;
  if (!o.bands_path.empty()) {
    std::ifstream bands_in = open_input(o.bands_path);
    bands = piu::io::read_sil_bands(bands_in);
  }
  const auto claim =
      piu::evaluate_claim(fleet, checklist, o.confidence, o.version, bands);

  std::string text = piu::to_text(claim);
  bool ok = claim.valid;
  if (o.target_sil) {
    const bool reached = static_cast<int>(claim.sil) >= *o.target_sil;
    text += "  target: SIL " + std::to_string(*o.target_sil) +
            (reached ? " reached\n" : " not reached\n");
    ok = ok && reached;
  }
  std::cout << text;
  if (!o.out.empty()) {
    json j = piu::io::to_json(claim);
    j["checklist"] = piu::io::to_json(checklist);
    j["config"] = config_json("claim", o);
    write_file(o.out + ".json", j.dump(2) + "\n");
    write_file(o.out + ".txt", text);
  }
  return ok ? kExitPass : kExitNegative;
}

int cmd_convergence(const Options &o) {
  if (o.n_values.empty()) {
    throw std::invalid_argument("--n-values must list at least one count");
  }
  const json spec = read_json_file(o.spec_path);
  const piu::ConvergenceTemplate tmpl{
      piu::io::distribution_from_json(spec.at("component")),
      spec.value("total_rate", 1.0), horizon_from(o, spec)};
  piu::RngStream rng(o.seed, kConvergenceStream);
  const auto rows = piu::convergence_study(tmpl, o.n_values, o.replications,
                                           suite_from(o), rng);
  std::ostringstream csv;
  csv << "n,replications,pass_fraction,empirical_rate_mean,theoretical_rate\n";
  for (const auto &r : rows) {
    csv << r.n << "," << r.replications << ","
        << piu::io::format_time(r.pass_fraction) << ","
        << piu::io::format_time(r.empirical_rate_mean) << ","
        << piu::io::format_time(r.theoretical_rate) << "\n";
  }
  json meta;
  meta["config"] = config_json("convergence", o);
  meta["spec"] = spec;
  meta["stream_id"] = kConvergenceStream;
  write_file(o.out + ".csv", csv.str());
  write_file(o.out + ".meta.json", meta.dump(2) + "\n");
  std::cout << csv.str();
  return kExitPass;
}

void add_suite_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--significance", o.significance, "Per-test significance")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  cmd->add_option("--bins", o.bins, "Equal bins for the dispersion test")
      ->check(CLI::Range(2, 1000000));
  cmd->add_option("--epsilon", o.epsilon, "Coincidence tolerance in hours")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--resamples", o.resamples, "Bootstrap resamples")
      ->check(CLI::Range(1, 100000000));
  cmd->add_flag("--bonferroni", o.bonferroni,
                "Divide the significance across the three statistical tests");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"piu: Poisson-limit failure simulation, assumption checks and "
               "proven-in-use claims"};
  app.require_subcommand(1);
  Options o;

  auto *simulate = app.add_subcommand("simulate", "Simulate a failure timeline");
  simulate->add_option("--spec", o.spec_path, "Model or process spec (JSON)")
      ->required();
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--horizon", o.horizon, "Override horizon in hours")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", o.out, "Output prefix (.csv, .meta.json)")
      ->required();

  auto *validate = app.add_subcommand("validate", "Check the Poisson assumptions");
  validate->add_option("--timeline", o.timeline_path, "Timeline CSV")->required();
  validate->add_option("--seed", o.seed, "Random seed for the bootstrap");
  add_suite_flags(validate, o);
  validate->add_option("--out", o.out, "Output prefix (.json, .txt)");

  auto *claim = app.add_subcommand("claim", "Evaluate a proven-in-use claim");
  claim->add_option("--fleet", o.fleet_path, "Fleet log (JSON Lines)")->required();
  claim->add_option("--checklist", o.checklist_path, "Checklist (JSON)")->required();
  claim->add_option("--confidence", o.confidence, "One-sided confidence")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  claim->add_option("--version", o.version, "Component version to evaluate");
  claim->add_option("--bands", o.bands_path, "SIL band table (key = value)");
  claim->add_option("--target-sil", o.target_sil, "Required SIL for exit 0")
      ->check(CLI::Range(1, 4));
  claim->add_option("--out", o.out, "Output prefix (.json, .txt)");

  auto *convergence =
      app.add_subcommand("convergence", "Superposition convergence study");
  convergence->add_option("--spec", o.spec_path, "Template spec (JSON)")->required();
  convergence->add_option("--n-values", o.n_values, "Component counts")
      ->delimiter(',')
      ->required();
  convergence->add_option("--replications", o.replications, "Replications per n");
  convergence->add_option("--horizon", o.horizon, "Override horizon in hours")
      ->check(CLI::PositiveNumber);
  convergence->add_option("--seed", o.seed, "Random seed");
  add_suite_flags(convergence, o);
  convergence->add_option("--out", o.out, "Output prefix (.csv, .meta.json)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*simulate) {
      return cmd_simulate(o);
    }
    if (*validate) {
      return cmd_validate(o);
    }
    if (*claim) {
      return cmd_claim(o);
    }
    return cmd_convergence(o);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
