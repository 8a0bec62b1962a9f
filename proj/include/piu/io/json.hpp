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


#ifndef PIU_IO_JSON_HPP_
#define PIU_IO_JSON_HPP_

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "piu/distribution.hpp"
#include "piu/evidence.hpp"
#include "piu/io/timeline_csv.hpp"
#include "piu/nhpp.hpp"
#include "piu/semi_markov.hpp"
#include "piu/superposition.hpp"
#include "piu/validators.hpp"

namespace piu::io {

using nlohmann::json;

namespace detail {

inline const json &field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline double number(const json &j, const char *key) {
  const json &v = field(j, key);
  if (!v.is_number()) {
    throw FormatError(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

inline bool flag(const json &j, const char *key) {
  const json &v = field(j, key);
  if (!v.is_boolean()) {
    throw FormatError(std::string("field '") + key + "' must be true or false");
  }
  return v.get<bool>();
}

inline json nullable(std::optional<double> v) {
  if (v && std::isfinite(*v)) {
    return *v;
  }
  return nullptr;
}

} // namespace detail

/*
 * {"kind": "exponential", "rate": r}
 * {"kind": "weibull" | "gamma", "shape": k, "scale": s}
 * {"kind": "lognormal", "log_mean": mu, "log_sd": sigma}
 * {"kind": "degenerate", "value": v}
 * Any kind may give "mean" instead of its scale parameter (rate, scale,
 * log_mean or value); the shape parameters are then kept.
 */
inline DistributionSpec distribution_from_json(const json &j) {
  const std::string kind = detail::field(j, "kind").get<std::string>();
  const bool by_mean = j.contains("mean");
  std::optional<DistributionSpec> d;
  if (kind == "exponential") {
    d = DistributionSpec::exponential(by_mean ? 1.0 : detail::number(j, "rate"));
  } else if (kind == "weibull") {
    d = DistributionSpec::weibull(detail::number(j, "shape"),
                                  by_mean ? 1.0 : detail::number(j, "scale"));
  } else if (kind == "gamma") {
    d = DistributionSpec::gamma(detail::number(j, "shape"),
                                by_mean ? 1.0 : detail::number(j, "scale"));
  } else if (kind == "lognormal") {
    d = DistributionSpec::lognormal(by_mean ? 0.0 : detail::number(j, "log_mean"),
                                    detail::number(j, "log_sd"));
  } else if (kind == "degenerate") {
    d = DistributionSpec::degenerate(by_mean ? 1.0 : detail::number(j, "value"));
  } else {
    throw FormatError("unknown distribution kind '" + kind + "'");
  }
  return by_mean ? with_mean(*d, detail::number(j, "mean")) : *d;
}

inline json to_json(const DistributionSpec &d) {
  return std::visit(
      [](const auto &l) -> json {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, law::Exponential>) {
          return {{"kind", "exponential"}, {"rate", l.rate}};
        } else if constexpr (std::is_same_v<L, law::Weibull>) {
          return {{"kind", "weibull"}, {"shape", l.shape}, {"scale", l.scale}};
        } else if constexpr (std::is_same_v<L, law::Gamma>) {
          return {{"kind", "gamma"}, {"shape", l.shape}, {"scale", l.scale}};
        } else if constexpr (std::is_same_v<L, law::LogNormal>) {
          return {{"kind", "lognormal"},
                  {"log_mean", l.log_mean},
                  {"log_sd", l.log_sd}};
        } else {
          return {{"kind", "degenerate"}, {"value", l.value}};
        }
      },
      d.law());
}

inline IntensityProfile intensity_from_json(const json &j) {
  const std::string kind = detail::field(j, "kind").get<std::string>();
  if (kind == "constant") {
    return IntensityProfile::constant(detail::number(j, "lambda0"));
  }
  if (kind == "loglinear") {
    return IntensityProfile::loglinear(detail::number(j, "lambda0"),
                                       detail::number(j, "beta"));
  }
  if (kind == "powerlaw") {
    return IntensityProfile::powerlaw(detail::number(j, "lambda0"),
                                      detail::number(j, "shape"));
  }
  throw FormatError("unknown intensity kind '" + kind + "'");
}

inline json to_json(const IntensityProfile &p) {
  return std::visit(
      [](const auto &v) -> json {
        using P = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<P, intensity::Constant>) {
          return {{"kind", "constant"}, {"lambda0", v.lambda0}};
        } else if constexpr (std::is_same_v<P, intensity::LogLinear>) {
          return {{"kind", "loglinear"}, {"lambda0", v.lambda0}, {"beta", v.beta}};
        } else {
          return {{"kind", "powerlaw"}, {"lambda0", v.lambda0}, {"shape", v.shape}};
        }
      },
      p.profile());
}

/// {"horizon": h, "components": [{"dist": {...}, "count": n, "label": s}]}
inline SuperpositionSpec superposition_from_json(const json &j) {
  SuperpositionSpec spec;
  spec.horizon = j.contains("horizon") ? detail::number(j, "horizon") : 0.0;
  for (const json &c : detail::field(j, "components")) {
    const DistributionSpec d = distribution_from_json(detail::field(c, "dist"));
    const auto count =
        c.contains("count") ? c.at("count").get<std::int64_t>() : 1;
    if (count < 1) {
      throw FormatError("component count must be >= 1");
    }
    std::optional<std::string> label;
    if (c.contains("label")) {
      label = c.at("label").get<std::string>();
    }
    for (std::int64_t k = 0; k < count; ++k) {
      spec.components.push_back({d, label});
    }
  }
  return spec;
}

/*
 * {"states": [...], "P": [[...]], "sojourn": [dist, ...],
 *  "module_rate": [...], "transfer_fail": [[...]]}
 */
inline SemiMarkovModel semi_markov_from_json(const json &j) {
  SemiMarkovModel m;
  m.states = detail::field(j, "states").get<std::vector<std::string>>();
  m.transition = detail::field(j, "P").get<Matrix>();
  for (const json &d : detail::field(j, "sojourn")) {
    m.sojourn.push_back(distribution_from_json(d));
  }
  m.module_rate = detail::field(j, "module_rate").get<std::vector<double>>();
  m.transfer_fail = detail::field(j, "transfer_fail").get<Matrix>();
  m.validate();
  return m;
}

inline json to_json(const SemiMarkovModel &m) {
  json sojourn = json::array();
  for (const auto &d : m.sojourn) {
    sojourn.push_back(to_json(d));
  }
  return {{"states", m.states},
          {"P", m.transition},
          {"sojourn", sojourn},
          {"module_rate", m.module_rate},
          {"transfer_fail", m.transfer_fail}};
}

inline json to_json(const TestResult &r) {
  json params = json::object();
  for (const auto &[k, v] : r.parameters) {
    params[k] = v;
  }
  return {{"statistic", detail::nullable(r.statistic)},
          {"p_value", detail::nullable(r.p_value)},
          {"verdict", to_string(r.verdict)},
          {"method", r.method},
          {"details", r.details},
          {"parameters", params}};
}

inline json to_json(const AssumptionReport &rep) {
  json j;
  j["proportionality"] = to_json(rep.proportionality);
  j["singularity"] = to_json(rep.singularity);
  j["homogeneity"] = to_json(rep.homogeneity);
  j["independence"] = to_json(rep.independence);
  j["overall"] = rep.overall ? "pass" : "fail";
  j["events"] = rep.events;
  j["window_end"] = rep.window_end;
  j["significance_per_test"] = rep.config.per_test_significance();
  j["bonferroni"] = rep.config.bonferroni;
  j["mapping"] = kAssumptionMapping;
  return j;
}

inline Checklist checklist_from_json(const json &j) {
  Checklist c{
      detail::flag(j, "representative_environment"),
      detail::flag(j, "similar_environments_all_units"),
      detail::flag(j, "components_similar"),
      detail::flag(j, "all_failures_recorded"),
      detail::flag(j, "all_lifetimes_recorded"),
      detail::flag(j, "no_unrecorded_modifications"),
      j.contains("notes") ? j.at("notes").get<std::string>() : std::string()};
  return c;
}

inline json to_json(const Checklist &c) {
  json j;
  for (const auto &[name, ok] : c.flags()) {
    j[name] = ok;
  }
  j["notes"] = c.notes;
  return j;
}

/*
 * One line of a fleet log:
 * {"unit_id": "U1",
 *  "intervals": [{"start": 0, "end": 100, "version": "A"}],
 *  "out_of_service": [{"start": 50, "end": 60}],
 *  "failures": [{"time": 10, "dangerous": true, "description": "..."}]}
 * "out_of_service" and "failures" may be omitted when empty; "version"
 * defaults to "".
 */
inline ServiceRecord service_record_from_json(const json &j) {
  ServiceRecord rec;
  rec.unit_id = detail::field(j, "unit_id").get<std::string>();
  for (const json &iv : detail::field(j, "intervals")) {
    rec.intervals.push_back(
        {detail::number(iv, "start"), detail::number(iv, "end"),
         iv.contains("version") ? iv.at("version").get<std::string>() : ""});
  }
  if (j.contains("out_of_service")) {
    for (const json &ex : j.at("out_of_service")) {
      rec.out_of_service.push_back(
          {detail::number(ex, "start"), detail::number(ex, "end")});
    }
  }
  if (j.contains("failures")) {
    for (const json &f : j.at("failures")) {
      rec.failures.push_back(
          {detail::number(f, "time"), detail::flag(f, "dangerous"),
           f.contains("description") ? f.at("description").get<std::string>()
                                     : ""});
    }
  }
  return rec;
}

inline json to_json(const ServiceRecord &rec) {
  json intervals = json::array();
  for (const auto &iv : rec.intervals) {
    intervals.push_back({{"start", iv.start}, {"end", iv.end}, {"version", iv.version}});
  }
  json oos = json::array();
  for (const auto &ex : rec.out_of_service) {
    oos.push_back({{"start", ex.start}, {"end", ex.end}});
  }
  json failures = json::array();
  for (const auto &f : rec.failures) {
    failures.push_back({{"time", f.time},
                        {"dangerous", f.dangerous},
                        {"description", f.description}});
  }
  return {{"unit_id", rec.unit_id},
          {"intervals", intervals},
          {"out_of_service", oos},
          {"failures", failures}};
}

/// JSON Lines fleet log; schema errors carry the 1-based line number.
inline FleetLog read_fleet_jsonl(std::istream &is) {
  FleetLog fleet;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (io::detail::trim(line).empty()) {
      continue;
    }
    try {
      ServiceRecord rec = service_record_from_json(json::parse(line));
      rec.validate();
      fleet.records.push_back(std::move(rec));
    } catch (const FormatError &e) {
      throw FormatError(e.what(), lineno);
    } catch (const json::exception &e) {
      throw FormatError(e.what(), lineno);
    } catch (const EvidenceError &e) {
      throw FormatError(e.what(), lineno);
    }
  }
  try {
    fleet.validate();
  } catch (const EvidenceError &e) {
    throw FormatError(e.what());
  }
  return fleet;
}

/*
 * Key-value band table:
 *   version = <name>
 *   sil1_below = 1e-5   (likewise sil2_below, sil3_below, sil4_below)
 * '#' starts a comment. All four thresholds are required.
 */
inline SilBands read_sil_bands(std::istream &is) {
  SilBands bands;
  bool seen[4] = {false, false, false, false};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    line = io::detail::trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("expected key = value", lineno);
    }
    const std::string key = io::detail::trim(line.substr(0, eq));
    const std::string value = io::detail::trim(line.substr(eq + 1));
    if (key == "version") {
      bands.version = value;
      continue;
    }
    bool known = false;
    for (int k = 0; k < 4; ++k) {
      if (key == "sil" + std::to_string(k + 1) + "_below") {
        bands.upper[static_cast<std::size_t>(k)] =
            io::detail::parse_double(value, lineno);
        seen[k] = true;
        known = true;
      }
    }
    if (!known) {
      throw FormatError("unknown key '" + key + "'", lineno);
    }
  }
  for (int k = 0; k < 4; ++k) {
    if (!seen[k]) {
      throw FormatError("missing sil" + std::to_string(k + 1) + "_below");
    }
  }
  bands.validate();
  return bands;
}

inline json to_json(const ClaimResult &c) {
  return {{"exposure_hours", c.exposure_hours},
          {"dangerous_failures", c.dangerous_failures},
          {"non_dangerous_failures", c.non_dangerous_failures},
          {"confidence", c.confidence},
          {"rate_upper_bound", c.rate_upper_bound},
          {"sil", static_cast<int>(c.sil)},
          {"sil_label", to_string(c.sil)},
          {"valid", c.valid},
          {"en50129_sil34_recommendation_met", c.en50129_sil34_recommendation_met},
          {"years_experience", c.years_experience},
          {"distinct_equipments", c.distinct_equipments},
          {"version", c.version ? json(*c.version) : json(nullptr)},
          {"band_table_version", c.band_table_version},
          {"audit", c.audit}};
}

} // namespace piu::io

#endif // PIU_IO_JSON_HPP_
