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


#ifndef PIU_EVIDENCE_HPP_
#define PIU_EVIDENCE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "piu/special.hpp"

namespace piu {

/// Raised for fleet-log contents that cannot support an exposure count.
class EvidenceError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHoursPerYear = 8760.0;

struct ServiceInterval {
  double start = 0.0;
  double end = 0.0;
  std::string version;
};

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
};

struct FailureEvent {
  double time = 0.0;
  bool dangerous = false;
  std::string description;
};

/// Field history of one unit on a common clock, in hours.
struct ServiceRecord {
  std::string unit_id;
  std::vector<ServiceInterval> intervals;
  std::vector<TimeSpan> out_of_service;
  std::vector<FailureEvent> failures;

  // Interval index containing t outside any exclusion, if any.
  std::optional<std::size_t> interval_at(double t) const {
    for (const auto &ex : out_of_service) {
      if (t > ex.start && t < ex.end) {
        return std::nullopt;
      }
    }
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (t >= intervals[i].start && t <= intervals[i].end) {
        return i;
      }
    }
    return std::nullopt;
  }

  void validate() const {
    const std::string who = "unit '" + unit_id + "': ";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const auto &iv = intervals[i];
      if (!(std::isfinite(iv.start) && std::isfinite(iv.end) &&
            iv.start < iv.end)) {
        throw EvidenceError(who + "service interval must have start < end");
      }
      if (i > 0 && iv.start < intervals[i - 1].end) {
        throw EvidenceError(who + "service intervals overlap or are unordered");
      }
    }
    for (std::size_t k = 0; k < out_of_service.size(); ++k) {
      const auto &ex = out_of_service[k];
      if (!(ex.start < ex.end)) {
        throw EvidenceError(who + "out-of-service span must have start < end");
      }
      const bool nested = std::any_of(
          intervals.begin(), intervals.end(), [&](const ServiceInterval &iv) {
            return ex.start >= iv.start && ex.end <= iv.end;
          });
      if (!nested) {
        throw EvidenceError(who +
                            "out-of-service span not inside a service interval");
      }
      for (std::size_t m = 0; m < k; ++m) {
        const auto &other = out_of_service[m];
        if (ex.start < other.end && other.start < ex.end) {
          throw EvidenceError(who + "out-of-service spans overlap");
        }
      }
    }
    for (const auto &f : failures) {
      if (!interval_at(f.time)) {
        throw EvidenceError(who + "failure at t=" + std::to_string(f.time) +
                            " lies outside recorded service time");
      }
    }
  }
};

struct FleetLog {
  std::vector<ServiceRecord> records;

  void validate() const {
    std::set<std::string> ids;
    for (const auto &rec : records) {
      if (!ids.insert(rec.unit_id).second) {
        throw EvidenceError("duplicate unit_id '" + rec.unit_id + "'");
      }
      rec.validate();
    }
  }
};

struct Exposure {
  double hours = 0.0;               // T
  std::size_t dangerous = 0;        // r
  std::size_t non_dangerous = 0;    // kept for the audit trail
  std::size_t units = 0;            // units with positive exposure
  double first_start = 0.0;
  double last_end = 0.0;
  std::vector<std::string> versions;
};

/*
 * Exposure hours and dangerous-failure count for one component version.
 * Different versions are different components, so a fleet carrying more
 * than one version must be filtered.
 */
inline Exposure exposure(const FleetLog &fleet,
                         const std::optional<std::string> &version_filter = {}) {
  fleet.validate();
  std::set<std::string> versions;
  for (const auto &rec : fleet.records) {
    for (const auto &iv : rec.intervals) {
      versions.insert(iv.version);
    }
  }
  if (!version_filter && versions.size() > 1) {
    throw EvidenceError(
        "fleet mixes component versions; select one with a version filter");
  }
  Exposure out;
  out.versions.assign(versions.begin(), versions.end());
  out.first_start = std::numeric_limits<double>::infinity();
  out.last_end = -std::numeric_limits<double>::infinity();
  auto selected = [&](const ServiceInterval &iv) {
    return !version_filter || iv.version == *version_filter;
  };
  for (const auto &rec : fleet.records) {
    double unit_hours = 0.0;
    for (const auto &iv : rec.intervals) {
      if (!selected(iv)) {
        continue;
      }
      double h = iv.end - iv.start;
      for (const auto &ex : rec.out_of_service) {
        if (ex.start >= iv.start && ex.end <= iv.end) {
          h -= ex.end - ex.start;
        }
      }
      if (h > 0.0) {
        out.first_start = std::min(out.first_start, iv.start);
        out.last_end = std::max(out.last_end, iv.end);
      }
      unit_hours += h;
    }
    if (unit_hours > 0.0) {
      out.hours += unit_hours;
      ++out.units;
    }
    for (const auto &f : rec.failures) {
      const auto idx = rec.interval_at(f.time);
      if (idx && selected(rec.intervals[*idx])) {
        ++(f.dangerous ? out.dangerous : out.non_dangerous);
      }
    }
  }
  if (out.units == 0) {
    out.first_start = out.last_end = 0.0;
  }
  return out;
}

/*
 * One-sided upper confidence bound on a constant failure rate after r
 * failures in T hours: chi2(2r + 2; confidence) / (2T). For r = 0 this is
 * -ln(1 - confidence) / T, evaluated in closed form.
 */
inline double rate_upper_bound(double hours, std::size_t failures,
                               double confidence) {
  if (!(std::isfinite(hours) && hours > 0.0)) {
    throw std::invalid_argument("exposure hours must be finite and > 0");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  if (failures == 0) {
    return -std::log1p(-confidence) / hours;
  }
  return chi_square_quantile(static_cast<int>(2 * failures + 2), confidence) /
         (2.0 * hours);
}

enum class Sil { none = 0, sil1 = 1, sil2 = 2, sil3 = 3, sil4 = 4 };

inline std::string to_string(Sil s) {
  return s == Sil::none ? "none" : "SIL " + std::to_string(static_cast<int>(s));
}

/*
 * Dangerous-failure-rate bands per hour (high-demand / continuous mode).
 * upper[k] is the exclusive upper edge for SIL k+1.
 */
struct SilBands {
  std::string version = "iec61508-high-demand-pfh";
  std::array<double, 4> upper{1e-5, 1e-6, 1e-7, 1e-8};

  void validate() const {
    for (std::size_t k = 0; k < upper.size(); ++k) {
      if (!(upper[k] > 0.0) || (k > 0 && !(upper[k] < upper[k - 1]))) {
        throw std::invalid_argument(
            "SIL band edges must be positive and strictly decreasing");
      }
    }
  }
};

/// Highest SIL whose band lies strictly above the bound.
inline Sil sil_for_rate(double bound, const SilBands &bands = {}) {
  Sil sil = Sil::none;
  for (std::size_t k = 0; k < bands.upper.size(); ++k) {
    if (bound < bands.upper[k]) {
      sil = static_cast<Sil>(k + 1);
    }
  }
  return sil;
}

/// Recommended field experience for SIL 3/4 claims in railway signalling.
inline bool en50129_check(double hours, double years_experience,
                          double distinct_equipments) {
  if (hours < 0.0 || years_experience < 0.0 || distinct_equipments < 0.0) {
    throw std::invalid_argument("en50129_check inputs must be non-negative");
  }
  return hours >= 1e6 && years_experience >= 2.0 && distinct_equipments >= 2.0;
}

/// Qualitative preconditions; every flag must be set deliberately.
struct Checklist {
  bool representative_environment;
  bool similar_environments_all_units;
  bool components_similar;
  bool all_failures_recorded;
  bool all_lifetimes_recorded;
  bool no_unrecorded_modifications;
  std::string notes;

  std::vector<std::pair<const char *, bool>> flags() const {
    return {{"representative_environment", representative_environment},
            {"similar_environments_all_units", similar_environments_all_units},
            {"components_similar", components_similar},
            {"all_failures_recorded", all_failures_recorded},
            {"all_lifetimes_recorded", all_lifetimes_recorded},
            {"no_unrecorded_modifications", no_unrecorded_modifications}};
  }

  bool all_met() const {
    for (const auto &[name, ok] : flags()) {
      if (!ok) {
        return false;
      }
    }
    return true;
  }
};

struct ClaimResult {
  double exposure_hours = 0.0;
  std::size_t dangerous_failures = 0;
  std::size_t non_dangerous_failures = 0;
  double confidence = 0.95;
  double rate_upper_bound = 0.0;
  Sil sil = Sil::none;
  bool valid = false;
  bool en50129_sil34_recommendation_met = false;
  double years_experience = 0.0;
  std::size_t distinct_equipments = 0;
  std::optional<std::string> version;
  std::string band_table_version;
  std::vector<std::string> audit;
};

namespace detail {

inline std::string fmt_g(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

} // namespace detail

/*
 * Exposure -> rate bound -> SIL, gated by the checklist. A false flag
 * makes the claim invalid whatever the statistics say; the numbers are
 * still computed and recorded for the audit trail.
 */
inline ClaimResult evaluate_claim(const FleetLog &fleet,
                                  const Checklist &checklist,
                                  double confidence = 0.95,
                                  const std::optional<std::string> &version = {},
                                  const SilBands &bands = {}) {
  bands.validate();
  const Exposure exp = exposure(fleet, version);
  if (!(exp.hours > 0.0)) {
    throw EvidenceError("no exposure: fleet log has no in-service time" +
                        std::string(version ? " for version '" + *version + "'"
                                            : ""));
  }
  ClaimResult res;
  res.exposure_hours = exp.hours;
  res.dangerous_failures = exp.dangerous;
  res.non_dangerous_failures = exp.non_dangerous;
  res.confidence = confidence;
  res.version = version;
  res.band_table_version = bands.version;
  res.rate_upper_bound = rate_upper_bound(exp.hours, exp.dangerous, confidence);
  res.sil = sil_for_rate(res.rate_upper_bound, bands);
  res.years_experience = (exp.last_end - exp.first_start) / kHoursPerYear;
  res.distinct_equipments = exp.units;
  res.en50129_sil34_recommendation_met = en50129_check(
      exp.hours, res.years_experience, static_cast<double>(exp.units));

  auto &a = res.audit;
  a.push_back("exposure T = " + detail::fmt_g(exp.hours, 10) + " h over " +
              std::to_string(exp.units) + " unit(s)" +
              (version ? ", version '" + *version + "'" : ""));
  a.push_back("dangerous failures r = " + std::to_string(exp.dangerous) +
              "; non-dangerous failures retained, not counted: " +
              std::to_string(exp.non_dangerous));
  a.push_back("confidence = " + detail::fmt_g(confidence));
  a.push_back("rate upper bound = " + detail::fmt_g(res.rate_upper_bound) +
              " /h");
  a.push_back("band table '" + bands.version + "': SIL1 < " +
              detail::fmt_g(bands.upper[0]) + ", SIL2 < " +
              detail::fmt_g(bands.upper[1]) + ", SIL3 < " +
              detail::fmt_g(bands.upper[2]) + ", SIL4 < " +
              detail::fmt_g(bands.upper[3]) + " (upper edges excluded)");
  a.push_back("statistical SIL = " + to_string(res.sil));
  const double sil1_hours = -std::log1p(-confidence) / bands.upper[0];
  a.push_back("zero-failure exposure needed for SIL 1 = " +
              detail::fmt_g(sil1_hours) + " h; observed/needed = " +
              detail::fmt_g(exp.hours / sil1_hours, 4));
  for (const auto &[name, ok] : checklist.flags()) {
    a.push_back(std::string("checklist ") + name + ": " +
                (ok ? "met" : "NOT MET -> claim invalid"));
  }
  res.valid = checklist.all_met();
  a.push_back(std::string("gate: claim ") + (res.valid ? "valid" : "invalid"));
  a.push_back("EN 50129 SIL3/4 experience recommendation (>= 1e6 h, >= 2 y, "
              ">= 2 equipments): " +
              std::string(res.en50129_sil34_recommendation_met ? "met"
                                                               : "not met") +
              " (" + detail::fmt_g(res.years_experience, 4) + " y, " +
              std::to_string(exp.units) + " equipments)");
  return res;
}

inline std::string to_text(const ClaimResult &c) {
  std::ostringstream os;
  os << "Proven-in-use claim\n";
  os << "  exposure_hours: " << detail::fmt_g(c.exposure_hours, 10) << "\n";
  os << "  dangerous_failures: " << c.dangerous_failures << "\n";
  os << "  confidence: " << detail::fmt_g(c.confidence) << "\n";
  os << "  rate_upper_bound_per_h: " << detail::fmt_g(c.rate_upper_bound)
     << "\n";
  os << "  sil: " << to_string(c.sil) << "\n";
  os << "  valid: " << (c.valid ? "true" : "false") << "\n";
  os << "  en50129_sil34_recommendation_met: "
     << (c.en50129_sil34_recommendation_met ? "true" : "false") << "\n";
  os << "  audit:\n";
  for (const auto &line : c.audit) {
    os << "    - " << line << "\n";
  }
  return os.str();
}

} // namespace piu

#endif // PIU_EVIDENCE_HPP_
