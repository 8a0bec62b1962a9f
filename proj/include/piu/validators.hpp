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


#ifndef PIU_VALIDATORS_HPP_
#define PIU_VALIDATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "piu/rng.hpp"
#include "piu/special.hpp"
#include "piu/timeline.hpp"

namespace piu {

enum class Verdict { pass, fail, insufficient_data };

inline const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  default:
    return "insufficient_data";
  }
}

struct TestResult {
  std::string name;
  std::string method;
  std::optional<double> statistic;
  std::optional<double> p_value;
  Verdict verdict = Verdict::insufficient_data;
  std::string details;
  std::map<std::string, double> parameters;

  bool passed() const { return verdict == Verdict::pass; }
};

namespace detail {

inline Verdict verdict_for(double p_value, double significance) {
  return p_value >= significance ? Verdict::pass : Verdict::fail;
}

inline void require_significance(double significance) {
  if (!(significance > 0.0 && significance < 1.0)) {
    throw std::invalid_argument("significance must lie in (0, 1)");
  }
}

// Kolmogorov-Smirnov distance between sorted positive data and the
// exponential law with rate n / sum(data).
inline double ks_exponential_sorted(const std::vector<double> &sorted,
                                    double sum) {
  const double n = static_cast<double>(sorted.size());
  const double rate = n / sum;
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = -std::expm1(-rate * sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(above, below));
  }
  return d;
}

} // namespace detail

/*
 * Laplace trend test for a constant intensity on (0, T].
 * U = (sum t_i - n T / 2) / (T sqrt(n / 12)) is standard normal under a
 * homogeneous Poisson process; both tails reject.
 */
inline TestResult laplace_trend_test(const EventTimeline &t,
                                     double significance = 0.05) {
  detail::require_significance(significance);
  TestResult r;
  r.name = "homogeneity";
  r.method = "laplace_trend";
  r.parameters["significance"] = significance;
  const std::size_t n = t.size();
  r.parameters["n"] = static_cast<double>(n);
  const double T = t.window_end();
  const double sum = std::accumulate(t.events().begin(), t.events().end(), 0.0);
  const double nd = static_cast<double>(n);
  if (n >= 1) {
    r.statistic = (sum - nd * T / 2.0) / (T * std::sqrt(nd / 12.0));
  }
  if (n < 3) {
    r.verdict = Verdict::insufficient_data;
    r.details = "insufficient data: need at least 3 events, have " +
                std::to_string(n);
    return r;
  }
  r.p_value = normal_two_sided_p(*r.statistic);
  r.verdict = detail::verdict_for(*r.p_value, significance);
  r.details = r.passed() ? "no trend in intensity detected"
                         : (*r.statistic > 0 ? "increasing intensity"
                                             : "decreasing intensity");
  return r;
}

/*
 * Exponential goodness of fit for the inter-event gaps (first gap from 0).
 * The statistic is the KS distance to the exponential law with the fitted
 * rate n / sum(gaps). Because the rate is estimated, the p-value comes from
 * a parametric bootstrap: the statistic is scale-free, so resamples are
 * unit-rate exponential samples of the same size, drawn directly in sorted
 * order through the Renyi representation.
 * p = (1 + #{D* >= D}) / (resamples + 1).
 */
inline TestResult exp_gof_test(const EventTimeline &t, double significance,
                               int resamples, RngStream &rng) {
  detail::require_significance(significance);
  if (resamples < 1) {
    throw std::invalid_argument("exp_gof_test needs at least one resample");
  }
  TestResult r;
  r.name = "proportionality";
  r.method = "exponential_ks_parametric_bootstrap";
  r.parameters["significance"] = significance;
  r.parameters["resamples"] = resamples;
  const std::size_t n = t.size();
  r.parameters["n"] = static_cast<double>(n);
  if (n < 5) {
    r.verdict = Verdict::insufficient_data;
    r.details = "insufficient data: need at least 5 gaps, have " +
                std::to_string(n);
    return r;
  }
  std::vector<double> gaps = t.gaps();
  std::sort(gaps.begin(), gaps.end());
  const double sum = t.events().back();
  if (!(sum > 0.0)) {
    r.verdict = Verdict::insufficient_data;
    r.details = "insufficient data: zero total gap length";
    return r;
  }
  const double d = detail::ks_exponential_sorted(gaps, sum);
  r.statistic = d;

  std::vector<double> boot(n);
  int exceed = 0;
  for (int b = 0; b < resamples; ++b) {
    double acc = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = rng.exponential();
      total += z;
      acc += z / static_cast<double>(n - i);
      boot[i] = acc;
    }
    if (detail::ks_exponential_sorted(boot, total) >= d) {
      ++exceed;
    }
  }
  r.p_value = (1.0 + exceed) / (1.0 + resamples);
  r.verdict = detail::verdict_for(*r.p_value, significance);
  r.details = r.passed() ? "gaps consistent with exponential law"
                         : "gaps not exponential";
  return r;
}

/*
 * Index-of-dispersion test on k equal bins of (0, T]. Bin j covers
 * (jT/k, (j+1)T/k]. D = sum (c_j - mean)^2 / mean ~ chi-square(k - 1);
 * over- and under-dispersion both reject, p = 2 min(F(D), 1 - F(D)).
 */
inline TestResult dispersion_test(const EventTimeline &t, int k_bins,
                                  double significance = 0.05) {
  if (k_bins < 2) {
    throw std::invalid_argument("dispersion_test needs k_bins >= 2");
  }
  detail::require_significance(significance);
  TestResult r;
  r.name = "independence";
  r.method = "index_of_dispersion";
  r.parameters["significance"] = significance;
  r.parameters["k_bins"] = k_bins;
  r.parameters["n"] = static_cast<double>(t.size());
  if (t.empty()) {
    r.verdict = Verdict::insufficient_data;
    r.details = "insufficient data: empty timeline";
    return r;
  }
  std::vector<double> counts(static_cast<std::size_t>(k_bins), 0.0);
  const double T = t.window_end();
  for (double x : t.events()) {
    auto j = static_cast<long>(std::ceil(x * k_bins / T)) - 1;
    j = std::clamp<long>(j, 0, k_bins - 1);
    counts[static_cast<std::size_t>(j)] += 1.0;
  }
  const double mean = static_cast<double>(t.size()) / k_bins;
  double d = 0.0;
  for (double c : counts) {
    d += (c - mean) * (c - mean);
  }
  d /= mean;
  r.statistic = d;
  const double df = k_bins - 1;
  const double lower = chi_square_cdf(df, d);
  const double upper = chi_square_sf(df, d);
  r.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
  r.verdict = detail::verdict_for(*r.p_value, significance);
  if (r.passed()) {
    r.details = "bin counts consistent with Poisson dispersion";
  } else {
    r.details = lower < upper ? "under-dispersed (too regular)"
                              : "over-dispersed (clustered)";
  }
  if (mean < 5.0) {
    r.details += "; warning: expected count per bin below 5";
  }
  return r;
}

/// Passes iff every gap between consecutive events exceeds epsilon.
inline TestResult singularity_check(const EventTimeline &t, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("epsilon must be >= 0");
  }
  TestResult r;
  r.name = "singularity";
  r.method = "minimum_gap";
  r.parameters["epsilon"] = epsilon;
  r.parameters["n"] = static_cast<double>(t.size());
  if (t.size() < 2) {
    r.verdict = Verdict::pass;
    r.details = "fewer than two events, nothing coincident";
    return r;
  }
  const auto &ev = t.events();
  double min_gap = ev[1] - ev[0];
  for (std::size_t i = 2; i < ev.size(); ++i) {
    min_gap = std::min(min_gap, ev[i] - ev[i - 1]);
  }
  r.statistic = min_gap;
  r.verdict = min_gap > epsilon ? Verdict::pass : Verdict::fail;
  r.details = r.passed() ? "no coincident events"
                         : "coincident events within epsilon";
  return r;
}

struct SuiteConfig {
  double significance = 0.05;
  int k_bins = 20;
  double epsilon = 1e-9;
  int resamples = 1000;
  // Divide the significance by the number of statistical tests (3).
  bool bonferroni = false;

  double per_test_significance() const {
    return bonferroni ? significance / 3.0 : significance;
  }
};

struct AssumptionReport {
  TestResult proportionality;
  TestResult singularity;
  TestResult homogeneity;
  TestResult independence;
  bool overall = false;
  SuiteConfig config;
  std::size_t events = 0;
  double window_end = 0.0;

  std::vector<const TestResult *> tests() const {
    return {&proportionality, &singularity, &homogeneity, &independence};
  }
};

inline const char *kAssumptionMapping =
    "homogeneity <- Laplace trend test; independence <- index of dispersion "
    "over equal bins; proportionality <- exponential KS of gaps with "
    "bootstrap p-value; singularity <- minimum gap > epsilon";

/// Runs all four assumption checks. Overall passes only if each one passes.
inline AssumptionReport assess_poisson(const EventTimeline &t,
                                       const SuiteConfig &config,
                                       RngStream &rng) {
  const double alpha = config.per_test_significance();
  AssumptionReport rep;
  rep.config = config;
  rep.events = t.size();
  rep.window_end = t.window_end();
  rep.homogeneity = laplace_trend_test(t, alpha);
  rep.independence = dispersion_test(t, config.k_bins, alpha);
  rep.proportionality = exp_gof_test(t, alpha, config.resamples, rng);
  rep.singularity = singularity_check(t, config.epsilon);
  rep.overall = rep.homogeneity.passed() && rep.independence.passed() &&
                rep.proportionality.passed() && rep.singularity.passed();
  return rep;
}

inline std::string format_number(std::optional<double> v) {
  if (!v) {
    return "n/a";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", *v);
  return buf;
}

/// Human-readable report, fixed order for diffing.
inline std::string to_text(const AssumptionReport &rep) {
  std::ostringstream os;
  os << "Poisson assumption report\n";
  os << "  events: " << rep.events
     << "  window_end_h: " << format_number(rep.window_end) << "\n";
  os << "  significance per test: "
     << format_number(rep.config.per_test_significance())
     << (rep.config.bonferroni ? " (Bonferroni)" : " (uncorrected)") << "\n";
  for (const TestResult *r : rep.tests()) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-16s %-18s statistic=%-12s p=%-10s ",
                  r->name.c_str(), to_string(r->verdict),
                  format_number(r->statistic).c_str(),
                  format_number(r->p_value).c_str());
    os << line << r->details << "\n";
  }
  os << "  overall: " << (rep.overall ? "pass" : "fail") << "\n";
  os << "  note: four tests at the same level inflate the family-wise error\n";
  return os.str();
}

} // namespace piu

#endif // PIU_VALIDATORS_HPP_
