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


#ifndef PIU_SUPERPOSITION_HPP_
#define PIU_SUPERPOSITION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "piu/distribution.hpp"
#include "piu/renewal.hpp"
#include "piu/rng.hpp"
#include "piu/timeline.hpp"
#include "piu/validators.hpp"

namespace piu {

/// Activation process of one latent fault.
struct ComponentSpec {
  DistributionSpec dist;
  std::optional<std::string> label;
};

struct SuperpositionSpec {
  std::vector<ComponentSpec> components;
  double horizon = 0.0;

  void validate() const {
    if (components.empty()) {
      throw std::invalid_argument("superposition needs at least one component");
    }
    require_horizon(horizon);
  }
};

/// Limiting Poisson intensity: sum of reciprocal component means.
inline double grigelionis_intensity(std::span<const double> component_means) {
  if (component_means.empty()) {
    throw std::invalid_argument("no component means given");
  }
  double lambda = 0.0;
  for (double a : component_means) {
    if (!(std::isfinite(a) && a > 0.0)) {
      throw std::invalid_argument("component means must be finite and > 0");
    }
    lambda += 1.0 / a;
  }
  return lambda;
}

/*
 * Merged, sorted union of the input events. Exact ties are ordered by
 * component index, so the result does not depend on input order.
 */
inline EventTimeline superpose(std::span<const EventTimeline> timelines) {
  if (timelines.empty()) {
    throw std::invalid_argument("superpose needs at least one timeline");
  }
  const double window = timelines.front().window_end();
  std::size_t total = 0;
  for (const auto &t : timelines) {
    if (t.window_end() != window) {
      throw std::invalid_argument("superpose: mismatched observation windows");
    }
    total += t.size();
  }
  std::vector<double> merged;
  merged.reserve(total);
  for (const auto &t : timelines) {
    merged.insert(merged.end(), t.events().begin(), t.events().end());
  }
  std::sort(merged.begin(), merged.end());
  return EventTimeline(window, std::move(merged));
}

struct SuperpositionResult {
  EventTimeline timeline;
  double theoretical_rate;
};

/*
 * Simulates every component on its own child stream (derive(i)) and merges.
 * Components start in equilibrium, so each is a stationary renewal process
 * with E[X_i(t)] = t / a_i for every t, not only asymptotically.
 */
inline SuperpositionResult simulate_superposition(const SuperpositionSpec &spec,
                                                  const RngStream &rng) {
  spec.validate();
  std::vector<EventTimeline> parts;
  std::vector<double> means;
  parts.reserve(spec.components.size());
  means.reserve(spec.components.size());
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    RngStream child = rng.derive(i);
    parts.push_back(simulate_renewal(spec.components[i].dist, spec.horizon,
                                     child, RenewalStart::equilibrium));
    means.push_back(mean_of(spec.components[i].dist));
  }
  return {superpose(parts), grigelionis_intensity(means)};
}

/*
 * Discrete-time walk that lands in the fault set with probability p_fault
 * at each step, independently. Hits at step s (1-based) are reported at
 * time s * step_duration. Gaps between hits are geometric, so they are
 * drawn directly by inversion instead of stepping through every state.
 */
inline EventTimeline rare_event_hitting(double p_fault, std::uint64_t n_steps,
                                        double step_duration, RngStream &rng) {
  if (!(p_fault > 0.0 && p_fault < 1.0)) {
    throw std::invalid_argument("p_fault must lie in (0, 1)");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("n_steps must be >= 1");
  }
  if (!(std::isfinite(step_duration) && step_duration > 0.0)) {
    throw std::invalid_argument("step_duration must be finite and > 0");
  }
  const double log_miss = std::log1p(-p_fault);
  std::vector<double> events;
  std::uint64_t step = 0;
  for (;;) {
    const double g = std::floor(std::log(rng.uniform()) / log_miss) + 1.0;
    if (g > static_cast<double>(n_steps - step)) {
      break;
    }
    step += static_cast<std::uint64_t>(g);
    events.push_back(static_cast<double>(step) * step_duration);
  }
  return EventTimeline(static_cast<double>(n_steps) * step_duration,
                       std::move(events));
}

/// Template for a convergence study: n copies share the total intensity.
struct ConvergenceTemplate {
  DistributionSpec component_law;
  double total_rate = 1.0;
  double horizon = 0.0;
};

struct ConvergenceRow {
  std::size_t n = 0;
  std::size_t replications = 0;
  double pass_fraction = 0.0;
  double empirical_rate_mean = 0.0;
  double theoretical_rate = 0.0;
};

/// The n-component spec with every component mean equal to n / total_rate.
inline SuperpositionSpec spec_for_n(const ConvergenceTemplate &tmpl,
                                    std::size_t n) {
  if (n < 1) {
    throw std::invalid_argument("component count must be >= 1");
  }
  const DistributionSpec law =
      with_mean(tmpl.component_law, static_cast<double>(n) / tmpl.total_rate);
  return SuperpositionSpec{std::vector<ComponentSpec>(n, ComponentSpec{law, {}}),
                           tmpl.horizon};
}

/*
 * For each n, runs `replications` superpositions of n components with the
 * total intensity held fixed (uniform negligibility: each component's
 * chance of an event in a bounded window shrinks like 1/n) and records the
 * fraction whose merged timeline passes the whole assumption suite.
 * Replication r of the i-th n uses rng.derive(i).derive(2r) for simulation
 * and derive(2r + 1) for the bootstrap.
 */
inline std::vector<ConvergenceRow>
convergence_study(const ConvergenceTemplate &tmpl,
                  std::span<const std::size_t> n_values,
                  std::size_t replications, const SuiteConfig &suite,
                  const RngStream &rng) {
  if (tmpl.component_law.is<law::Degenerate>()) {
    throw std::invalid_argument(
        "degenerate component laws are not allowed in convergence studies");
  }
  if (!(std::isfinite(tmpl.total_rate) && tmpl.total_rate > 0.0)) {
    throw std::invalid_argument("total_rate must be finite and > 0");
  }
  require_horizon(tmpl.horizon);
  std::vector<ConvergenceRow> rows;
  if (replications == 0) {
    return rows;
  }
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const SuperpositionSpec spec = spec_for_n(tmpl, n_values[i]);
    const RngStream level = rng.derive(i);
    std::size_t passes = 0;
    double rate_sum = 0.0;
    double theoretical = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      const auto sim = simulate_superposition(spec, level.derive(2 * r));
      RngStream boot = level.derive(2 * r + 1);
      theoretical = sim.theoretical_rate;
      rate_sum += static_cast<double>(sim.timeline.size()) / tmpl.horizon;
      if (assess_poisson(sim.timeline, suite, boot).overall) {
        ++passes;
      }
    }
    const auto reps = static_cast<double>(replications);
    rows.push_back({n_values[i], replications, passes / reps, rate_sum / reps,
                    theoretical});
  }
  return rows;
}

} // namespace piu

#endif // PIU_SUPERPOSITION_HPP_
