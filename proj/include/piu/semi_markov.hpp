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


#ifndef PIU_SEMI_MARKOV_HPP_
#define PIU_SEMI_MARKOV_HPP_

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "piu/distribution.hpp"
#include "piu/renewal.hpp"
#include "piu/rng.hpp"
#include "piu/timeline.hpp"

namespace piu {

using Matrix = std::vector<std::vector<double>>;

namespace detail {

inline void require_square(const Matrix &m, std::size_t n, const char *what) {
  if (m.size() != n) {
    throw std::invalid_argument(std::string(what) + " must have " +
                                std::to_string(n) + " rows");
  }
  for (const auto &row : m) {
    if (row.size() != n) {
      throw std::invalid_argument(std::string(what) + " must be square");
    }
  }
}

inline bool all_reachable(const Matrix &p, bool transpose) {
  const std::size_t n = p.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      const double w = transpose ? p[j][i] : p[i][j];
      if (w > 0.0 && !seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  for (bool s : seen) {
    if (!s) {
      return false;
    }
  }
  return true;
}

inline double stationary_residual(const Matrix &p, const std::vector<double> &pi) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      acc += pi[i] * p[i][j];
    }
    worst = std::max(worst, std::fabs(acc - pi[j]));
  }
  return worst;
}

} // namespace detail

/// Throws unless p is square, row-stochastic within 1e-9, and irreducible.
inline void validate_transition_matrix(const Matrix &p) {
  if (p.empty()) {
    throw std::invalid_argument("transition matrix is empty");
  }
  detail::require_square(p, p.size(), "transition matrix");
  for (std::size_t i = 0; i < p.size(); ++i) {
    double sum = 0.0;
    for (double x : p[i]) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("transition probabilities must be in [0,1]");
      }
      sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " of the transition matrix does not sum to 1");
    }
  }
  if (!detail::all_reachable(p, false) || !detail::all_reachable(p, true)) {
    throw std::invalid_argument("embedded chain is reducible");
  }
}

/*
 * Stationary law of the embedded chain: solves pi (P - I) = 0 with one
 * balance equation replaced by sum(pi) = 1. Falls back to power iteration
 * on the lazy chain (P + I) / 2 if the direct solve misses the residual
 * target.
 */
inline std::vector<double> stationary_embedded(const Matrix &p) {
  validate_transition_matrix(p);
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(j, i) = p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                (i == j ? 1.0 : 0.0);
    }
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd x = a.fullPivLu().solve(rhs);

  std::vector<double> pi(p.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    pi[i] = std::max(0.0, x(static_cast<Eigen::Index>(i)));
    sum += pi[i];
  }
  for (auto &v : pi) {
    v /= sum;
  }
  if (detail::stationary_residual(p, pi) < 1e-12) {
    return pi;
  }
  for (int it = 0; it < 1000000; ++it) {
    std::vector<double> next(pi.size(), 0.0);
    for (std::size_t i = 0; i < pi.size(); ++i) {
      for (std::size_t j = 0; j < pi.size(); ++j) {
        next[j] += 0.5 * pi[i] * (p[i][j] + (i == j ? 1.0 : 0.0));
      }
    }
    pi = std::move(next);
    if (detail::stationary_residual(p, pi) < 1e-12) {
      break;
    }
  }
  if (detail::stationary_residual(p, pi) >= 1e-10) {
    throw std::runtime_error("stationary distribution did not converge");
  }
  return pi;
}

/*
 * Program structure as a semi-Markov process: modules are states, control
 * moves by the embedded matrix P, and each sojourn in module i exposes the
 * program to a Poisson failure process of rate module_rate[i]. Handing
 * control from i to j fails with probability transfer_fail[i][j].
 */
struct SemiMarkovModel {
  std::vector<std::string> states;
  Matrix transition;
  std::vector<DistributionSpec> sojourn;
  std::vector<double> module_rate;
  Matrix transfer_fail;

  std::size_t size() const { return states.size(); }

  void validate() const {
    const std::size_t n = states.size();
    if (n == 0) {
      throw std::invalid_argument("model has no states");
    }
    detail::require_square(transition, n, "P");
    if (sojourn.size() != n || module_rate.size() != n) {
      throw std::invalid_argument(
          "sojourn and module_rate need one entry per state");
    }
    detail::require_square(transfer_fail, n, "transfer_fail");
    for (double r : module_rate) {
      if (!(std::isfinite(r) && r >= 0.0)) {
        throw std::invalid_argument("module_rate entries must be >= 0");
      }
    }
    for (const auto &row : transfer_fail) {
      for (double q : row) {
        if (!(q >= 0.0 && q <= 1.0)) {
          throw std::invalid_argument("transfer_fail entries must be in [0,1]");
        }
      }
    }
    validate_transition_matrix(transition);
  }
};

/*
 * Long-run failures per hour by renewal-reward over the embedded chain:
 *   (sum_i pi_i m_i lambda_i + sum_i pi_i sum_j P_ij q_ij) / sum_i pi_i m_i
 * with m_i the mean sojourn in module i.
 */
inline double asymptotic_failure_rate(const SemiMarkovModel &model) {
  model.validate();
  const std::vector<double> pi = stationary_embedded(model.transition);
  double failures_per_visit = 0.0;
  double time_per_visit = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double m = mean_of(model.sojourn[i]);
    time_per_visit += pi[i] * m;
    double transfer = 0.0;
    for (std::size_t j = 0; j < model.size(); ++j) {
      transfer += model.transition[i][j] * model.transfer_fail[i][j];
    }
    failures_per_visit += pi[i] * (m * model.module_rate[i] + transfer);
  }
  return failures_per_visit / time_per_visit;
}

/*
 * Failure timeline of the modular program over (0, horizon]. The initial
 * module is drawn from the embedded stationary law. Failures do not reset
 * the control state; the program carries on in place.
 */
inline EventTimeline simulate_modular(const SemiMarkovModel &model,
                                      double horizon, RngStream &rng) {
  require_horizon(horizon);
  model.validate();
  const std::size_t n = model.size();
  const std::vector<double> pi = stationary_embedded(model.transition);
  Matrix cumulative(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += model.transition[i][j];
      cumulative[i][j] = acc;
    }
    cumulative[i][n - 1] = 1.0;
  }
  std::vector<double> pi_cumulative(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += pi[i];
    pi_cumulative[i] = acc;
  }
  pi_cumulative[n - 1] = 1.0;

  std::vector<double> events;
  std::size_t state = rng.categorical(pi_cumulative);
  double now = 0.0;
  while (now < horizon) {
    const double leave = now + sample(model.sojourn[state], rng);
    const double lambda = model.module_rate[state];
    if (lambda > 0.0) {
      double t = now + rng.exponential() / lambda;
      const double stop = std::min(leave, horizon);
      while (t < stop) {
        events.push_back(t);
        t += rng.exponential() / lambda;
      }
    }
    if (leave > horizon) {
      break;
    }
    const std::size_t next = rng.categorical(cumulative[state]);
    const double q = model.transfer_fail[state][next];
    if (q > 0.0 && rng.bernoulli(q)) {
      events.push_back(leave);
    }
    state = next;
    now = leave;
  }
  return EventTimeline(horizon, std::move(events));
}

struct RarityThresholds {
  double module = 0.01;   // lambda_i * m_i, expected failures per visit
  double transfer = 0.01; // q_ij
};

struct RarityDiagnostic {
  std::string message;
  double value = 0.0;
};

/*
 * Flags modules whose expected failures per visit exceed the threshold and
 * possible transfers whose failure probability does. An empty result means
 * failures are rare against the switching rate.
 */
inline std::vector<RarityDiagnostic>
rarity_warning(const SemiMarkovModel &model,
               const RarityThresholds &thresholds = {}) {
  model.validate();
  std::vector<RarityDiagnostic> out;
  char buf[256];
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double load = model.module_rate[i] * mean_of(model.sojourn[i]);
    if (load > thresholds.module) {
      std::snprintf(buf, sizeof buf,
                    "module '%s': failure rate x mean sojourn = %.6g exceeds %.6g",
                    model.states[i].c_str(), load, thresholds.module);
      out.push_back({buf, load});
    }
  }
  for (std::size_t i = 0; i < model.size(); ++i) {
    for (std::size_t j = 0; j < model.size(); ++j) {
      const double q = model.transfer_fail[i][j];
      if (model.transition[i][j] > 0.0 && q > thresholds.transfer) {
        std::snprintf(buf, sizeof buf,
                      "transfer '%s' -> '%s': failure probability %.6g exceeds %.6g",
                      model.states[i].c_str(), model.states[j].c_str(), q,
                      thresholds.transfer);
        out.push_back({buf, q});
      }
    }
  }
  return out;
}

} // namespace piu

#endif // PIU_SEMI_MARKOV_HPP_
