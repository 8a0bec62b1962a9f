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


#ifndef PIU_NHPP_HPP_
#define PIU_NHPP_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "piu/renewal.hpp"
#include "piu/rng.hpp"
#include "piu/timeline.hpp"

namespace piu {

namespace intensity {

struct Constant {
  double lambda0;
};

// lambda(t) = lambda0 * exp(beta * t)
struct LogLinear {
  double lambda0;
  double beta;
};

// lambda(t) = lambda0 * shape * t^(shape - 1)
struct PowerLaw {
  double lambda0;
  double shape;
};

} // namespace intensity

/// Intensity law of a non-homogeneous Poisson process (1/h).
class IntensityProfile {
public:
  using Variant = std::variant<intensity::Constant, intensity::LogLinear,
                               intensity::PowerLaw>;

  static IntensityProfile constant(double lambda0) {
    return IntensityProfile(intensity::Constant{lambda0});
  }
  static IntensityProfile loglinear(double lambda0, double beta) {
    return IntensityProfile(intensity::LogLinear{lambda0, beta});
  }
  static IntensityProfile powerlaw(double lambda0, double shape) {
    return IntensityProfile(intensity::PowerLaw{lambda0, shape});
  }

  explicit IntensityProfile(Variant v) : profile_(v) {
    std::visit(
        [](const auto &p) {
          using P = std::decay_t<decltype(p)>;
          if (!(std::isfinite(p.lambda0) && p.lambda0 > 0.0)) {
            throw std::invalid_argument("lambda0 must be finite and > 0");
          }
          if constexpr (std::is_same_v<P, intensity::LogLinear>) {
            if (!std::isfinite(p.beta)) {
              throw std::invalid_argument("beta must be finite");
            }
          } else if constexpr (std::is_same_v<P, intensity::PowerLaw>) {
            if (!(std::isfinite(p.shape) && p.shape > 0.0)) {
              throw std::invalid_argument("shape must be finite and > 0");
            }
          }
        },
        profile_);
  }

  const Variant &profile() const { return profile_; }

  std::string kind() const {
    switch (profile_.index()) {
    case 0:
      return "constant";
    case 1:
      return "loglinear";
    default:
      return "powerlaw";
    }
  }

  double rate(double t) const {
    return std::visit(
        [t](const auto &p) -> double {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, intensity::Constant>) {
            return p.lambda0;
          } else if constexpr (std::is_same_v<P, intensity::LogLinear>) {
            return p.lambda0 * std::exp(p.beta * t);
          } else {
            return p.lambda0 * p.shape * std::pow(t, p.shape - 1.0);
          }
        },
        profile_);
  }

  // Integral of the intensity over [0, t].
  double cumulative(double t) const {
    return std::visit(
        [t](const auto &p) -> double {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, intensity::Constant>) {
            return p.lambda0 * t;
          } else if constexpr (std::is_same_v<P, intensity::LogLinear>) {
            if (p.beta == 0.0) {
              return p.lambda0 * t;
            }
            return p.lambda0 * std::expm1(p.beta * t) / p.beta;
          } else {
            return p.lambda0 * std::pow(t, p.shape);
          }
        },
        profile_);
  }

  // Smallest t with cumulative(t) = s; +inf when s is never reached.
  double inverse_cumulative(double s) const {
    return std::visit(
        [s](const auto &p) -> double {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, intensity::Constant>) {
            return s / p.lambda0;
          } else if constexpr (std::is_same_v<P, intensity::LogLinear>) {
            if (p.beta == 0.0) {
              return s / p.lambda0;
            }
            const double arg = p.beta * s / p.lambda0;
            if (arg <= -1.0) {
              return std::numeric_limits<double>::infinity();
            }
            return std::log1p(arg) / p.beta;
          } else {
            return std::pow(s / p.lambda0, 1.0 / p.shape);
          }
        },
        profile_);
  }

private:
  Variant profile_;
};

// Generation method recorded in run metadata.
inline constexpr const char *kNhppMethodInverse = "inverse-time-transform";
inline constexpr const char *kNhppMethodThinning = "thinning";

/*
 * NHPP by inverse time-transform: unit-rate Poisson arrivals s_k on
 * [0, Lambda(horizon)] mapped through Lambda^-1. Every supported profile
 * has a closed-form cumulative intensity, so this is the method used for
 * IntensityProfile.
 */
inline EventTimeline simulate_nhpp(const IntensityProfile &profile,
                                   double horizon, RngStream &rng) {
  require_horizon(horizon);
  const double total = profile.cumulative(horizon);
  if (!std::isfinite(total)) {
    throw std::invalid_argument("cumulative intensity is not finite on window");
  }
  std::vector<double> events;
  double s = rng.exponential();
  while (s <= total) {
    double t = profile.inverse_cumulative(s);
    t = std::min(t, horizon);
    if (!events.empty() && t < events.back()) {
      t = events.back();
    }
    if (t > 0.0) {
      events.push_back(t);
    }
    s += rng.exponential();
  }
  return EventTimeline(horizon, std::move(events));
}

/*
 * Lewis-Shedler thinning for an arbitrary intensity bounded by
 * `rate_bound` on the window. Unbounded or non-finite bounds are rejected.
 */
inline EventTimeline
simulate_nhpp_thinning(const std::function<double(double)> &rate,
                       double rate_bound, double horizon, RngStream &rng) {
  require_horizon(horizon);
  if (!(std::isfinite(rate_bound) && rate_bound > 0.0)) {
    throw std::invalid_argument(
        "thinning needs a finite positive bound on the intensity");
  }
  std::vector<double> events;
  double t = rng.exponential() / rate_bound;
  while (t <= horizon) {
    const double lambda = rate(t);
    if (!(lambda >= 0.0) || lambda > rate_bound * (1.0 + 1e-12)) {
      throw std::invalid_argument("intensity exceeds the thinning bound at t=" +
                                  std::to_string(t));
    }
    if (rng.uniform() * rate_bound < lambda) {
      events.push_back(t);
    }
    t += rng.exponential() / rate_bound;
  }
  return EventTimeline(horizon, std::move(events));
}

} // namespace piu

#endif // PIU_NHPP_HPP_
