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


#ifndef PIU_DISTRIBUTION_HPP_
#define PIU_DISTRIBUTION_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "piu/rng.hpp"

namespace piu {

/// Inter-arrival laws. Time is in hours throughout.
namespace law {

struct Exponential {
  double rate; // 1/h
};

struct Weibull {
  double shape;
  double scale; // h
};

struct Gamma {
  double shape;
  double scale; // h
};

struct LogNormal {
  double log_mean;
  double log_sd;
};

struct Degenerate {
  double value; // h
};

} // namespace law

/*
 * A validated parametric inter-arrival law. Construction rejects any
 * non-positive or non-finite parameter, so every instance has a finite,
 * strictly positive mean.
 */
class DistributionSpec {
public:
  using Variant = std::variant<law::Exponential, law::Weibull, law::Gamma,
                               law::LogNormal, law::Degenerate>;

  static DistributionSpec exponential(double rate) {
    return DistributionSpec(law::Exponential{rate});
  }
  static DistributionSpec weibull(double shape, double scale) {
    return DistributionSpec(law::Weibull{shape, scale});
  }
  static DistributionSpec gamma(double shape, double scale) {
    return DistributionSpec(law::Gamma{shape, scale});
  }
  static DistributionSpec lognormal(double log_mean, double log_sd) {
    return DistributionSpec(law::LogNormal{log_mean, log_sd});
  }
  static DistributionSpec degenerate(double value) {
    return DistributionSpec(law::Degenerate{value});
  }

  explicit DistributionSpec(Variant v) : law_(v) { validate(); }

  const Variant &law() const { return law_; }

  template <typename L> bool is() const {
    return std::holds_alternative<L>(law_);
  }

  std::string kind() const {
    return std::visit(
        [](const auto &l) -> std::string {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, law::Exponential>) {
            return "exponential";
          } else if constexpr (std::is_same_v<L, law::Weibull>) {
            return "weibull";
          } else if constexpr (std::is_same_v<L, law::Gamma>) {
            return "gamma";
          } else if constexpr (std::is_same_v<L, law::LogNormal>) {
            return "lognormal";
          } else {
            return "degenerate";
          }
        },
        law_);
  }

  friend bool operator==(const DistributionSpec &a, const DistributionSpec &b) {
    return a.law_.index() == b.law_.index() &&
           std::visit(
               [&](const auto &l) {
                 using L = std::decay_t<decltype(l)>;
                 const auto &r = std::get<L>(b.law_);
                 if constexpr (std::is_same_v<L, law::Exponential>) {
                   return l.rate == r.rate;
                 } else if constexpr (std::is_same_v<L, law::Degenerate>) {
                   return l.value == r.value;
                 } else if constexpr (std::is_same_v<L, law::LogNormal>) {
                   return l.log_mean == r.log_mean && l.log_sd == r.log_sd;
                 } else {
                   return l.shape == r.shape && l.scale == r.scale;
                 }
               },
               a.law_);
  }

private:
  static void require_positive(double x, const char *what) {
    if (!(std::isfinite(x) && x > 0.0)) {
      throw std::invalid_argument(std::string("distribution parameter '") +
                                  what + "' must be finite and > 0");
    }
  }

  void validate() const {
    std::visit(
        [](const auto &l) {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, law::Exponential>) {
            require_positive(l.rate, "rate");
          } else if constexpr (std::is_same_v<L, law::Degenerate>) {
            require_positive(l.value, "value");
          } else if constexpr (std::is_same_v<L, law::LogNormal>) {
            if (!std::isfinite(l.log_mean)) {
              throw std::invalid_argument(
                  "distribution parameter 'log_mean' must be finite");
            }
            require_positive(l.log_sd, "log_sd");
          } else {
            require_positive(l.shape, "shape");
            require_positive(l.scale, "scale");
          }
        },
        law_);
  }

  Variant law_;
};

/// Analytic mean of the inter-arrival law, in hours.
inline double mean_of(const DistributionSpec &dist) {
  return std::visit(
      [](const auto &l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, law::Exponential>) {
          return 1.0 / l.rate;
        } else if constexpr (std::is_same_v<L, law::Weibull>) {
          return l.scale * std::tgamma(1.0 + 1.0 / l.shape);
        } else if constexpr (std::is_same_v<L, law::Gamma>) {
          return l.shape * l.scale;
        } else if constexpr (std::is_same_v<L, law::LogNormal>) {
          return std::exp(l.log_mean + 0.5 * l.log_sd * l.log_sd);
        } else {
          return l.value;
        }
      },
      dist.law());
}

/// One strictly positive draw.
inline double sample(const DistributionSpec &dist, RngStream &rng) {
  return std::visit(
      [&rng](const auto &l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, law::Exponential>) {
          return rng.exponential() / l.rate;
        } else if constexpr (std::is_same_v<L, law::Weibull>) {
          return l.scale * std::pow(rng.exponential(), 1.0 / l.shape);
        } else if constexpr (std::is_same_v<L, law::Gamma>) {
          return l.scale * rng.gamma(l.shape);
        } else if constexpr (std::is_same_v<L, law::LogNormal>) {
          return std::exp(l.log_mean + l.log_sd * rng.normal());
        } else {
          return l.value;
        }
      },
      dist.law());
}

/*
 * Draw from the forward-recurrence (equilibrium) law with density
 * (1 - F(x)) / mean. Implemented as U * L where L is length-biased,
 * density x f(x) / mean, which has a closed form for every family here.
 * Starting a renewal process with this delay makes it stationary, so
 * E[N(t)] = t / mean holds exactly for all t.
 */
inline double sample_equilibrium(const DistributionSpec &dist, RngStream &rng) {
  const double length = std::visit(
      [&rng](const auto &l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, law::Exponential>) {
          return rng.gamma(2.0) / l.rate;
        } else if constexpr (std::is_same_v<L, law::Weibull>) {
          return l.scale * std::pow(rng.gamma(1.0 + 1.0 / l.shape),
                                    1.0 / l.shape);
        } else if constexpr (std::is_same_v<L, law::Gamma>) {
          return l.scale * rng.gamma(l.shape + 1.0);
        } else if constexpr (std::is_same_v<L, law::LogNormal>) {
          return std::exp(l.log_mean + l.log_sd * l.log_sd +
                          l.log_sd * rng.normal());
        } else {
          return l.value;
        }
      },
      dist.law());
  return rng.uniform() * length;
}

/*
 * Same family as `dist`, rescaled so that its mean equals `mean`. Shape
 * parameters (Weibull/gamma shape, lognormal log_sd) are kept.
 */
inline DistributionSpec with_mean(const DistributionSpec &dist, double mean) {
  if (!(std::isfinite(mean) && mean > 0.0)) {
    throw std::invalid_argument("target mean must be finite and > 0");
  }
  return std::visit(
      [mean](const auto &l) -> DistributionSpec {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, law::Exponential>) {
          return DistributionSpec::exponential(1.0 / mean);
        } else if constexpr (std::is_same_v<L, law::Weibull>) {
          return DistributionSpec::weibull(
              l.shape, mean / std::tgamma(1.0 + 1.0 / l.shape));
        } else if constexpr (std::is_same_v<L, law::Gamma>) {
          return DistributionSpec::gamma(l.shape, mean / l.shape);
        } else if constexpr (std::is_same_v<L, law::LogNormal>) {
          return DistributionSpec::lognormal(
              std::log(mean) - 0.5 * l.log_sd * l.log_sd, l.log_sd);
        } else {
          return DistributionSpec::degenerate(mean);
        }
      },
      dist.law());
}

} // namespace piu

#endif // PIU_DISTRIBUTION_HPP_
