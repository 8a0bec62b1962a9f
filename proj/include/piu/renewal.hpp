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


#ifndef PIU_RENEWAL_HPP_
#define PIU_RENEWAL_HPP_

#include <cmath>
#include <stdexcept>
#include <vector>

#include "piu/distribution.hpp"
#include "piu/rng.hpp"
#include "piu/timeline.hpp"

namespace piu {

enum class RenewalStart {
  ordinary,   // first gap drawn from the inter-arrival law itself
  equilibrium // first gap drawn from the forward-recurrence law (stationary)
};

inline void require_horizon(double horizon) {
  if (!(std::isfinite(horizon) && horizon > 0.0)) {
    throw std::invalid_argument("horizon must be finite and > 0");
  }
}

/// Renewal process on (0, horizon]: cumulative sums of i.i.d. draws.
inline EventTimeline simulate_renewal(const DistributionSpec &dist,
                                      double horizon, RngStream &rng,
                                      RenewalStart start = RenewalStart::ordinary) {
  require_horizon(horizon);
  std::vector<double> events;
  double t = start == RenewalStart::equilibrium ? sample_equilibrium(dist, rng)
                                                : sample(dist, rng);
  while (t <= horizon) {
    events.push_back(t);
    t += sample(dist, rng);
  }
  return EventTimeline(horizon, std::move(events));
}

} // namespace piu

#endif // PIU_RENEWAL_HPP_
