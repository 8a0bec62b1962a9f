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


// Superpose many non-Poisson renewal components and test the result
// against the Poisson assumptions.

#include <cstdio>

#include "piu/piu.hpp"

int main() {
  const piu::ConvergenceTemplate tmpl{piu::DistributionSpec::weibull(1.5, 1.0), 1.0, 2000.0};
  const piu::RngStream root(2026, 0);
  for (int n : {1, 10, 500}) {
    const auto sim = piu::simulate_superposition(piu::spec_for_n(tmpl, n), root.derive(n));
    piu::RngStream boot = root.derive(1000 + n);
    const auto report = piu::assess_poisson(sim.timeline, piu::SuiteConfig{}, boot);
    std::printf("n=%d components, %zu events\n", n, sim.timeline.size());
    std::fputs(piu::to_text(report).c_str(), stdout);
  }
  return 0;
}
