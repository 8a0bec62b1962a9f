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


// Proven-in-use claim for a fleet held in memory.

#include <cstdio>

#include "piu/piu.hpp"

int main() {
  piu::FleetLog fleet;
  for (int u = 0; u < 30; ++u) {
    piu::ServiceRecord rec;
    rec.unit_id = "relay-" + std::to_string(u);
    rec.intervals.push_back({0.0, 10000.0, "r2"});
    fleet.records.push_back(rec);
  }
  piu::Checklist checklist{true, true, true, true, true, true, ""};
  const auto claim = piu::evaluate_claim(fleet, checklist, 0.95);
  std::fputs(piu::to_text(claim).c_str(), stdout);
  return claim.valid ? 0 : 1;
}
