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


#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "piu/evidence.hpp"
#include "piu/io/json.hpp"
#include "piu/nhpp.hpp"
#include "oracle.hpp"

namespace piu {
namespace {

TEST(ChiSquareQuantile, ClosedFormsAndTable) {
  EXPECT_NEAR(chi_square_quantile(2, 0.95), -2.0 * std::log(0.05), 1e-12);
  EXPECT_NEAR(chi_square_quantile(2, 0.95), 5.991465, 1e-6);
  EXPECT_NEAR(chi_square_quantile(2, 1.0 - std::exp(-1.0)), 2.0, 1e-12);
  EXPECT_NEAR(chi_square_quantile(14, 0.95), 23.6848, 1e-4);
}

TEST(ChiSquareQuantile, MatchesOracle) {
  for (int df : {1, 2, 3, 4, 7, 10, 14, 20, 31, 60, 100}) {
    for (double p : {0.01, 0.05, 0.5, 0.9, 0.95, 0.99, 0.999}) {
      const double expected = oracle::chi_square_quantile(df, p);
      EXPECT_NEAR(chi_square_quantile(df, p) / expected, 1.0, 1e-8)
          << "df=" << df << " p=" << p;
    }
  }
}

TEST(ChiSquareQuantile, RejectsOutOfRange) {
  EXPECT_THROW(chi_square_quantile(0, 0.5), std::invalid_argument);
  EXPECT_THROW(chi_square_quantile(2, 0.0), std::invalid_argument);
  EXPECT_THROW(chi_square_quantile(2, 1.0), std::invalid_argument);
}

TEST(RateBound, FieldScenarios) {
  EXPECT_NEAR(rate_upper_bound(300000, 0, 0.95) / (-std::log(0.05) / 3e5), 1.0, 1e-12);
  EXPECT_NEAR(rate_upper_bound(300000, 0, 0.95), 9.986e-6, 1e-9);
  EXPECT_NEAR(rate_upper_bound(50000, 0, 0.95), 5.99e-5, 1e-7);
  EXPECT_NEAR(rate_upper_bound(100000, 6, 0.95),
              oracle::chi_square_quantile(14, 0.95) / 2e5, 1e-12);
  EXPECT_NEAR(rate_upper_bound(100000, 6, 0.95), 1.184e-4, 1e-7);
  EXPECT_NEAR(rate_upper_bound(116, 0, 0.95), 2.58e-2, 1e-4);
  EXPECT_THROW(rate_upper_bound(0, 0, 0.95), std::invalid_argument);
  EXPECT_THROW(rate_upper_bound(10, 0, 1.0), std::invalid_argument);
}

TEST(RateBound, ZeroFailureCaseAgreesWithChiSquare) {
  for (double c : {0.5, 0.9, 0.95, 0.99}) {
    EXPECT_NEAR(rate_upper_bound(1000, 0, c), chi_square_quantile(2, c) / 2000, 1e-15);
  }
}

TEST(RateBound, Monotone) {
  // Strictly decreasing in T, increasing in r and confidence.
  RngStream rng(1, 0);
  for (int i = 0; i < 500; ++i) {
    const double T = 1.0 + rng.uniform() * 1e6;
    const auto r = static_cast<std::size_t>(rng.uniform() * 20);
    const double c = 0.05 + rng.uniform() * 0.9;
    const double b = rate_upper_bound(T, r, c);
    EXPECT_GT(b, rate_upper_bound(T * 1.01, r, c));
    EXPECT_LT(b, rate_upper_bound(T, r + 1, c));
    EXPECT_LT(b, rate_upper_bound(T, r, std::min(0.999, c + 0.01)));
  }
}

TEST(RateBound, CoverageOfTrueRate) {
  const double lambda = 2e-3;
  const double T = 20000.0;
  int covered = 0;
  for (int i = 0; i < 1000; ++i) {
    RngStream rng(2, static_cast<std::uint64_t>(i));
    const auto t = simulate_nhpp(IntensityProfile::constant(lambda), T, rng);
    covered += rate_upper_bound(T, t.size(), 0.95) > lambda;
  }
  EXPECT_NEAR(covered / 1000.0, 0.95, 0.02);
}

TEST(Sil, Bands) {
  EXPECT_EQ(sil_for_rate(9.986e-6), Sil::sil1);
  EXPECT_EQ(sil_for_rate(5.99e-5), Sil::none);
  EXPECT_EQ(sil_for_rate(1e-5), Sil::none);
  EXPECT_EQ(sil_for_rate(1e-6), Sil::sil1);
  EXPECT_EQ(sil_for_rate(9.99e-7), Sil::sil2);
  EXPECT_EQ(sil_for_rate(5e-8), Sil::sil3);
  EXPECT_EQ(sil_for_rate(1e-9), Sil::sil4);
  EXPECT_EQ(to_string(Sil::sil2), "SIL 2");
  SilBands custom;
  custom.upper = {1e-4, 1e-5, 1e-6, 1e-7};
  EXPECT_EQ(sil_for_rate(5.99e-5, custom), Sil::sil1);
}

TEST(En50129, Boundaries) {
  EXPECT_TRUE(en50129_check(1e6, 2, 2));
  EXPECT_FALSE(en50129_check(9.9e5, 5, 10));
  EXPECT_FALSE(en50129_check(2e6, 1, 3));
  EXPECT_FALSE(en50129_check(2e6, 3, 1));
}

ServiceRecord unit(std::string id, double start, double end, std::string version = "A") {
  return ServiceRecord{std::move(id), {{start, end, std::move(version)}}, {}, {}};
}

TEST(Exposure, Examples) {
  ServiceRecord one = unit("u1", 0, 100);
  one.out_of_service = {{50, 60}};
  EXPECT_DOUBLE_EQ(exposure(FleetLog{{one}}).hours, 90.0);
  EXPECT_EQ(exposure(FleetLog{{one}}).dangerous, 0u);

  ServiceRecord u2 = unit("u2", 0, 50);
  u2.failures = {{10, true, "trip"}};
  const auto e = exposure(FleetLog{{unit("u1", 0, 50), u2}});
  EXPECT_DOUBLE_EQ(e.hours, 100.0);
  EXPECT_EQ(e.dangerous, 1u);

  ServiceRecord mixed{"u3", {{0, 100, "A"}, {100, 200, "B"}}, {}, {}};
  mixed.failures = {{20, true, "a"}, {150, true, "b"}, {160, true, "b"}};
  const auto a = exposure(FleetLog{{mixed}}, std::string("A"));
  EXPECT_DOUBLE_EQ(a.hours, 100.0);
  EXPECT_EQ(a.dangerous, 1u);
  const auto b = exposure(FleetLog{{mixed}}, std::string("B"));
  EXPECT_EQ(b.dangerous, 2u);
  EXPECT_THROW(exposure(FleetLog{{mixed}}), EvidenceError);
}

TEST(Exposure, NonDangerousKeptSeparately) {
  ServiceRecord r = unit("u", 0, 10);
  r.failures = {{1, false, "cosmetic"}, {2, true, "trip"}};
  const auto e = exposure(FleetLog{{r}});
  EXPECT_EQ(e.dangerous, 1u);
  EXPECT_EQ(e.non_dangerous, 1u);
}

TEST(Exposure, Errors) {
  ServiceRecord overlap{"u", {{0, 10, "A"}, {5, 20, "A"}}, {}, {}};
  EXPECT_THROW(exposure(FleetLog{{overlap}}), EvidenceError);
  ServiceRecord outside = unit("u", 0, 10);
  outside.failures = {{11, true, ""}};
  EXPECT_THROW(exposure(FleetLog{{outside}}), EvidenceError);
  ServiceRecord during_exclusion = unit("u", 0, 10);
  during_exclusion.out_of_service = {{2, 4}};
  during_exclusion.failures = {{3, true, ""}};
  EXPECT_THROW(exposure(FleetLog{{during_exclusion}}), EvidenceError);
  ServiceRecord bad_exclusion = unit("u", 0, 10);
  bad_exclusion.out_of_service = {{8, 12}};
  EXPECT_THROW(exposure(FleetLog{{bad_exclusion}}), EvidenceError);
  EXPECT_THROW(exposure(FleetLog{{unit("u", 0, 1), unit("u", 2, 3)}}), EvidenceError);
}

TEST(Exposure, VersionSegmentationProperty) {
  // Logs of two versions, concatenated then filtered, reproduce the
  // per-version figures computed separately.
  RngStream rng(3, 0);
  for (int trial = 0; trial < 100; ++trial) {
    FleetLog only_a, only_b, both;
    const int units = 1 + static_cast<int>(rng.uniform() * 6);
    for (int u = 0; u < units; ++u) {
      const double split = 100 + rng.uniform() * 1000;
      const double end = split + 100 + rng.uniform() * 1000;
      ServiceRecord a{"u" + std::to_string(u), {{0, split, "A"}}, {}, {}};
      ServiceRecord b{"u" + std::to_string(u), {{split, end, "B"}}, {}, {}};
      if (rng.uniform() < 0.5) {
        a.failures.push_back({split * rng.uniform(), true, ""});
      }
      if (rng.uniform() < 0.5) {
        b.failures.push_back({split + (end - split) * rng.uniform(), true, ""});
      }
      ServiceRecord joined{a.unit_id, {a.intervals[0], b.intervals[0]}, {}, a.failures};
      joined.failures.insert(joined.failures.end(), b.failures.begin(), b.failures.end());
      only_a.records.push_back(a);
      only_b.records.push_back(b);
      both.records.push_back(joined);
    }
    const auto ea = exposure(only_a);
    const auto eb = exposure(only_b);
    const auto fa = exposure(both, std::string("A"));
    const auto fb = exposure(both, std::string("B"));
    EXPECT_EQ(ea.hours, fa.hours);
    EXPECT_EQ(ea.dangerous, fa.dangerous);
    EXPECT_EQ(eb.hours, fb.hours);
    EXPECT_EQ(eb.dangerous, fb.dangerous);
  }
}

Checklist all_true() { return Checklist{true, true, true, true, true, true, ""}; }

FleetLog load(const std::string &name) {
  std::ifstream in(std::string(PIU_DATA_DIR) + "/" + name);
  return io::read_fleet_jsonl(in);
}

TEST(Claim, TheracFixture) {
  const auto c = evaluate_claim(load("therac_1985.jsonl"), all_true(), 0.95);
  EXPECT_DOUBLE_EQ(c.exposure_hours, 50000.0);
  EXPECT_EQ(c.dangerous_failures, 0u);
  EXPECT_EQ(c.sil, Sil::none);
  EXPECT_TRUE(c.valid);
  EXPECT_NEAR(c.rate_upper_bound, 5.99e-5, 1e-7);
  bool noted = false;
  for (const auto &line : c.audit) {
    noted = noted || line.find("5.99146e-05") != std::string::npos;
  }
  EXPECT_TRUE(noted);

  const auto later = evaluate_claim(load("therac_1987.jsonl"), all_true(), 0.95);
  EXPECT_DOUBLE_EQ(later.exposure_hours, 100000.0);
  EXPECT_EQ(later.dangerous_failures, 6u);
  EXPECT_GT(later.rate_upper_bound, c.rate_upper_bound);
}

TEST(Claim, ArianeFixture) {
  Checklist env_change = all_true();
  env_change.representative_environment = false;
  const auto c = evaluate_claim(load("ariane.jsonl"), env_change, 0.95);
  EXPECT_DOUBLE_EQ(c.exposure_hours, 116.0);
  EXPECT_NEAR(c.rate_upper_bound, 2.58e-2, 1e-4);
  EXPECT_EQ(c.sil, Sil::none);
  EXPECT_FALSE(c.valid);
}

TEST(Claim, SyntheticSil1) {
  const auto c = evaluate_claim(load("synthetic_310k.jsonl"), all_true(), 0.95);
  EXPECT_DOUBLE_EQ(c.exposure_hours, 310000.0);
  EXPECT_EQ(c.non_dangerous_failures, 1u);
  EXPECT_EQ(c.sil, Sil::sil1);
  EXPECT_TRUE(c.valid);
}

TEST(Claim, EmptyFleetHasNoExposure) {
  EXPECT_THROW(evaluate_claim(FleetLog{}, all_true()), EvidenceError);
}

TEST(Claim, En50129Flag) {
  FleetLog fleet;
  for (int u = 0; u < 4; ++u) {
    fleet.records.push_back(unit("u" + std::to_string(u), 0, 3.0 * kHoursPerYear * 10));
  }
  const auto c = evaluate_claim(fleet, all_true());
  EXPECT_GE(c.exposure_hours, 1e6);
  EXPECT_TRUE(c.en50129_sil34_recommendation_met);
  EXPECT_EQ(c.distinct_equipments, 4u);
}

TEST(Claim, GateSupremacyProperty) {
  // Random fleets and checklists: any false flag forces valid = false.
  RngStream rng(4, 0);
  int invalid_seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    FleetLog fleet;
    const int units = 1 + static_cast<int>(rng.uniform() * 5);
    for (int u = 0; u < units; ++u) {
      const double hours = 1.0 + rng.uniform() * 1e6;
      ServiceRecord r = unit("u" + std::to_string(u), 0, hours);
      if (rng.uniform() < 0.3) {
        r.failures.push_back({hours * rng.uniform(), rng.uniform() < 0.5, ""});
      }
      fleet.records.push_back(r);
    }
    Checklist c{rng.uniform() < 0.8, rng.uniform() < 0.8, rng.uniform() < 0.8,
                rng.uniform() < 0.8, rng.uniform() < 0.8, rng.uniform() < 0.8, ""};
    const auto res = evaluate_claim(fleet, c, 0.5 + 0.49 * rng.uniform());
    EXPECT_EQ(res.valid, c.all_met());
    invalid_seen += !res.valid;
  }
  EXPECT_GT(invalid_seen, 500);
}

} // namespace
} // namespace piu
