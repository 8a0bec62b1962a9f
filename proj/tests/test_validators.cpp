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
#include <vector>

#include <gtest/gtest.h>

#include "piu/nhpp.hpp"
#include "piu/renewal.hpp"
#include "piu/special.hpp"
#include "piu/validators.hpp"

namespace piu {
namespace {

EventTimeline hpp(std::uint64_t seed, std::uint64_t stream, double horizon = 1000.0) {
  RngStream rng(seed, stream);
  return simulate_nhpp(IntensityProfile::constant(1.0), horizon, rng);
}

EventTimeline regular(double phase, int n) {
  std::vector<double> ev;
  for (int i = 0; i < n; ++i) {
    ev.push_back(phase + i);
  }
  return EventTimeline(static_cast<double>(n), ev);
}

TEST(Laplace, SymmetricPlacement) {
  const double T = 40.0;
  const auto two = laplace_trend_test(EventTimeline(T, {T / 4, 3 * T / 4}));
  EXPECT_EQ(two.verdict, Verdict::insufficient_data);
  ASSERT_TRUE(two.statistic.has_value());
  EXPECT_DOUBLE_EQ(*two.statistic, 0.0);
  EXPECT_FALSE(two.p_value.has_value());

  const auto three = laplace_trend_test(EventTimeline(T, {0.25 * T, 0.5 * T, 0.75 * T}));
  EXPECT_DOUBLE_EQ(*three.statistic, 0.0);
  EXPECT_DOUBLE_EQ(*three.p_value, 1.0);
  EXPECT_TRUE(three.passed());
}

TEST(Laplace, StatisticFormula) {
  // U = (sum - n T / 2) / (T sqrt(n / 12))
  const EventTimeline t(10.0, {6, 7, 8, 9});
  const double u = (30.0 - 20.0) / (10.0 * std::sqrt(4.0 / 12.0));
  const auto r = laplace_trend_test(t, 0.05);
  EXPECT_NEAR(*r.statistic, u, 1e-14);
  EXPECT_NEAR(*r.p_value, std::erfc(u / std::sqrt(2.0)), 1e-15);
}

TEST(Laplace, CalibratedUnderNull) {
  int pass = 0;
  for (int r = 0; r < 200; ++r) {
    pass += laplace_trend_test(hpp(31, static_cast<std::uint64_t>(r)), 0.05).passed();
  }
  EXPECT_GE(pass, 186);
  EXPECT_LE(pass, 198);
}

TEST(Laplace, DetectsGrowth) {
  int fail = 0;
  for (int r = 0; r < 100; ++r) {
    RngStream rng(32, static_cast<std::uint64_t>(r));
    const auto t = simulate_nhpp(IntensityProfile::loglinear(1.0, 0.002), 1000, rng);
    const auto res = laplace_trend_test(t, 0.05);
    fail += !res.passed();
    EXPECT_GT(*res.statistic, 0.0);
  }
  EXPECT_GE(fail, 80);
}

TEST(ExpGof, RegularGapsRejected) {
  RngStream rng(1, 0);
  const auto r = exp_gof_test(regular(1.0, 100), 0.05, 1000, rng);
  EXPECT_EQ(r.verdict, Verdict::fail);
  // Equal gaps sit at the fitted mean: D = 1 - e^-1.
  EXPECT_NEAR(*r.statistic, 1.0 - std::exp(-1.0), 1e-12);
  EXPECT_NEAR(*r.p_value, 1.0 / 1001.0, 1e-15);
}

TEST(ExpGof, InsufficientBelowFiveGaps) {
  RngStream rng(1, 0);
  const auto r = exp_gof_test(EventTimeline(10, {1, 2, 3, 4}), 0.05, 100, rng);
  EXPECT_EQ(r.verdict, Verdict::insufficient_data);
  EXPECT_FALSE(r.p_value.has_value());
  EXPECT_THROW(exp_gof_test(EventTimeline(10, {1, 2, 3, 4}), 0.05, 0, rng),
               std::invalid_argument);
}

TEST(ExpGof, CalibratedUnderNull) {
  int pass = 0;
  for (int r = 0; r < 200; ++r) {
    RngStream boot(34, static_cast<std::uint64_t>(r));
    pass += exp_gof_test(hpp(33, static_cast<std::uint64_t>(r)), 0.05, 500, boot).passed();
  }
  EXPECT_GE(pass, 186);
  EXPECT_LE(pass, 198);
}

TEST(ExpGof, BootstrapIsDeterministic) {
  const auto t = hpp(35, 0, 200.0);
  RngStream a(1, 2);
  RngStream b(1, 2);
  const auto ra = exp_gof_test(t, 0.05, 300, a);
  const auto rb = exp_gof_test(t, 0.05, 300, b);
  EXPECT_EQ(*ra.statistic, *rb.statistic);
  EXPECT_EQ(*ra.p_value, *rb.p_value);
}

TEST(Dispersion, RegularIsUnderDispersed) {
  const auto r = dispersion_test(regular(0.5, 100), 10, 0.05);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_NEAR(*r.statistic, 0.0, 1e-12);
  EXPECT_LT(*r.p_value, 0.05);
  EXPECT_NE(r.details.find("under"), std::string::npos);
}

TEST(Dispersion, ClusteredIsOverDispersed) {
  std::vector<double> ev;
  for (int i = 0; i < 50; ++i) {
    ev.push_back(1.0 + i * 0.01);
  }
  const auto r = dispersion_test(EventTimeline(100, ev), 10, 0.05);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_NE(r.details.find("over"), std::string::npos);
}

TEST(Dispersion, StatisticAgainstHandCount) {
  // bins of width 2 on (0, 6]: counts {2, 0, 1} -> mean 1, D = 1 + 1 + 0 = 2
  const auto r = dispersion_test(EventTimeline(6, {0.5, 2.0, 5.0}), 3, 0.05);
  EXPECT_DOUBLE_EQ(*r.statistic, 2.0);
  // chi-square(2): F(2) = 1 - e^-1, so p = 2 e^-1
  EXPECT_NEAR(*r.p_value, std::min(1.0, 2 * std::exp(-1.0)), 1e-12);
  EXPECT_NE(r.details.find("warning"), std::string::npos);
}

TEST(Dispersion, BadInputs) {
  EXPECT_THROW(dispersion_test(hpp(1, 0), 1), std::invalid_argument);
  EXPECT_EQ(dispersion_test(EventTimeline(10), 5).verdict, Verdict::insufficient_data);
}

TEST(Dispersion, CalibratedUnderNull) {
  int pass = 0;
  for (int r = 0; r < 200; ++r) {
    pass += dispersion_test(hpp(36, static_cast<std::uint64_t>(r)), 20, 0.05).passed();
  }
  EXPECT_GE(pass, 186);
  EXPECT_LE(pass, 198);
}

TEST(Singularity, Examples) {
  const auto close = singularity_check(EventTimeline(10, {1, 1 + 1e-9, 5}), 1e-6);
  EXPECT_EQ(close.verdict, Verdict::fail);
  const auto spaced = singularity_check(EventTimeline(10, {1, 2, 3}), 0.5);
  EXPECT_TRUE(spaced.passed());
  EXPECT_DOUBLE_EQ(*spaced.statistic, 1.0);
  EXPECT_TRUE(singularity_check(EventTimeline(10), 0.5).passed());
  EXPECT_EQ(singularity_check(EventTimeline(10, {2, 2}), 0.0).verdict, Verdict::fail);
  EXPECT_THROW(singularity_check(EventTimeline(10), -1.0), std::invalid_argument);
}

TEST(Suite, EmptyTimeline) {
  RngStream rng(1, 0);
  const auto rep = assess_poisson(EventTimeline(100), SuiteConfig{}, rng);
  EXPECT_FALSE(rep.overall);
  int insufficient = 0;
  for (const auto *t : rep.tests()) {
    insufficient += t->verdict == Verdict::insufficient_data;
  }
  EXPECT_EQ(insufficient, 3);
  EXPECT_TRUE(rep.singularity.passed());
}

TEST(Suite, OverallIsConjunction) {
  RngStream rng(2, 0);
  for (int r = 0; r < 30; ++r) {
    SuiteConfig cfg;
    cfg.resamples = 100;
    const auto rep = assess_poisson(hpp(37, static_cast<std::uint64_t>(r), 300.0), cfg, rng);
    bool all = true;
    for (const auto *t : rep.tests()) {
      all = all && t->passed();
    }
    EXPECT_EQ(rep.overall, all);
  }
  const auto text = to_text(assess_poisson(hpp(38, 0, 300.0), SuiteConfig{}, rng));
  EXPECT_NE(text.find("homogeneity"), std::string::npos);
  EXPECT_NE(text.find("overall"), std::string::npos);
}

TEST(Suite, BonferroniDividesSignificance) {
  SuiteConfig cfg;
  cfg.bonferroni = true;
  EXPECT_NEAR(cfg.per_test_significance(), 0.05 / 3.0, 1e-15);
  RngStream rng(3, 0);
  const auto rep = assess_poisson(hpp(39, 0, 200.0), cfg, rng);
  EXPECT_NEAR(rep.homogeneity.parameters.at("significance"), 0.05 / 3.0, 1e-15);
}

TEST(Suite, JointNullPassRate) {
  int pass = 0;
  for (int r = 0; r < 100; ++r) {
    RngStream boot(41, static_cast<std::uint64_t>(r));
    SuiteConfig cfg;
    cfg.resamples = 500;
    pass += assess_poisson(hpp(40, static_cast<std::uint64_t>(r), 2000.0), cfg, boot).overall;
  }
  EXPECT_GE(pass, 80);
}

TEST(Suite, RegularProcessesRejected) {
  int gof_reject = 0;
  int disp_reject = 0;
  RngStream phase(50, 0);
  for (int r = 0; r < 100; ++r) {
    const auto t = regular(phase.uniform(), 200);
    RngStream boot(51, static_cast<std::uint64_t>(r));
    gof_reject += !exp_gof_test(t, 0.05, 200, boot).passed();
    disp_reject += !dispersion_test(t, 10, 0.05).passed();
  }
  EXPECT_GE(gof_reject, 99);
  EXPECT_GE(disp_reject, 99);
}

TEST(Suite, TimeScaleEquivariance) {
  for (int r = 0; r < 20; ++r) {
    const auto t = hpp(60, static_cast<std::uint64_t>(r), 500.0);
    for (const double c : {1e-3, 3.7, 1e4}) {
      const auto s = t.scaled(c);
      RngStream a(61, static_cast<std::uint64_t>(r));
      RngStream b(61, static_cast<std::uint64_t>(r));
      SuiteConfig cfg;
      cfg.resamples = 200;
      cfg.epsilon = 0.0;
      const auto ra = assess_poisson(t, cfg, a);
      const auto rb = assess_poisson(s, cfg, b);
      EXPECT_NEAR(*ra.homogeneity.statistic, *rb.homogeneity.statistic, 1e-9);
      EXPECT_NEAR(*ra.independence.statistic, *rb.independence.statistic, 1e-9);
      EXPECT_NEAR(*ra.proportionality.statistic, *rb.proportionality.statistic, 1e-12);
      EXPECT_EQ(ra.homogeneity.verdict, rb.homogeneity.verdict);
      EXPECT_EQ(ra.independence.verdict, rb.independence.verdict);
      EXPECT_EQ(ra.proportionality.verdict, rb.proportionality.verdict);
    }
  }
}

TEST(Special, ChiSquareTails) {
  EXPECT_NEAR(chi_square_cdf(2, 2.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(chi_square_sf(2, 2.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(chi_square_cdf(3, -1.0), 0.0);
  EXPECT_NEAR(normal_two_sided_p(1.959963984540054), 0.05, 1e-12);
}

} // namespace
} // namespace piu
