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


// Reference routines used only by tests, kept apart from the library code
// they check.

#ifndef PIU_TESTS_ORACLE_HPP_
#define PIU_TESTS_ORACLE_HPP_

#include <cmath>
#include <utility>

namespace piu::oracle {

// Regularized lower incomplete gamma P(a, x): power series below a + 1,
// Lentz continued fraction for Q above.
inline double gamma_p(double a, double x) {
  if (x <= 0.0) {
    return 0.0;
  }
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * 1e-17) {
        break;
      }
    }
    return sum * std::exp(log_prefix);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    d = std::fabs(d) < tiny ? tiny : d;
    c = b + an / c;
    c = std::fabs(c) < tiny ? tiny : c;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) {
      break;
    }
  }
  return 1.0 - std::exp(log_prefix) * h;
}

// Chi-square quantile by bisection on gamma_p.
inline double chi_square_quantile(int df, double p) {
  double lo = 0.0;
  double hi = 1.0;
  while (gamma_p(df / 2.0, hi / 2.0) < p) {
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gamma_p(df / 2.0, mid / 2.0) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double binomial_pmf(int n, int k, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

// Central band [lo, hi] of Binomial(n, p) holding at least `level` mass,
// with at most (1 - level) / 2 excluded in each tail.
inline std::pair<int, int> binomial_band(int n, double p, double level) {
  const double tail = 0.5 * (1.0 - level);
  int lo = 0;
  double below = 0.0;
  while (below + binomial_pmf(n, lo, p) <= tail) {
    below += binomial_pmf(n, lo, p);
    ++lo;
  }
  int hi = n;
  double above = 0.0;
  while (above + binomial_pmf(n, hi, p) <= tail) {
    above += binomial_pmf(n, hi, p);
    --hi;
  }
  return {lo, hi};
}

} // namespace piu::oracle

#endif // PIU_TESTS_ORACLE_HPP_
