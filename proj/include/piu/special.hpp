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


#ifndef PIU_SPECIAL_HPP_
#define PIU_SPECIAL_HPP_

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace piu {

/// P(X <= x) for X ~ chi-square(df).
inline double chi_square_cdf(double df, double x) {
  if (!(df > 0.0)) {
    throw std::invalid_argument("chi-square df must be > 0");
  }
  if (x <= 0.0) {
    return 0.0;
  }
  return boost::math::gamma_p(0.5 * df, 0.5 * x);
}

/// P(X > x) for X ~ chi-square(df), without cancellation in the far tail.
inline double chi_square_sf(double df, double x) {
  if (!(df > 0.0)) {
    throw std::invalid_argument("chi-square df must be > 0");
  }
  if (x <= 0.0) {
    return 1.0;
  }
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

/// Lower quantile x with P(chi-square(df) <= x) = p.
inline double chi_square_quantile(int df, double p) {
  if (df < 1) {
    throw std::invalid_argument("chi-square quantile needs df >= 1");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("chi-square quantile needs 0 < p < 1");
  }
  return 2.0 * boost::math::gamma_p_inv(0.5 * df, p);
}

/// Two-sided standard-normal p-value for statistic z.
inline double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

} // namespace piu

#endif // PIU_SPECIAL_HPP_
