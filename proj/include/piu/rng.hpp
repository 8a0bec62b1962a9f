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

#ifndef PIU_RNG_HPP_
#define PIU_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace piu {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0xd1b54a32d192ed03ULL);
  splitmix64(s);
  return splitmix64(s);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

} // namespace detail

/*
 * Reproducible random stream identified by (seed, stream_id).
 *
 * Generator: xoshiro256** (Blackman & Vigna). The 256-bit state is filled
 * by four SplitMix64 outputs started from mix64(seed, stream_id), where
 * mix64 runs two SplitMix64 finalizer rounds over seed ^ (stream_id * C).
 * Distinct stream ids therefore land on unrelated points of the 2^256
 * period; overlap between streams of practical length is negligible.
 *
 * Child streams are derived with `derive(k)`, whose stream_id is
 * mix64(stream_id, k + 1). Replications and components each own a child.
 *
 * Satisfies UniformRandomBitGenerator, but all samplers in piu consume
 * only `next()` / `uniform()` so results do not depend on the standard
 * library's distribution implementations.
 */
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t sm = detail::mix64(seed, stream_id);
    for (auto &word : state_) {
      word = detail::splitmix64(sm);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  RngStream derive(std::uint64_t k) const {
    return RngStream(seed_, detail::mix64(stream_id_, k + 1));
  }

  std::uint64_t next() {
    const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  result_type operator()() { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard exponential.
  double exponential() { return -std::log(uniform()); }

  // Standard normal by Box-Muller; the second variate is discarded so the
  // stream carries no hidden cache.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925 * u2);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang, with the U^(1/shape) boost below 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = 0.0;
      double v = 0.0;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) {
        return d * v;
      }
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
        return d * v;
      }
    }
  }

  // Bernoulli(p).
  bool bernoulli(double p) { return uniform() < p; }

  // Index drawn from a discrete law given by cumulative weights (last = 1).
  template <typename Range> std::size_t categorical(const Range &cumulative) {
    const double u = uniform();
    std::size_t i = 0;
    const std::size_t n = std::size(cumulative);
    while (i + 1 < n && u >= cumulative[i]) {
      ++i;
    }
    return i;
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

} // namespace piu

#endif // PIU_RNG_HPP_
