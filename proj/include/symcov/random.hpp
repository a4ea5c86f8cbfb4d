/**
 * Copyright 2026 The symcov Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef SYMCOV_RANDOM_HPP
#define SYMCOV_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>

// Counter-based random streams. A stream is identified by a 64-bit seed and
// a list of integer labels (purpose, object index, variable index, ...); the
// i-th draw of a stream is a pure function of (seed, labels, i). Streams are
// therefore independent of thread scheduling, and nothing here relies on the
// implementation-defined std:: distributions.

namespace symcov {

namespace detail {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace detail

/// Stream purposes, used as the first label so unrelated consumers of one
/// seed never share draws.
enum class StreamPurpose : std::uint64_t {
  macro_sample = 1,
  micro_weight = 2,
  null_reference = 3,
  test_sample = 4,
};

struct RngSeed {
  std::uint64_t seed = 0;
};

class RandomStream {
public:
  using result_type = std::uint64_t;

  RandomStream(RngSeed seed, std::initializer_list<std::uint64_t> labels) noexcept
      : key_(detail::splitmix_finalize(seed.seed ^ 0x5ec0de5eedULL)) {
    std::uint64_t position = 0;
    for (std::uint64_t label : labels) {
      ++position;
      key_ = detail::splitmix_finalize(
          key_ ^ detail::splitmix_finalize(label + position * detail::kGolden));
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    ++counter_;
    return detail::splitmix_finalize(key_ + counter_ * detail::kGolden);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Standard normal by Box-Muller (cosine branch only).
  double normal() noexcept {
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t draws() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace symcov

#endif // SYMCOV_RANDOM_HPP
