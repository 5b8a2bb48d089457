//------------------------------------------------------------------------------
//
//   Copyright 2026 The chandisc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

/// \file rng.hpp
/// \brief Counter-based SplitMix64 streams.
///
/// A stream is identified by (seed, stream id); its i-th output is
/// mix(key + i * gamma). Any trial can be regenerated without replaying the
/// others, so serial and parallel schedules produce identical draws.

#include <cstdint>
#include <limits>

namespace chandisc {

class SplitMix64Stream
{
public:
  using result_type = std::uint64_t;

  SplitMix64Stream(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ mix(stream + kGamma)))
  {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection, bound > 0.
  std::uint64_t below(std::uint64_t bound)
  {
    std::uint64_t const limit = max() - max() % bound;
    std::uint64_t       r;
    do
    {
      r = (*this)();
    } while (r >= limit);
    return r % bound;
  }

  static constexpr std::uint64_t mix(std::uint64_t z)
  {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace chandisc
