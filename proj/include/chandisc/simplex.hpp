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

/// \file simplex.hpp
/// \brief Integer compositions and the {k/N} lattice on the probability simplex.

#include <chandisc/core.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace chandisc {

/// Number of compositions of n into k non-negative parts, C(n + k - 1, k - 1).
/// Saturates at the largest uint64 value.
inline std::uint64_t composition_count(std::uint64_t n, std::uint64_t k)
{
  if (k == 0)
  {
    return n == 0 ? 1 : 0;
  }
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i < k; ++i)
  {
    // r * (n + i) / i stays integral at every step.
    unsigned __int128 const next = static_cast<unsigned __int128>(r) * (n + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max())
    {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = static_cast<std::uint64_t>(next);
  }
  return r;
}

/// Calls `visit(counts)` for every composition of `total` into `parts`
/// non-negative integers, in lexicographically decreasing order of counts[0].
inline void for_each_composition(std::size_t total, std::size_t parts,
                                 std::function<void(std::vector<std::size_t> const &)> const &visit)
{
  if (parts == 0)
  {
    return;
  }
  std::vector<std::size_t> counts(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left)
  {
    if (idx + 1 == parts)
    {
      counts[idx] = left;
      visit(counts);
      return;
    }
    for (std::size_t c = left + 1; c-- > 0;)
    {
      counts[idx] = c;
      rec(idx + 1, left - c);
    }
  };
  rec(0, total);
}

/// Largest-remainder rounding of n * p to integers summing to n. Remainder
/// ties go to the lower index.
inline std::vector<std::size_t> largest_remainder(std::span<double const> p, std::size_t n)
{
  std::vector<std::size_t> counts(p.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  remainders.reserve(p.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    double const scaled = p[i] * static_cast<double>(n);
    double const base   = std::floor(scaled);
    counts[i]           = static_cast<std::size_t>(base);
    assigned += counts[i];
    remainders.emplace_back(scaled - base, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](auto const &a, auto const &b) { return a.first > b.first; });
  std::size_t k = 0;
  while (assigned < n)
  {
    ++counts[remainders[k % remainders.size()].second];
    ++assigned;
    ++k;
  }
  // Floating error can overshoot when p sums to slightly above 1.
  while (assigned > n)
  {
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  return counts;
}

/// All distributions on `k` symbols whose entries are multiples of 1/N.
inline std::vector<FiniteDistribution> simplex_lattice(std::size_t k, std::size_t resolution)
{
  if (k == 0 || resolution == 0)
  {
    throw ValidationError("simplex_lattice: alphabet size and resolution must be positive");
  }
  std::vector<FiniteDistribution> out;
  out.reserve(static_cast<std::size_t>(composition_count(resolution, k)));
  double const n = static_cast<double>(resolution);
  for_each_composition(resolution, k, [&](std::vector<std::size_t> const &c)
  {
    std::vector<double> p(k);
    for (std::size_t i = 0; i < k; ++i)
    {
      p[i] = static_cast<double>(c[i]) / n;
    }
    out.emplace_back(std::move(p));
  });
  return out;
}

}  // namespace chandisc
