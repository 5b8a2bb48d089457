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

/// \file pareto.hpp
/// \brief Pareto-maximal subsets of 2-D and 3-D point clouds.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

namespace chandisc {

/// Points closer than this in every coordinate are treated as duplicates.
inline constexpr double kParetoTolerance = 1e-12;

/// True when `a` is at least `b` everywhere (up to tol) and strictly larger
/// somewhere (by more than tol).
template <std::size_t D>
bool dominates(std::array<double, D> const &a, std::array<double, D> const &b,
               double tol = kParetoTolerance)
{
  bool strict = false;
  for (std::size_t i = 0; i < D; ++i)
  {
    if (a[i] < b[i] - tol)
    {
      return false;
    }
    if (a[i] > b[i] + tol)
    {
      strict = true;
    }
  }
  return strict;
}

template <std::size_t D>
bool near_equal(std::array<double, D> const &a, std::array<double, D> const &b,
                double tol = kParetoTolerance)
{
  for (std::size_t i = 0; i < D; ++i)
  {
    if (std::abs(a[i] - b[i]) > tol)
    {
      return false;
    }
  }
  return true;
}

/// Indices of the Pareto-maximal points (maximising every coordinate),
/// duplicates collapsed onto the lexicographically largest representative.
/// Result is sorted lexicographically ascending.
template <std::size_t D>
std::vector<std::size_t> pareto_maximal(std::vector<std::array<double, D>> const &pts,
                                        double tol = kParetoTolerance)
{
  static_assert(D == 2 || D == 3, "pareto_maximal supports 2 or 3 objectives");
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return pts[l] > pts[r]; });

  // Staircase over the trailing coordinates of everything processed so far:
  // key ascending, value strictly descending.
  std::map<double, double> stair;
  std::vector<std::size_t> kept;
  for (std::size_t idx : order)
  {
    auto const &p = pts[idx];
    double const u = (D == 3) ? p[1] : 0.0;
    double const v = p[D - 1];
    auto it = stair.lower_bound(u - tol);
    if (it != stair.end() && it->second >= v - tol)
    {
      continue;
    }
    kept.push_back(idx);
    auto hi = stair.upper_bound(u);
    auto lo = hi;
    while (lo != stair.begin())
    {
      auto prev = std::prev(lo);
      if (prev->second > v)
      {
        break;
      }
      lo = prev;
    }
    stair.erase(lo, hi);
    stair.emplace(u, v);
  }

  // Leading coordinates equal within tol but not exactly can be out of order.
  std::vector<bool> drop(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i)
  {
    for (std::size_t j = i + 1; j < kept.size(); ++j)
    {
      if (pts[kept[i]][0] - pts[kept[j]][0] > tol)
      {
        break;
      }
      if (dominates(pts[kept[j]], pts[kept[i]], tol))
      {
        drop[i] = true;
      }
      else if (dominates(pts[kept[i]], pts[kept[j]], tol) ||
               near_equal(pts[kept[i]], pts[kept[j]], tol))
      {
        drop[j] = true;
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kept.size(); ++i)
  {
    if (!drop[i])
    {
      out.push_back(kept[i]);
    }
  }
  std::sort(out.begin(), out.end(), [&](std::size_t l, std::size_t r) { return pts[l] < pts[r]; });
  return out;
}

}  // namespace chandisc
