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

/// \file oracle.hpp
/// \brief Brute-force upper-bound oracle for E(r, P).
///
/// Every row of the candidate channel T ranges over the {k/N} lattice of the
/// output simplex. The objective and the constraint are both P-weighted sums
/// of per-row divergences, so only rows on the lower-left staircase of
/// (D(T_x||W_x), D(T_x||V_x)) can be part of a minimiser; the search keeps
/// those and combines rows exactly. No tilting is used anywhere, so the
/// result is independent of `e_of_r`.

#include <chandisc/core.hpp>
#include <chandisc/simplex.hpp>

#include <algorithm>
#include <limits>
#include <vector>

namespace chandisc {

namespace detail {

struct DivergencePair
{
  double to_w = 0.0;  // D(T_x || W_x)
  double to_v = 0.0;  // D(T_x || V_x)
};

// Points not dominated from below: increasing to_w, strictly decreasing to_v.
inline std::vector<DivergencePair> lower_staircase(std::vector<DivergencePair> pts)
{
  std::sort(pts.begin(), pts.end(), [](auto const &l, auto const &r)
  {
    return l.to_w < r.to_w || (l.to_w == r.to_w && l.to_v < r.to_v);
  });
  std::vector<DivergencePair> out;
  double best = std::numeric_limits<double>::infinity();
  for (auto const &p : pts)
  {
    if (p.to_v < best)
    {
      out.push_back(p);
      best = p.to_v;
    }
  }
  return out;
}

inline std::vector<DivergencePair> row_lattice_staircase(std::span<double const> w,
                                                         std::span<double const> v,
                                                         std::size_t resolution)
{
  std::vector<DivergencePair> pts;
  pts.reserve(static_cast<std::size_t>(composition_count(resolution, w.size())));
  double const n = static_cast<double>(resolution);
  for_each_composition(resolution, w.size(), [&](std::vector<std::size_t> const &c)
  {
    CompensatedSum dw;
    CompensatedSum dv;
    for (std::size_t y = 0; y < c.size(); ++y)
    {
      double const t = static_cast<double>(c[y]) / n;
      dw += xlogxy(t, w[y]);
      dv += xlogxy(t, v[y]);
    }
    pts.push_back({dw.value(), dv.value()});
  });
  return lower_staircase(std::move(pts));
}

}  // namespace detail

inline constexpr std::size_t kMinOracleResolution = 50;

/// Grid minimum of D(T||V|px) over lattice channels T with D(T||W|px) <= r.
/// Always an upper bound on E(r, px); converges to it as the resolution grows.
/// The per-row staircases are built once, so sweeping r is cheap.
class LatticeOracle
{
public:
  LatticeOracle(ChannelProblem const &problem, FiniteDistribution const &px,
                std::size_t grid_resolution)
  {
    if (px.size() != problem.in_size())
    {
      throw ValidationError("e_of_r_oracle: input distribution length differs from channel");
    }
    if (grid_resolution < kMinOracleResolution)
    {
      throw ValidationError("e_of_r_oracle: grid resolution must be at least 50");
    }
    for (std::size_t x = 0; x < px.size(); ++x)
    {
      if (px[x] > 0.0)
      {
        weights_.push_back(px[x]);
        rows_.push_back(detail::row_lattice_staircase(problem.w().row(x), problem.v().row(x),
                                                      grid_resolution));
      }
    }
  }

  double operator()(double r) const
  {
    if (!(r >= 0.0))
    {
      throw DomainError("e_of_r_oracle: r must be non-negative");
    }
    // Weighted partial sums over all but the last supported row.
    std::vector<detail::DivergencePair> combined{{0.0, 0.0}};
    for (std::size_t i = 0; i + 1 < rows_.size(); ++i)
    {
      std::vector<detail::DivergencePair> next;
      for (auto const &c : combined)
      {
        for (auto const &p : rows_[i])
        {
          double const a = c.to_w + weights_[i] * p.to_w;
          if (a > r)
          {
            break;
          }
          next.push_back({a, c.to_v + weights_[i] * p.to_v});
        }
      }
      combined = detail::lower_staircase(std::move(next));
    }

    auto const  &tail = rows_.back();
    double const wl   = weights_.back();
    double       best = std::numeric_limits<double>::infinity();
    for (auto const &c : combined)
    {
      double const slack = r - c.to_w;
      if (slack < 0.0)
      {
        continue;
      }
      // Last staircase entry whose weighted constraint fits carries the least to_v.
      auto it = std::upper_bound(tail.begin(), tail.end(), slack, [&](double s, auto const &p)
      {
        return s < wl * p.to_w;
      });
      if (it == tail.begin())
      {
        continue;
      }
      --it;
      best = std::min(best, c.to_v + wl * it->to_v);
    }
    if (!std::isfinite(best))
    {
      throw DomainError("e_of_r_oracle: no feasible lattice channel");
    }
    return best;
  }

private:
  std::vector<double>                              weights_;
  std::vector<std::vector<detail::DivergencePair>> rows_;
};

inline double e_of_r_oracle(ChannelProblem const &problem, FiniteDistribution const &px, double r,
                            std::size_t grid_resolution)
{
  return LatticeOracle(problem, px, grid_resolution)(r);
}

}  // namespace chandisc
