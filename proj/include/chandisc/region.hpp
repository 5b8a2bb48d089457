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

/// \file region.hpp
/// \brief Rate-exponent trade-off regions over the cost-feasible input simplex.
///
/// The achievable region is the union over input distributions P_X with
/// E[b(X)] <= B and tilts s in [0, 1] of the boxes
///
///     R <= I(P_X, P_{Z|X}),  E0 <= D(W_s||W|P_X),  E1 <= D(W_s||V|P_X).
///
/// It is the downward closure of its Pareto frontier, which is what the
/// functions here return, sampled on a {k/N} lattice of P_X and a uniform
/// grid of s. The minimax region replaces (E0, E1) by the Chernoff
/// information C(W||V|P_X); the Neyman-Pearson region by D(W||V|P_X).

#include <chandisc/core.hpp>
#include <chandisc/pareto.hpp>
#include <chandisc/simplex.hpp>
#include <chandisc/tilt.hpp>

#include <array>
#include <optional>
#include <vector>

namespace chandisc {

struct RegionPoint
{
  double             rate = 0.0;
  double             e0   = 0.0;
  double             e1   = 0.0;
  FiniteDistribution px;
  double             s = 0.0;
};

struct ParetoSurface
{
  std::vector<RegionPoint> points;
  std::size_t              px_resolution = 0;
  std::size_t              s_points      = 0;
};

/// One point of a two-objective (rate, exponent) frontier.
struct RateExponentPoint
{
  double             rate = 0.0;
  double             e    = 0.0;
  FiniteDistribution px;
};

inline constexpr std::size_t kMaxSurfaceInputs = 6;

/// Lattice resolution used when none is given: 100 for binary inputs, 30 for
/// ternary, coarser beyond.
inline std::size_t default_px_resolution(std::size_t in_size)
{
  switch (in_size)
  {
  case 1:
  case 2:
    return 100;
  case 3:
    return 30;
  case 4:
    return 12;
  case 5:
    return 8;
  default:
    return 6;
  }
}

/// Lattice input distributions meeting the cost budget.
inline std::vector<FiniteDistribution> feasible_inputs(ChannelProblem const &problem,
                                                       std::size_t           px_resolution)
{
  if (problem.in_size() > kMaxSurfaceInputs)
  {
    throw ValidationError("input alphabets above 6 symbols are beyond the dense lattice limit");
  }
  if (px_resolution < 2)
  {
    throw ValidationError("px grid resolution must be at least 2");
  }
  std::vector<FiniteDistribution> out;
  for (auto &px : simplex_lattice(problem.in_size(), px_resolution))
  {
    if (cost_feasible(px, problem.cost()))
    {
      out.push_back(std::move(px));
    }
  }
  if (out.empty())
  {
    throw DomainError("no input distribution on the lattice meets the cost budget");
  }
  return out;
}

namespace detail {

inline ParetoSurface prune_surface(std::vector<RegionPoint> candidates, std::size_t px_resolution,
                                   std::size_t s_points)
{
  std::vector<std::array<double, 3>> keys;
  keys.reserve(candidates.size());
  for (auto const &c : candidates)
  {
    keys.push_back({c.rate, c.e0, c.e1});
  }
  ParetoSurface surface;
  surface.px_resolution = px_resolution;
  surface.s_points      = s_points;
  for (std::size_t i : pareto_maximal(keys))
  {
    surface.points.push_back(std::move(candidates[i]));
  }
  return surface;
}

inline std::vector<RateExponentPoint> prune_pairs(std::vector<RateExponentPoint> candidates)
{
  std::vector<std::array<double, 2>> keys;
  keys.reserve(candidates.size());
  for (auto const &c : candidates)
  {
    keys.push_back({c.rate, c.e});
  }
  std::vector<RateExponentPoint> out;
  for (std::size_t i : pareto_maximal(keys))
  {
    out.push_back(std::move(candidates[i]));
  }
  return out;
}

}  // namespace detail

/// Pareto frontier of (I, E0, E1) over feasible lattice inputs and the s grid.
inline ParetoSurface rate_exponent_surface(ChannelProblem const &problem,
                                           std::size_t           px_grid_resolution,
                                           std::size_t           s_grid_resolution)
{
  auto const inputs = feasible_inputs(problem, px_grid_resolution);
  auto const s_grid = uniform_grid(s_grid_resolution);

  std::vector<RegionPoint> candidates;
  candidates.reserve(inputs.size() * s_grid.size());
  for (auto const &px : inputs)
  {
    double const rate = mutual_information(px, problem.comm());
    for (double s : s_grid)
    {
      auto const e = exponent_pair(problem, px, s);
      candidates.push_back({rate, e.e0, e.e1, px, s});
    }
  }
  return detail::prune_surface(std::move(candidates), px_grid_resolution, s_grid_resolution);
}

struct MembershipResult
{
  bool                       member = false;
  std::optional<RegionPoint> witness;
};

/// Grid-certified membership of (r, e0, e1). `true` comes with a witnessing
/// (px, s); `false` only means no grid point certifies the tuple, which can
/// happen for tuples within a grid step of the boundary.
inline MembershipResult membership(ChannelProblem const &problem, double r, double e0, double e1,
                                   std::size_t px_grid_resolution, std::size_t s_grid_resolution)
{
  constexpr double slack = 1e-12;
  if (!(r >= 0.0 && e0 >= 0.0 && e1 >= 0.0))
  {
    return {};
  }
  double const cap = std::log(static_cast<double>(
    std::min(problem.comm().in_size(), problem.comm().out_size())));
  if (r > cap + slack)
  {
    return {};
  }
  auto const inputs = feasible_inputs(problem, px_grid_resolution);
  auto const s_grid = uniform_grid(s_grid_resolution);
  for (auto const &px : inputs)
  {
    double const rate = mutual_information(px, problem.comm());
    if (rate < r - slack)
    {
      continue;
    }
    for (double s : s_grid)
    {
      auto const e = exponent_pair(problem, px, s);
      if (e.e0 >= e0 - slack && e.e1 >= e1 - slack)
      {
        return {true, RegionPoint{rate, e.e0, e.e1, px, s}};
      }
    }
  }
  return {};
}

/// Pareto frontier of (I(px), C(W||V|px)).
inline std::vector<RateExponentPoint> minimax_frontier(ChannelProblem const &problem,
                                                       std::size_t           px_grid_resolution)
{
  std::vector<RateExponentPoint> candidates;
  for (auto &px : feasible_inputs(problem, px_grid_resolution))
  {
    double const rate = mutual_information(px, problem.comm());
    double const c    = chernoff_info(problem, px).value;
    candidates.push_back({rate, c, std::move(px)});
  }
  return detail::prune_pairs(std::move(candidates));
}

/// Pareto frontier of (I(px), D(W||V|px)); the same for every alpha in (0, 1).
inline std::vector<RateExponentPoint> np_frontier(ChannelProblem const &problem,
                                                  std::size_t           px_grid_resolution)
{
  std::vector<RateExponentPoint> candidates;
  for (auto &px : feasible_inputs(problem, px_grid_resolution))
  {
    double const rate = mutual_information(px, problem.comm());
    double const d    = conditional_kl(problem.w(), problem.v(), px);
    candidates.push_back({rate, d, std::move(px)});
  }
  return detail::prune_pairs(std::move(candidates));
}

// Binary-input examples with b = (0, 1), so the cost of Bern(rho) is rho.

/// comm = BSC(p); W(.|x) = (1-q, q) for both inputs; V = BSC(q).
inline ChannelProblem example1_problem(double p, double q, double budget)
{
  return ChannelProblem(DiscreteChannel::bsc(p), DiscreteChannel({{1.0 - q, q}, {1.0 - q, q}}),
                        DiscreteChannel::bsc(q), CostSpec({0.0, 1.0}, budget));
}

/// comm = BSC(p); W = BSC(p); V = BSC(q).
inline ChannelProblem example2_problem(double p, double q, double budget)
{
  return ChannelProblem(DiscreteChannel::bsc(p), DiscreteChannel::bsc(p), DiscreteChannel::bsc(q),
                        CostSpec({0.0, 1.0}, budget));
}

namespace detail {

inline void require_open_unit(double v, char const *what)
{
  if (!(v > 0.0 && v < 1.0))
  {
    throw DomainError(std::string(what) + ": parameter outside (0,1)");
  }
}

// a^(1-s) b^s / (a^(1-s) b^s + c^(1-s) d^s)
inline double tilt_weight(double a, double b, double c, double d, double s)
{
  double const l = (1.0 - s) * std::log(a) + s * std::log(b);
  double const r = (1.0 - s) * std::log(c) + s * std::log(d);
  return 1.0 / (1.0 + std::exp(r - l));
}

}  // namespace detail

/// Closed-form surface for example 1 over the given rho and s grids; rho
/// values above B are skipped.
inline ParetoSurface example1_closed_form(double p, double q, double budget,
                                          std::vector<double> const &rho_grid,
                                          std::vector<double> const &s_grid)
{
  detail::require_open_unit(p, "example1_closed_form");
  detail::require_open_unit(q, "example1_closed_form");
  if (!(budget >= 0.0 && budget <= 1.0))
  {
    throw DomainError("example1_closed_form: budget outside [0,1]");
  }
  double const             hp = binary_entropy(p);
  std::vector<RegionPoint> candidates;
  for (double rho : rho_grid)
  {
    detail::require_unit(rho, "example1_closed_form");
    if (rho > budget + 1e-12)
    {
      continue;
    }
    double const rate = std::max(0.0, binary_entropy(binary_convolution(rho, p)) - hp);
    for (double s : s_grid)
    {
      detail::require_tilt(s, "example1_closed_form");
      double const q_hat = detail::tilt_weight(1.0 - q, q, q, 1.0 - q, s);
      candidates.push_back({rate, rho * binary_divergence(q_hat, 1.0 - q),
                            rho * binary_divergence(q_hat, q), FiniteDistribution::bernoulli(rho),
                            s});
    }
  }
  if (candidates.empty())
  {
    throw DomainError("example1_closed_form: no feasible rho");
  }
  return detail::prune_surface(std::move(candidates), rho_grid.size(), s_grid.size());
}

/// Closed-form surface for example 2: exponents do not depend on the input,
/// so every point sits at the rate cap H(min(0.5, B) * p) - H(p).
inline ParetoSurface example2_closed_form(double p, double q, double budget,
                                          std::vector<double> const &s_grid)
{
  detail::require_open_unit(p, "example2_closed_form");
  detail::require_open_unit(q, "example2_closed_form");
  if (!(budget >= 0.0))
  {
    throw DomainError("example2_closed_form: negative budget");
  }
  double const rho  = std::min(0.5, budget);
  double const rate = std::max(0.0, binary_entropy(binary_convolution(rho, p)) - binary_entropy(p));
  std::vector<RegionPoint> candidates;
  for (double s : s_grid)
  {
    detail::require_tilt(s, "example2_closed_form");
    // Crossover of W_s, i.e. W_s(1|0) = W_s(0|1).
    double const q_hat = detail::tilt_weight(p, q, 1.0 - p, 1.0 - q, s);
    candidates.push_back({rate, binary_divergence(q_hat, p), binary_divergence(q_hat, q),
                          FiniteDistribution::bernoulli(rho), s});
  }
  return detail::prune_surface(std::move(candidates), 1, s_grid.size());
}

}  // namespace chandisc
